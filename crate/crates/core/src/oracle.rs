//! Ground-truth machinery that does not go through the intersection formula:
//! explicit reconstruction of the curves from triangle coordinates, additive
//! coordinates of relaxed families, and the interval-linking count.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::coords::{mul, strip_stats, PunctureCount, TriangleCoords};
use crate::error::{Error, Result};
use crate::intersection::{FamilyMember, IntervalFamily, IntervalRelation, RelaxedCurve};

/// Where a transit happens: a strip `S_k` (1-based) or one of the two end
/// regions around punctures `1` and `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    LeftEnd,
    Strip(usize),
    RightEnd,
}

impl Serialize for Region {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Region::LeftEnd => s.serialize_str("L"),
            Region::RightEnd => s.serialize_str("R"),
            Region::Strip(k) => s.serialize_u64(*k as u64),
        }
    }
}

impl<'de> Deserialize<'de> for Region {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct RegionVisitor;

        impl Visitor<'_> for RegionVisitor {
            type Value = Region;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a positive strip index or \"L\" / \"R\"")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Region, E> {
                if v == 0 {
                    return Err(E::custom("strip indices start at 1"));
                }
                Ok(Region::Strip(v as usize))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Region, E> {
                u64::try_from(v)
                    .map_err(|_| E::custom("negative strip index"))
                    .and_then(|v| self.visit_u64(v))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Region, E> {
                match v {
                    "L" => Ok(Region::LeftEnd),
                    "R" => Ok(Region::RightEnd),
                    other => Err(E::custom(format!("unknown end region {other:?}"))),
                }
            }
        }

        d.deserialize_any(RegionVisitor)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TransitKind {
    Above,
    Below,
    LeftLoop,
    RightLoop,
}

impl TransitKind {
    pub fn is_loop(self) -> bool {
        matches!(self, TransitKind::LeftLoop | TransitKind::RightLoop)
    }
}

/// One pass of a curve through a region. `lane` is the position of the entry
/// point on the arc it enters through, counted from the top starting at 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Transit {
    pub strip: Region,
    pub kind: TransitKind,
    pub lane: u64,
}

/// An explicit taut representative: each component is the cyclic sequence of
/// its transits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveDiagram {
    pub n: PunctureCount,
    pub components: Vec<Vec<Transit>>,
}

/// Lane counts of one strip, read off its statistics.
#[derive(Debug, Clone, Copy)]
struct Lanes {
    above: u64,
    right_loops: u64,
    left_loops: u64,
}

/// Where a strand entering a region comes out.
enum Exit {
    /// Through the opposite arc at the given lane.
    Across(u64),
    /// Back through the same arc at the given lane.
    Back(u64),
}

impl Lanes {
    fn enter_left(&self, p: u64) -> (TransitKind, Exit) {
        let (a, r, l) = (self.above, self.right_loops, self.left_loops);
        if p < a {
            (TransitKind::Above, Exit::Across(p))
        } else if p < a + 2 * r {
            (TransitKind::RightLoop, Exit::Back(a + 2 * r - 1 - (p - a)))
        } else {
            (TransitKind::Below, Exit::Across(a + 2 * l + (p - a - 2 * r)))
        }
    }

    fn enter_right(&self, p: u64) -> (TransitKind, Exit) {
        let (a, r, l) = (self.above, self.right_loops, self.left_loops);
        if p < a {
            (TransitKind::Above, Exit::Across(p))
        } else if p < a + 2 * l {
            (TransitKind::LeftLoop, Exit::Back(a + 2 * l - 1 - (p - a)))
        } else {
            (TransitKind::Below, Exit::Across(a + 2 * r + (p - a - 2 * l)))
        }
    }
}

fn lane_count(v: i64) -> u64 {
    u64::try_from(v).expect("validated coordinates are nonnegative")
}

/// Rebuilds the curves from valid triangle coordinates.
///
/// Inside each strip the above components take the top lanes of both arcs,
/// the below components the bottom lanes, and the loops fill the middle band
/// concentrically. Both end regions close their arc's lanes concentrically
/// around the end puncture. Components are traced starting from the first
/// unvisited lane, scanning arcs left to right and lanes top to bottom, and
/// always leaving the start point towards the right.
pub fn reconstruct(t: &TriangleCoords) -> Result<CurveDiagram> {
    t.validate()?;
    let n = t.n().get();
    let strips: Vec<Lanes> = (1..=n - 2)
        .map(|k| {
            let s = strip_stats(t, k)?;
            Ok(Lanes {
                above: lane_count(s.above),
                right_loops: lane_count(s.b.max(0)),
                left_loops: lane_count((-s.b).max(0)),
            })
        })
        .collect::<Result<_>>()?;
    let beta: Vec<u64> = t.beta().iter().map(|&v| lane_count(v)).collect();

    // visited[arc - 1][lane]
    let mut visited: Vec<Vec<bool>> = beta.iter().map(|&c| vec![false; c as usize]).collect();
    let mut components = Vec::new();

    for start_arc in 1..n {
        for start_lane in 0..beta[start_arc - 1] {
            if visited[start_arc - 1][start_lane as usize] {
                continue;
            }
            let mut cycle = Vec::new();
            let (mut arc, mut lane, mut rightward) = (start_arc, start_lane, true);
            loop {
                visited[arc - 1][lane as usize] = true;
                let (region, kind, exit) = if rightward {
                    if arc == n - 1 {
                        let c = beta[arc - 1];
                        (Region::RightEnd, TransitKind::RightLoop, Exit::Back(c - 1 - lane))
                    } else {
                        let (kind, exit) = strips[arc - 1].enter_left(lane);
                        (Region::Strip(arc), kind, exit)
                    }
                } else if arc == 1 {
                    let c = beta[0];
                    (Region::LeftEnd, TransitKind::LeftLoop, Exit::Back(c - 1 - lane))
                } else {
                    let (kind, exit) = strips[arc - 2].enter_right(lane);
                    (Region::Strip(arc - 1), kind, exit)
                };
                cycle.push(Transit {
                    strip: region,
                    kind,
                    lane,
                });
                match exit {
                    Exit::Across(p) => {
                        arc = if rightward { arc + 1 } else { arc - 1 };
                        lane = p;
                    }
                    Exit::Back(p) => {
                        lane = p;
                        rightward = !rightward;
                    }
                }
                if arc == start_arc && lane == start_lane && rightward {
                    break;
                }
            }
            components.push(cycle);
        }
    }

    Ok(CurveDiagram {
        n: t.n(),
        components,
    })
}

impl CurveDiagram {
    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    /// Crossing counts with every arc, computed from the transits alone.
    ///
    /// Each `beta_i` is counted twice, once from the region on its left and
    /// once from the region on its right; the two must agree.
    pub fn arc_crossings(&self) -> Result<TriangleCoords> {
        let n = self.n.get();
        let mut alpha = vec![0i64; self.n.alpha_len()];
        // endpoints on beta_i seen from the left / right neighbouring region
        let mut from_left = vec![0i64; n - 1];
        let mut from_right = vec![0i64; n - 1];
        for tr in self.components.iter().flatten() {
            match (tr.strip, tr.kind) {
                (Region::LeftEnd, TransitKind::LeftLoop) => from_left[0] += 2,
                (Region::RightEnd, TransitKind::RightLoop) => from_right[n - 2] += 2,
                (Region::Strip(k), kind) if (1..=n - 2).contains(&k) => {
                    let (up, down) = (2 * k - 2, 2 * k - 1);
                    match kind {
                        TransitKind::Above => alpha[up] += 1,
                        TransitKind::Below => alpha[down] += 1,
                        _ => {
                            alpha[up] += 1;
                            alpha[down] += 1;
                        }
                    }
                    match kind {
                        TransitKind::Above | TransitKind::Below => {
                            from_right[k - 1] += 1;
                            from_left[k] += 1;
                        }
                        TransitKind::RightLoop => from_right[k - 1] += 2,
                        TransitKind::LeftLoop => from_left[k] += 2,
                    }
                }
                _ => return Err(Error::InconsistentDiagram("transit outside the disk")),
            }
        }
        if from_left != from_right {
            return Err(Error::InconsistentDiagram("beta counts disagree across an arc"));
        }
        TriangleCoords::new(self.n, alpha, from_left)
    }

    /// Number of path components of the curves restricted to `S_{i..=j}`
    /// that are not closed, i.e. the maximal runs of consecutive transits
    /// inside the strip range, ignoring components lying entirely inside.
    pub fn open_paths_in(&self, i: usize, j: usize) -> usize {
        let inside = |tr: &Transit| matches!(tr.strip, Region::Strip(k) if i <= k && k <= j);
        self.components
            .iter()
            .map(|cycle| {
                if cycle.iter().all(inside) {
                    return 0;
                }
                // count run starts: inside transits whose predecessor is outside
                (0..cycle.len())
                    .filter(|&p| {
                        let prev = &cycle[(p + cycle.len() - 1) % cycle.len()];
                        inside(&cycle[p]) && !inside(prev)
                    })
                    .count()
            })
            .sum()
    }
}

/// Coordinates of a relaxed lamination: the sum of the coordinates of its
/// components, with multiplicity. Disjoint taut representatives stay taut
/// together, so arc crossings add.
pub fn family_triangle(f: &IntervalFamily) -> Result<TriangleCoords> {
    let mut total: Option<TriangleCoords> = None;
    for (c, mult) in f.curves() {
        let k = i64::try_from(mult).map_err(|_| Error::Overflow)?;
        let part = c.to_triangle().checked_scale(k)?;
        total = Some(match total {
            None => part,
            Some(acc) => acc.checked_add(&part)?,
        });
    }
    let t = total.ok_or(Error::EmptyFamily)?;
    t.validate()?;
    Ok(t)
}

/// Twice the number of components of `f` (with multiplicity) whose interval
/// links the interval of `c`. Nested and disjoint pairs can be drawn
/// disjointly; linked pairs cross exactly twice.
pub fn linking_intersection(f: &IntervalFamily, c: &RelaxedCurve) -> Result<i64> {
    if f.n() != c.n() {
        return Err(Error::DimensionMismatch {
            left: f.n().get(),
            right: c.n().get(),
        });
    }
    let linked: u64 = f
        .members()
        .iter()
        .filter(|m| IntervalRelation::of((m.i, m.j), c.interval()) == IntervalRelation::Linked)
        .map(|m| m.mult)
        .sum();
    mul(2, i64::try_from(linked).map_err(|_| Error::Overflow)?)
}

/// A seeded pseudorandom laminar family with between 1 and `max_components`
/// curves. Intervals are drawn uniformly from all relaxed curves and kept
/// only if they are nested or disjoint with everything drawn so far; after a
/// bounded number of rejections the family is returned as is.
pub fn random_family(n: PunctureCount, max_components: usize, seed: u64) -> Result<IntervalFamily> {
    if max_components == 0 {
        return Err(Error::NoComponents);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool: Vec<RelaxedCurve> = RelaxedCurve::all(n).collect();
    let target = rng.gen_range(1..=max_components);
    let mut family = IntervalFamily::empty(n);
    let mut accepted = 0;
    let mut attempts = 0;
    while accepted < target && attempts < 16 * target + 32 {
        attempts += 1;
        let c = pool[rng.gen_range(0..pool.len())];
        if family.admits(&c) {
            let mut members = family.members().to_vec();
            members.push(FamilyMember {
                i: c.i(),
                j: c.j(),
                mult: 1,
            });
            family = IntervalFamily::new(n, members)?;
            accepted += 1;
        }
    }
    Ok(family)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coords::triangle_from_dynnikov;
    use crate::intersection::intersect_relaxed;

    fn n(k: usize) -> PunctureCount {
        PunctureCount::new(k).unwrap()
    }

    fn curve(k: usize, i: usize, j: usize) -> RelaxedCurve {
        RelaxedCurve::new(n(k), i, j).unwrap()
    }

    fn tri(k: usize, alpha: &[i64], beta: &[i64]) -> TriangleCoords {
        TriangleCoords::new(n(k), alpha.to_vec(), beta.to_vec()).unwrap()
    }

    fn example_one() -> TriangleCoords {
        tri(5, &[2, 6, 3, 5, 4, 4], &[4, 8, 8, 4])
    }

    #[test]
    fn single_relaxed_curve_is_one_component() {
        let d = reconstruct(&tri(4, &[1, 1, 0, 0], &[2, 0, 0])).unwrap();
        assert_eq!(d.component_count(), 1);
        assert_eq!(
            d.components[0],
            vec![
                Transit { strip: Region::Strip(1), kind: TransitKind::RightLoop, lane: 0 },
                Transit { strip: Region::LeftEnd, kind: TransitKind::LeftLoop, lane: 1 },
            ]
        );
    }

    #[test]
    fn parallel_copies_stay_separate() {
        let f = IntervalFamily::new(n(4), vec![FamilyMember { i: 1, j: 2, mult: 2 }]).unwrap();
        let t = family_triangle(&f).unwrap();
        assert_eq!(t, tri(4, &[2, 2, 0, 0], &[4, 0, 0]));
        assert_eq!(reconstruct(&t).unwrap().component_count(), 2);
    }

    #[test]
    fn nested_family_adds() {
        let f = IntervalFamily::from_curves(n(4), &[curve(4, 1, 2), curve(4, 1, 3)]).unwrap();
        let t = family_triangle(&f).unwrap();
        let sum = curve(4, 1, 2).to_triangle().checked_add(&curve(4, 1, 3).to_triangle()).unwrap();
        assert_eq!(t, sum);
        assert_eq!(reconstruct(&t).unwrap().component_count(), 2);
    }

    #[test]
    fn singleton_family() {
        let f = IntervalFamily::from_curves(n(5), &[curve(5, 2, 4)]).unwrap();
        let d = crate::coords::DynnikovCoords::new(n(5), vec![0, 0, 0], vec![-1, 0, 1]).unwrap();
        assert_eq!(family_triangle(&f).unwrap(), triangle_from_dynnikov(&d).unwrap());
    }

    #[test]
    fn empty_family_has_no_coordinates() {
        assert_eq!(family_triangle(&IntervalFamily::empty(n(4))), Err(Error::EmptyFamily));
    }

    #[test]
    fn example_one_components() {
        let d = reconstruct(&example_one()).unwrap();
        // frozen regression value
        assert_eq!(d.component_count(), EXAMPLE_ONE_COMPONENTS);
        assert_eq!(d.arc_crossings().unwrap(), example_one());
    }

    const EXAMPLE_ONE_COMPONENTS: usize = 2;

    #[test]
    fn reconstruction_rejects_invalid() {
        assert!(matches!(
            reconstruct(&tri(3, &[1, 1], &[2, 2])),
            Err(Error::InvalidTriangle(_))
        ));
    }

    #[test]
    fn linking_examples() {
        let f = IntervalFamily::from_curves(n(4), &[curve(4, 1, 2)]).unwrap();
        assert_eq!(linking_intersection(&f, &curve(4, 2, 3)).unwrap(), 2);
        assert_eq!(linking_intersection(&f, &curve(4, 1, 3)).unwrap(), 0);
        let f = IntervalFamily::from_curves(n(5), &[curve(5, 1, 2)]).unwrap();
        assert_eq!(linking_intersection(&f, &curve(5, 3, 4)).unwrap(), 0);
        assert!(linking_intersection(&f, &curve(4, 1, 2)).is_err());
    }

    #[test]
    fn formula_agrees_with_linking_on_small_families() {
        for k in 3..=6 {
            let curves: Vec<_> = RelaxedCurve::all(n(k)).collect();
            for a in &curves {
                for b in &curves {
                    let Ok(f) = IntervalFamily::from_curves(n(k), &[*a, *b]) else {
                        continue;
                    };
                    let t = family_triangle(&f).unwrap();
                    for c in &curves {
                        assert_eq!(
                            intersect_relaxed(&t, c).unwrap(),
                            linking_intersection(&f, c).unwrap(),
                            "family {f:?} query {c:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn random_family_d3() {
        for seed in 0..20 {
            let f = random_family(n(3), 1, seed).unwrap();
            assert_eq!(f.total_components(), 1);
            let (c, _) = f.curves().next().unwrap();
            assert!(c.interval() == (1, 2) || c.interval() == (2, 3));
        }
    }

    #[test]
    fn random_family_rejects_zero() {
        assert_eq!(random_family(n(5), 0, 1), Err(Error::NoComponents));
    }

    #[test]
    fn random_family_snapshot() {
        let f = random_family(n(6), 5, 42).unwrap();
        assert_eq!(f, random_family(n(6), 5, 42).unwrap());
        assert_eq!(serde_json::to_string(&f).unwrap(), RANDOM_FAMILY_6_5_42);
    }

    const RANDOM_FAMILY_6_5_42: &str =
        r#"{"n":6,"components":[{"i":1,"j":4,"mult":1},{"i":3,"j":4,"mult":1},{"i":5,"j":6,"mult":2}]}"#;

    #[test]
    fn diagram_json() {
        let d = reconstruct(&tri(3, &[1, 1], &[2, 0])).unwrap();
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(
            s,
            r#"{"n":3,"components":[[{"strip":1,"kind":"right_loop","lane":0},{"strip":"L","kind":"left_loop","lane":1}]]}"#
        );
        let back: CurveDiagram = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn open_paths_example() {
        let t = example_one();
        let d = reconstruct(&t).unwrap();
        for i in 1..=3 {
            for j in i..=3 {
                let expected = (t.beta_at(i) + t.beta_at(j + 1)) / 2;
                assert_eq!(d.open_paths_in(i, j) as i64, expected, "S_{{{i},{j}}}");
            }
        }
    }
}
