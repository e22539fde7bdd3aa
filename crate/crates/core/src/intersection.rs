//! Geometric intersection numbers with relaxed curves, and arbitrary pairs
//! of laminations on `D_3`.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::coords::{
    add, mul, strip_stats, sub, triangle_from_dynnikov, DynnikovCoords, PunctureCount,
    TriangleCoords,
};
use crate::error::{Error, Result};

/// A round curve enclosing the consecutive punctures `i..=j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawCurve")]
pub struct RelaxedCurve {
    n: PunctureCount,
    i: usize,
    j: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCurve {
    n: PunctureCount,
    i: usize,
    j: usize,
}

impl TryFrom<RawCurve> for RelaxedCurve {
    type Error = Error;

    fn try_from(raw: RawCurve) -> Result<Self> {
        Self::new(raw.n, raw.i, raw.j)
    }
}

impl RelaxedCurve {
    /// Requires `1 <= i < j <= n` and `(i, j) != (1, n)`.
    pub fn new(n: PunctureCount, i: usize, j: usize) -> Result<Self> {
        if i == 0 || i >= j || j > n.get() || (i == 1 && j == n.get()) {
            return Err(Error::InvalidInterval { n: n.get(), i, j });
        }
        Ok(Self { n, i, j })
    }

    pub fn n(&self) -> PunctureCount {
        self.n
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn interval(&self) -> (usize, usize) {
        (self.i, self.j)
    }

    /// Every relaxed curve on `D_n`, ordered by `(i, j)`.
    pub fn all(n: PunctureCount) -> impl Iterator<Item = RelaxedCurve> {
        let top = n.get();
        (1..top).flat_map(move |i| {
            (i + 1..=top).filter_map(move |j| RelaxedCurve::new(n, i, j).ok())
        })
    }

    pub fn relation(&self, other: &RelaxedCurve) -> IntervalRelation {
        IntervalRelation::of(self.interval(), other.interval())
    }

    pub fn to_dynnikov(&self) -> DynnikovCoords {
        relaxed_curve_dynnikov(self)
    }

    pub fn to_triangle(&self) -> TriangleCoords {
        // Entries are 0 or +-1, nothing can overflow.
        triangle_from_dynnikov(&self.to_dynnikov()).expect("relaxed curve coordinates are tiny")
    }
}

/// How two puncture intervals sit relative to each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntervalRelation {
    Disjoint,
    /// One contains the other (equal intervals count as nested).
    Nested,
    /// Overlapping without containment; the curves must cross.
    Linked,
}

impl IntervalRelation {
    pub fn of((a, b): (usize, usize), (c, d): (usize, usize)) -> Self {
        if b < c || d < a {
            IntervalRelation::Disjoint
        } else if (a <= c && d <= b) || (c <= a && b <= d) {
            IntervalRelation::Nested
        } else {
            IntervalRelation::Linked
        }
    }
}

/// One entry of an [`IntervalFamily`]: a relaxed curve and its number of
/// parallel copies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilyMember {
    pub i: usize,
    pub j: usize,
    #[serde(default = "one")]
    pub mult: u64,
}

fn one() -> u64 {
    1
}

/// A relaxed lamination: a multiset of pairwise nested-or-disjoint
/// intervals. Members are kept sorted by `(i, j)` with duplicates merged.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawFamily")]
pub struct IntervalFamily {
    n: PunctureCount,
    components: Vec<FamilyMember>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFamily {
    n: PunctureCount,
    components: Vec<FamilyMember>,
}

impl TryFrom<RawFamily> for IntervalFamily {
    type Error = Error;

    fn try_from(raw: RawFamily) -> Result<Self> {
        Self::new(raw.n, raw.components)
    }
}

impl IntervalFamily {
    pub fn new(n: PunctureCount, members: Vec<FamilyMember>) -> Result<Self> {
        let mut members = members;
        for m in &members {
            RelaxedCurve::new(n, m.i, m.j)?;
            if m.mult == 0 {
                return Err(Error::ZeroMultiplicity { i: m.i, j: m.j });
            }
        }
        members.sort_by_key(|m| (m.i, m.j));
        let mut merged: Vec<FamilyMember> = Vec::with_capacity(members.len());
        for m in members {
            match merged.last_mut() {
                Some(last) if (last.i, last.j) == (m.i, m.j) => {
                    last.mult = last.mult.checked_add(m.mult).ok_or(Error::Overflow)?;
                }
                _ => merged.push(m),
            }
        }
        check_laminar(&merged)?;
        Ok(Self {
            n,
            components: merged,
        })
    }

    pub fn empty(n: PunctureCount) -> Self {
        Self {
            n,
            components: Vec::new(),
        }
    }

    pub fn from_curves(n: PunctureCount, curves: &[RelaxedCurve]) -> Result<Self> {
        let members = curves
            .iter()
            .map(|c| {
                if c.n != n {
                    Err(Error::DimensionMismatch {
                        left: n.get(),
                        right: c.n.get(),
                    })
                } else {
                    Ok(FamilyMember {
                        i: c.i,
                        j: c.j,
                        mult: 1,
                    })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, members)
    }

    pub fn n(&self) -> PunctureCount {
        self.n
    }

    pub fn members(&self) -> &[FamilyMember] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Number of curves counted with multiplicity.
    pub fn total_components(&self) -> u64 {
        self.components.iter().map(|m| m.mult).sum()
    }

    /// Distinct curves with their multiplicities.
    pub fn curves(&self) -> impl Iterator<Item = (RelaxedCurve, u64)> + '_ {
        self.components.iter().map(move |m| {
            (
                RelaxedCurve {
                    n: self.n,
                    i: m.i,
                    j: m.j,
                },
                m.mult,
            )
        })
    }

    /// Whether `c` could be added while keeping the family laminar.
    pub fn admits(&self, c: &RelaxedCurve) -> bool {
        self.curves()
            .all(|(m, _)| m.relation(c) != IntervalRelation::Linked)
    }
}

/// Sweep over intervals sorted by `(i asc, j desc)`; a stack holds the
/// currently open intervals. An interval that starts inside the top of the
/// stack but ends past it links with it.
fn check_laminar(members: &[FamilyMember]) -> Result<()> {
    let mut order: Vec<(usize, usize)> = members.iter().map(|m| (m.i, m.j)).collect();
    order.sort_by(|x, y| match x.0.cmp(&y.0) {
        Ordering::Equal => y.1.cmp(&x.1),
        other => other,
    });
    let mut open: Vec<(usize, usize)> = Vec::new();
    for cur in order {
        while matches!(open.last(), Some(top) if top.1 < cur.0) {
            open.pop();
        }
        if let Some(&top) = open.last() {
            if cur.1 > top.1 {
                return Err(Error::NonLaminar {
                    first: top,
                    second: cur,
                });
            }
        }
        open.push(cur);
    }
    Ok(())
}

/// `a = 0`, `b_{i-1} = -1` if `i > 1`, `b_{j-1} = +1` if `j < n`.
pub fn relaxed_curve_dynnikov(c: &RelaxedCurve) -> DynnikovCoords {
    let strips = c.n.strips();
    let mut b = vec![0i64; strips];
    if c.i > 1 {
        b[c.i - 2] = -1;
    }
    if c.j < c.n.get() {
        b[c.j - 2] = 1;
    }
    DynnikovCoords::new(c.n, vec![0; strips], b).expect("relaxed curve has a nonzero b entry")
}

/// Above/below counts of the through-going path components of `S_{i,j}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SCounts {
    pub above: i64,
    pub below: i64,
    pub total: i64,
}

/// Per-strip census of a valid lamination, padded with the two end regions
/// as virtual strips `0` and `n-1`. The end regions contain only loops
/// (`beta_1 / 2` left loops and `beta_{n-1} / 2` right loops) and no
/// above/below components.
struct Census {
    above: Vec<i64>,
    below: Vec<i64>,
    right_loops: Vec<i64>,
    left_loops: Vec<i64>,
    /// `beta_0 .. beta_n` with `beta_0 = beta_n = 0`.
    beta: Vec<i64>,
}

impl Census {
    fn new(t: &TriangleCoords) -> Result<Self> {
        t.validate()?;
        let n = t.n().get();
        let mut c = Census {
            above: vec![0; n],
            below: vec![0; n],
            right_loops: vec![0; n],
            left_loops: vec![0; n],
            beta: Vec::with_capacity(n + 1),
        };
        for k in 1..=n - 2 {
            let s = strip_stats(t, k)?;
            c.above[k] = s.above;
            c.below[k] = s.below;
            c.right_loops[k] = s.b.max(0);
            c.left_loops[k] = (-s.b).max(0);
        }
        c.left_loops[0] = t.beta_at(1) / 2;
        c.right_loops[n - 1] = t.beta_at(n - 1) / 2;
        c.beta.push(0);
        c.beta.extend_from_slice(t.beta());
        c.beta.push(0);
        Ok(c)
    }

    fn min_above(&self, lo: usize, hi: usize) -> i64 {
        self.above[lo..=hi].iter().copied().min().unwrap()
    }

    fn min_below(&self, lo: usize, hi: usize) -> i64 {
        self.below[lo..=hi].iter().copied().min().unwrap()
    }

    fn breakdown(&self, c: &RelaxedCurve) -> Result<Breakdown> {
        let (i, j) = c.interval();
        // The query disk is covered by strips i-1 ..= j-1 (virtual ones included).
        let (lo, hi) = (i - 1, j - 1);
        let through = self.min_above(lo, hi) + self.min_below(lo, hi);

        // Right loops of the last strip that run straight back to beta_{i-1}
        // through every earlier strip enclose the whole disk.
        let enclose_from_left = self.right_loops[hi]
            .min(self.min_above(lo, hi - 1) - self.above[hi])
            .min(self.min_below(lo, hi - 1) - self.below[hi])
            .max(0);
        let enclose_from_right = self.left_loops[lo]
            .min(self.min_above(lo + 1, hi) - self.above[lo])
            .min(self.min_below(lo + 1, hi) - self.below[lo])
            .max(0);

        let crossings = add(self.beta[lo], self.beta[j])?;
        let removable = add(add(through, enclose_from_left)?, enclose_from_right)?;
        let value = sub(crossings, mul(2, removable)?)?;
        Ok(Breakdown {
            crossings,
            through,
            enclose_from_left,
            enclose_from_right,
            value,
        })
    }
}

/// How [`intersect_relaxed`] arrives at its value.
///
/// A representative of `C_ij` hugging the strips `S_{i-1..j-1}` meets the
/// lamination `crossings = beta_{i-1} + beta_j` times. Each path component
/// that cuts a puncture-free bigon off the disk can be pushed out, removing
/// two crossings: the straight above/below components (`through`), and the
/// U-shaped components that enter from one side and wrap around every
/// enclosed puncture (`enclose_from_left`, `enclose_from_right`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Breakdown {
    pub crossings: i64,
    pub through: i64,
    pub enclose_from_left: i64,
    pub enclose_from_right: i64,
    pub value: i64,
}

/// Counts of above and below components spanning strips `i..=j` (1-based,
/// `1 <= i <= j <= n-2`).
pub fn s_counts(t: &TriangleCoords, i: usize, j: usize) -> Result<SCounts> {
    let strips = t.n().strips();
    if i == 0 || i > j || j > strips {
        return Err(Error::StripOutOfRange { i, j, max: strips });
    }
    let census = Census::new(t)?;
    let above = census.min_above(i, j);
    let below = census.min_below(i, j);
    Ok(SCounts {
        above,
        below,
        total: add(above, below)?,
    })
}

fn same_n(left: PunctureCount, right: PunctureCount) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            left: left.get(),
            right: right.get(),
        })
    }
}

/// Geometric intersection number of a lamination with a relaxed curve.
pub fn intersect_relaxed(t: &TriangleCoords, c: &RelaxedCurve) -> Result<i64> {
    Ok(intersect_relaxed_breakdown(t, c)?.value)
}

pub fn intersect_relaxed_breakdown(t: &TriangleCoords, c: &RelaxedCurve) -> Result<Breakdown> {
    same_n(t.n(), c.n)?;
    Census::new(t)?.breakdown(c)
}

/// Intersection with a relaxed lamination: the sum over its components,
/// counted with multiplicity.
pub fn intersect_relaxed_family(t: &TriangleCoords, f: &IntervalFamily) -> Result<i64> {
    same_n(t.n(), f.n)?;
    let census = Census::new(t)?;
    f.curves().try_fold(0i64, |acc, (c, mult)| {
        let v = census.breakdown(&c)?.value;
        let mult = i64::try_from(mult).map_err(|_| Error::Overflow)?;
        add(acc, mul(v, mult)?)
    })
}

/// Both branches of the `D_3` intersection formula:
/// `(alpha1_2 alpha2_1 + alpha1_1 alpha2_2, |alpha1_2 alpha2_1 - alpha1_1 alpha2_2|)`.
pub fn d3_branches(t1: &TriangleCoords, t2: &TriangleCoords) -> Result<(i64, i64)> {
    for t in [t1, t2] {
        if t.n().get() != 3 {
            return Err(Error::NotThreePunctures(t.n().get()));
        }
        t.validate()?;
    }
    let cross = mul(t1.alpha_at(2), t2.alpha_at(1))?;
    let straight = mul(t1.alpha_at(1), t2.alpha_at(2))?;
    let opposite = add(cross, straight)?;
    let same = sub(cross, straight)?.checked_abs().ok_or(Error::Overflow)?;
    Ok((opposite, same))
}

/// Geometric intersection number of two laminations on `D_3`.
///
/// The formula depends on whether the loops of the single strip sit on the
/// same side. When either lamination has no loops both branches agree.
pub fn intersect_d3(t1: &TriangleCoords, t2: &TriangleCoords) -> Result<i64> {
    let (opposite, same) = d3_branches(t1, t2)?;
    let sign = |t: &TriangleCoords| (t.beta_at(1) - t.beta_at(2)).signum();
    match sign(t1) * sign(t2) {
        -1 => Ok(opposite),
        1 => Ok(same),
        _ => {
            debug_assert_eq!(opposite, same, "D_3 branches disagree at a zero sign");
            Ok(opposite)
        }
    }
}
