//! Triangle and Dynnikov coordinates of integral laminations on `D_n`.
//!
//! The punctures `1..=n` sit on a horizontal axis. The arc `beta_i` runs
//! vertically between punctures `i` and `i+1`, and for each inner puncture
//! `p = i+1` the arcs `alpha_{2i-1}` (up) and `alpha_{2i}` (down) join it to
//! the boundary. Strip `S_i` is the region between `beta_i` and `beta_{i+1}`.
//!
//! All public indices (strips, arcs, punctures) are 1-based.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Violation, Violations};

pub(crate) fn add(x: i64, y: i64) -> Result<i64> {
    x.checked_add(y).ok_or(Error::Overflow)
}

pub(crate) fn sub(x: i64, y: i64) -> Result<i64> {
    x.checked_sub(y).ok_or(Error::Overflow)
}

pub(crate) fn mul(x: i64, y: i64) -> Result<i64> {
    x.checked_mul(y).ok_or(Error::Overflow)
}

fn abs(x: i64) -> Result<i64> {
    x.checked_abs().ok_or(Error::Overflow)
}

/// Number of punctures, always at least 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct PunctureCount(usize);

impl PunctureCount {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            Err(Error::TooFewPunctures(n))
        } else {
            Ok(Self(n))
        }
    }

    pub fn get(self) -> usize {
        self.0
    }

    /// Number of strips, `n - 2`.
    pub fn strips(self) -> usize {
        self.0 - 2
    }

    pub fn alpha_len(self) -> usize {
        2 * self.0 - 4
    }

    pub fn beta_len(self) -> usize {
        self.0 - 1
    }
}

impl TryFrom<usize> for PunctureCount {
    type Error = Error;

    fn try_from(n: usize) -> Result<Self> {
        Self::new(n)
    }
}

impl From<PunctureCount> for usize {
    fn from(n: PunctureCount) -> usize {
        n.0
    }
}

impl std::fmt::Display for PunctureCount {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Intersection counts with the arcs `alpha_1..alpha_{2n-4}` and
/// `beta_1..beta_{n-1}`.
///
/// Construction only checks the vector lengths. Whether the vector is the
/// coordinate of an actual lamination is answered by [`validate_triangle`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawTriangle")]
pub struct TriangleCoords {
    n: PunctureCount,
    alpha: Vec<i64>,
    beta: Vec<i64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTriangle {
    n: PunctureCount,
    alpha: Vec<i64>,
    beta: Vec<i64>,
}

impl TryFrom<RawTriangle> for TriangleCoords {
    type Error = Error;

    fn try_from(raw: RawTriangle) -> Result<Self> {
        Self::new(raw.n, raw.alpha, raw.beta)
    }
}

impl TriangleCoords {
    pub fn new(n: PunctureCount, alpha: Vec<i64>, beta: Vec<i64>) -> Result<Self> {
        check_len("alpha", n, n.alpha_len(), alpha.len())?;
        check_len("beta", n, n.beta_len(), beta.len())?;
        Ok(Self { n, alpha, beta })
    }

    pub fn n(&self) -> PunctureCount {
        self.n
    }

    pub fn alpha(&self) -> &[i64] {
        &self.alpha
    }

    pub fn beta(&self) -> &[i64] {
        &self.beta
    }

    /// `alpha_k`, 1-based.
    pub fn alpha_at(&self, k: usize) -> i64 {
        self.alpha[k - 1]
    }

    /// `beta_k`, 1-based.
    pub fn beta_at(&self, k: usize) -> i64 {
        self.beta[k - 1]
    }

    pub fn validate(&self) -> Result<(), Violations> {
        validate_triangle(self)
    }

    pub fn to_dynnikov(&self) -> Result<DynnikovCoords> {
        dynnikov_from_triangle(self)
    }

    /// Componentwise sum, the coordinates of a disjoint union of laminations
    /// that are simultaneously taut.
    pub fn checked_add(&self, other: &TriangleCoords) -> Result<TriangleCoords> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n.get(),
                right: other.n.get(),
            });
        }
        let zip = |x: &[i64], y: &[i64]| -> Result<Vec<i64>> {
            x.iter().zip(y).map(|(&p, &q)| add(p, q)).collect()
        };
        Ok(TriangleCoords {
            n: self.n,
            alpha: zip(&self.alpha, &other.alpha)?,
            beta: zip(&self.beta, &other.beta)?,
        })
    }

    pub fn checked_scale(&self, k: i64) -> Result<TriangleCoords> {
        let scale = |x: &[i64]| -> Result<Vec<i64>> { x.iter().map(|&p| mul(p, k)).collect() };
        Ok(TriangleCoords {
            n: self.n,
            alpha: scale(&self.alpha)?,
            beta: scale(&self.beta)?,
        })
    }
}

/// The vector `(a_1..a_{n-2}, b_1..b_{n-2})`, never zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawDynnikov")]
pub struct DynnikovCoords {
    n: PunctureCount,
    a: Vec<i64>,
    b: Vec<i64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDynnikov {
    n: PunctureCount,
    a: Vec<i64>,
    b: Vec<i64>,
}

impl TryFrom<RawDynnikov> for DynnikovCoords {
    type Error = Error;

    fn try_from(raw: RawDynnikov) -> Result<Self> {
        Self::new(raw.n, raw.a, raw.b)
    }
}

impl DynnikovCoords {
    pub fn new(n: PunctureCount, a: Vec<i64>, b: Vec<i64>) -> Result<Self> {
        check_len("a", n, n.strips(), a.len())?;
        check_len("b", n, n.strips(), b.len())?;
        if a.iter().chain(&b).all(|&x| x == 0) {
            return Err(Error::ZeroVector);
        }
        Ok(Self { n, a, b })
    }

    /// Builds from the flat vector `(a_1..a_{n-2}, b_1..b_{n-2})`.
    pub fn from_flat(values: &[i64]) -> Result<Self> {
        if !values.len().is_multiple_of(2) {
            return Err(Error::LengthMismatch {
                what: "flat Dynnikov vector",
                n: values.len() / 2 + 2,
                expected: values.len() + 1,
                got: values.len(),
            });
        }
        let half = values.len() / 2;
        let n = PunctureCount::new(half + 2)?;
        Self::new(n, values[..half].to_vec(), values[half..].to_vec())
    }

    pub fn n(&self) -> PunctureCount {
        self.n
    }

    pub fn a(&self) -> &[i64] {
        &self.a
    }

    pub fn b(&self) -> &[i64] {
        &self.b
    }

    pub fn to_flat(&self) -> Vec<i64> {
        self.a.iter().chain(&self.b).copied().collect()
    }

    pub fn to_triangle(&self) -> Result<TriangleCoords> {
        triangle_from_dynnikov(self)
    }
}

fn check_len(what: &'static str, n: PunctureCount, expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::LengthMismatch {
            what,
            n: n.get(),
            expected,
            got,
        })
    }
}

/// Which side the loop components of a strip bulge towards.
///
/// Right loops have both endpoints on `beta_i` (the left edge of the strip),
/// left loops have both endpoints on `beta_{i+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LoopSide {
    Left,
    Right,
    None,
}

impl LoopSide {
    pub fn of(b: i64) -> Self {
        match b.signum() {
            1 => LoopSide::Right,
            -1 => LoopSide::Left,
            _ => LoopSide::None,
        }
    }

    pub fn sign(self) -> i64 {
        match self {
            LoopSide::Right => 1,
            LoopSide::Left => -1,
            LoopSide::None => 0,
        }
    }
}

/// Path-component census of a single strip.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StripStats {
    pub index: usize,
    /// Signed loop count `b_i = (beta_i - beta_{i+1}) / 2`.
    pub b: i64,
    pub loop_side: LoopSide,
    pub above: i64,
    pub below: i64,
    /// `min(above, below)`.
    pub m: i64,
    /// `|alpha_{2i} - alpha_{2i-1}|`, always `2|a_i|`.
    pub x: i64,
}

impl StripStats {
    pub fn loops(&self) -> i64 {
        self.b.abs()
    }
}

/// Statistics of strip `i` (1-based). Assumes `t` is valid; on invalid input
/// the counts are computed verbatim and may be negative.
pub fn strip_stats(t: &TriangleCoords, i: usize) -> Result<StripStats> {
    let strips = t.n.strips();
    if i == 0 || i > strips {
        return Err(Error::StripOutOfRange {
            i,
            j: i,
            max: strips,
        });
    }
    let up = t.alpha_at(2 * i - 1);
    let down = t.alpha_at(2 * i);
    let b = sub(t.beta_at(i), t.beta_at(i + 1))? / 2;
    let loops = abs(b)?;
    let above = sub(up, loops)?;
    let below = sub(down, loops)?;
    Ok(StripStats {
        index: i,
        b,
        loop_side: LoopSide::of(b),
        above,
        below,
        m: above.min(below),
        x: abs(sub(down, up)?)?,
    })
}

/// Checks every invariant a triangle vector of a lamination must satisfy and
/// reports all failures, not just the first.
pub fn validate_triangle(t: &TriangleCoords) -> Result<(), Violations> {
    let mut out = Vec::new();

    for (k, &v) in t.alpha.iter().enumerate() {
        if v < 0 {
            out.push(Violation::NegativeAlpha {
                index: k + 1,
                value: v,
            });
        }
    }
    for (k, &v) in t.beta.iter().enumerate() {
        if v < 0 {
            out.push(Violation::NegativeBeta {
                index: k + 1,
                value: v,
            });
        }
        if v % 2 != 0 {
            out.push(Violation::OddBeta {
                index: k + 1,
                value: v,
            });
        }
    }

    // Widened so that adversarial inputs near i64::MAX are reported, not wrapped.
    let mut min_m: Option<i128> = None;
    for i in 1..=t.n.strips() {
        let up = i128::from(t.alpha_at(2 * i - 1));
        let down = i128::from(t.alpha_at(2 * i));
        let left = i128::from(t.beta_at(i));
        let right = i128::from(t.beta_at(i + 1));
        let expected = left.max(right);
        if up + down != expected {
            out.push(Violation::StripSum {
                strip: i,
                sum: up + down,
                expected,
            });
        }
        let loops = (left - right).abs() / 2;
        let above = up - loops;
        let below = down - loops;
        if above < 0 {
            out.push(Violation::AboveNegative { strip: i, above });
        }
        if below < 0 {
            out.push(Violation::BelowNegative { strip: i, below });
        }
        let m = above.min(below);
        min_m = Some(min_m.map_or(m, |cur| cur.min(m)));
    }

    let zero = t.alpha.iter().chain(&t.beta).all(|&v| v == 0);
    if zero {
        out.push(Violation::ZeroVector);
    } else if let Some(min_m) = min_m {
        if min_m > 0 {
            out.push(Violation::BoundaryParallel { min_m });
        }
    }

    if out.is_empty() {
        Ok(())
    } else {
        Err(Violations(out))
    }
}

/// `a_i = (alpha_{2i} - alpha_{2i-1}) / 2`, `b_i = (beta_i - beta_{i+1}) / 2`.
pub fn dynnikov_from_triangle(t: &TriangleCoords) -> Result<DynnikovCoords> {
    t.validate()?;
    let strips = t.n.strips();
    let mut a = Vec::with_capacity(strips);
    let mut b = Vec::with_capacity(strips);
    for i in 1..=strips {
        a.push(sub(t.alpha_at(2 * i), t.alpha_at(2 * i - 1))? / 2);
        b.push(sub(t.beta_at(i), t.beta_at(i + 1))? / 2);
    }
    DynnikovCoords::new(t.n, a, b)
}

/// Inverse of [`dynnikov_from_triangle`].
///
/// `beta_1` is twice the maximum over strips of
/// `|a_k| + max(b_k, 0) + sum_{j<k} b_j`; the remaining `beta_i` follow by
/// telescoping `b`, and each alpha pair is split around `beta_i / 2` or
/// `beta_{i+1} / 2` depending on the loop side.
pub fn triangle_from_dynnikov(d: &DynnikovCoords) -> Result<TriangleCoords> {
    let n = d.n;
    let strips = n.strips();

    // prefix[k] = b_1 + ... + b_k, prefix[0] = 0
    let mut prefix = Vec::with_capacity(strips + 1);
    prefix.push(0i64);
    for &bk in &d.b {
        prefix.push(add(*prefix.last().unwrap(), bk)?);
    }

    let mut peak = i64::MIN;
    for ((&ak, &bk), &pk) in d.a.iter().zip(&d.b).zip(&prefix) {
        let term = add(add(abs(ak)?, bk.max(0))?, pk)?;
        peak = peak.max(term);
    }

    let top = mul(2, peak)?;
    let beta = (0..n.beta_len())
        .map(|i| sub(top, mul(2, prefix[i])?))
        .collect::<Result<Vec<_>>>()?;

    let mut alpha = Vec::with_capacity(n.alpha_len());
    for k in 0..strips {
        let half_left = beta[k] / 2;
        let half_right = beta[k + 1] / 2;
        let half = if d.b[k] >= 0 { half_left } else { half_right };
        debug_assert!(d.b[k] != 0 || half_left == half_right);
        alpha.push(sub(half, d.a[k])?);
        alpha.push(add(half, d.a[k])?);
    }

    TriangleCoords::new(n, alpha, beta)
}
