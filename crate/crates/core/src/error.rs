use std::fmt;

use serde::Serialize;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("puncture count must be at least 3, got {0}")]
    TooFewPunctures(usize),

    #[error("{what} has length {got}, expected {expected} for n = {n}")]
    LengthMismatch {
        what: &'static str,
        n: usize,
        expected: usize,
        got: usize,
    },

    #[error("the zero vector is not the coordinate of any lamination")]
    ZeroVector,

    #[error("invalid triangle coordinates: {0}")]
    InvalidTriangle(Violations),

    #[error("integer overflow during exact arithmetic")]
    Overflow,

    #[error("strip range [{i}, {j}] is outside 1..={max}")]
    StripOutOfRange { i: usize, j: usize, max: usize },

    #[error("interval [{i}, {j}] is not a relaxed curve on D_{n}")]
    InvalidInterval { n: usize, i: usize, j: usize },

    #[error("component [{i}, {j}] has multiplicity zero")]
    ZeroMultiplicity { i: usize, j: usize },

    #[error("intervals [{}, {}] and [{}, {}] link, so the curves cannot be disjoint", .first.0, .first.1, .second.0, .second.1)]
    NonLaminar {
        first: (usize, usize),
        second: (usize, usize),
    },

    #[error("empty interval family has no triangle coordinates")]
    EmptyFamily,

    #[error("puncture counts differ: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("operation is only defined on D_3, got n = {0}")]
    NotThreePunctures(usize),

    #[error("random family needs at least one component")]
    NoComponents,

    #[error("curve diagram is inconsistent: {0}")]
    InconsistentDiagram(&'static str),

    #[error("invalid render options: {0}")]
    InvalidRenderOptions(&'static str),
}

/// One failed invariant of a triangle coordinate vector.
///
/// Strip and arc indices are 1-based, matching the usual labelling of the
/// arcs `alpha_1..alpha_{2n-4}` and `beta_1..beta_{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "invariant", rename_all = "snake_case")]
pub enum Violation {
    NegativeAlpha { index: usize, value: i64 },
    NegativeBeta { index: usize, value: i64 },
    OddBeta { index: usize, value: i64 },
    /// `alpha_{2i-1} + alpha_{2i} != max(beta_i, beta_{i+1})`
    StripSum { strip: usize, sum: i128, expected: i128 },
    AboveNegative { strip: usize, above: i128 },
    BelowNegative { strip: usize, below: i128 },
    /// Every strip has both above and below components, which forces a
    /// curve parallel to the outer boundary.
    BoundaryParallel { min_m: i128 },
    ZeroVector,
}

impl Violation {
    pub fn invariant(&self) -> &'static str {
        match self {
            Violation::NegativeAlpha { .. } => "negative_alpha",
            Violation::NegativeBeta { .. } => "negative_beta",
            Violation::OddBeta { .. } => "odd_beta",
            Violation::StripSum { .. } => "strip_sum",
            Violation::AboveNegative { .. } => "above_negative",
            Violation::BelowNegative { .. } => "below_negative",
            Violation::BoundaryParallel { .. } => "boundary_parallel",
            Violation::ZeroVector => "zero_vector",
        }
    }

    pub fn strip(&self) -> Option<usize> {
        match self {
            Violation::StripSum { strip, .. }
            | Violation::AboveNegative { strip, .. }
            | Violation::BelowNegative { strip, .. } => Some(*strip),
            _ => None,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NegativeAlpha { index, value } => write!(f, "alpha_{index} = {value} < 0"),
            Violation::NegativeBeta { index, value } => write!(f, "beta_{index} = {value} < 0"),
            Violation::OddBeta { index, value } => write!(f, "beta_{index} = {value} is odd"),
            Violation::StripSum {
                strip,
                sum,
                expected,
            } => write!(
                f,
                "strip {strip}: alpha_{} + alpha_{} = {sum} != max(beta_{strip}, beta_{}) = {expected}",
                2 * strip - 1,
                2 * strip,
                strip + 1
            ),
            Violation::AboveNegative { strip, above } => {
                write!(f, "strip {strip}: above count {above} < 0")
            }
            Violation::BelowNegative { strip, below } => {
                write!(f, "strip {strip}: below count {below} < 0")
            }
            Violation::BoundaryParallel { min_m } => {
                write!(f, "min m_i = {min_m} != 0 (boundary-parallel curve)")
            }
            Violation::ZeroVector => write!(f, "zero vector"),
        }
    }
}

/// Non-empty list of violations, in arc/strip order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Violations(pub Vec<Violation>);

impl Violations {
    pub fn iter(&self) -> std::slice::Iter<'_, Violation> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains_invariant(&self, name: &str) -> bool {
        self.0.iter().any(|v| v.invariant() == name)
    }
}

impl fmt::Display for Violations {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl From<Violations> for Error {
    fn from(v: Violations) -> Self {
        Error::InvalidTriangle(v)
    }
}
