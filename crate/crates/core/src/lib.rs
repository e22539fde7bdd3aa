//! Exact integer toolkit for integral laminations on the `n`-punctured disk.
//!
//! Laminations are described either by triangle coordinates (crossing
//! counts with a fixed system of `3n - 5` arcs) or by the `2n - 4` Dynnikov
//! coordinates, which are in bijection with `Z^{2n-4} \ {0}`. On top of the
//! conversions the crate computes geometric intersection numbers with
//! relaxed curves, and for any pair of laminations on `D_3`.
//!
//! [`oracle`] holds slower, independent ground truth used by the tests and
//! the `fuzz` command; [`render`] draws reconstructed laminations as SVG.

pub mod coords;
pub mod error;
pub mod intersection;
pub mod oracle;
pub mod render;

pub use coords::{
    dynnikov_from_triangle, strip_stats, triangle_from_dynnikov, validate_triangle,
    DynnikovCoords, LoopSide, PunctureCount, StripStats, TriangleCoords,
};
pub use error::{Error, Result, Violation, Violations};
pub use intersection::{
    d3_branches, intersect_d3, intersect_relaxed, intersect_relaxed_breakdown,
    intersect_relaxed_family, relaxed_curve_dynnikov, s_counts, Breakdown, FamilyMember,
    IntervalFamily, IntervalRelation, RelaxedCurve, SCounts,
};
pub use oracle::{
    family_triangle, linking_intersection, random_family, reconstruct, CurveDiagram, Region,
    Transit, TransitKind,
};
pub use render::{render_svg, RenderOptions};
