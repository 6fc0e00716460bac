//! Triangulated surfaces with a marked subcomplex L: validation,
//! subdivision, homology ranks of the complement of L relative to the
//! boundary, and the witnesses used to trim the surface down to a frame.

pub mod build;
mod chains;
mod complement;
mod complex;
mod curve;
mod subdivide;
mod validate;

pub use chains::{betti, pair_homology_with_marked, pair_ranks, Cells};
pub use complement::{
    complement_complex, duality_ranks, relative_betti, Complement, ComplementComponent, RelativeRanks,
};
pub use complex::{ComplexFile, Edge, Marked, SurfaceComplex, Tri};
pub(crate) use complex::UnionFind;
pub use curve::{find_isolated_component, find_relative_curve, CurveKind, RelativeCurve};
pub use subdivide::{barycentric_subdivision, subdivide_times};
pub use validate::{validate, Violation};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SurfaceError {
    #[error("invalid complex: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("no relative curve: H1(S - L, dS) is zero")]
    NoCurve,
}

/// Validates `s`, turning violations into an error.
pub fn require_valid(s: &SurfaceComplex) -> Result<(), SurfaceError> {
    let violations = validate(s);
    if violations.is_empty() {
        Ok(())
    } else {
        Err(SurfaceError::Invalid(violations))
    }
}
