//! Coloured manifolds as ledgers, and the coloured handle moves on them.
//!
//! A coloured manifold is recorded by what the handle moves can see: a
//! presentation of `H_1`, the t-curves (the circles where the white and gray
//! parts of the boundary meet) with their classes, and the white and gray
//! regions with their Euler characteristics and bounding curves.

mod attach;
pub mod build;
mod cw;
mod manifold;
mod programme;
pub mod random;

pub use build::{block, disjoint_union, solid_torus, CurveSpec, RegionSpec};
pub use cw::{cw_model_homology, HomologyInvariants};
pub use manifold::{
    Applied, Attach1Outcome, ColouredManifold, Colour, CurveEntry, Generator, GeneratorEntry, GeneratorKind,
    LedgerSummary, ManifoldFile, Region, RegionEntry, TCurve,
};
pub use programme::{run_programme, HandleProgramme, ProgrammeError, Step, TraceEntry};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CalculusError {
    #[error("t-curve classes break the solid torus constraint: {0}")]
    TorusClassMismatch(String),
    #[error("bad euler characteristic: {0}")]
    BadEuler(String),
    #[error("name used twice: {0}")]
    NameClash(String),
    #[error("unknown t-curve {0}")]
    UnknownCurve(String),
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("order violation: {0}")]
    OrderViolation(String),
    #[error("inconsistent ledger: {0}")]
    BadLedger(String),
    #[error("class coefficient overflow")]
    Overflow,
    #[error("parse error: {0}")]
    Parse(String),
}
