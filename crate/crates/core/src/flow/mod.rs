//! Colouring the boundary of a solid by a vector field: white where the
//! field points in, gray where it points out, with the tangency circles
//! between them traced as polylines.

mod colour;
mod field;
mod mesh;

pub use colour::{colour_mesh, export_off, summarize, ColouredSurfaceMesh, FlowSummary, Polyline, DEFAULT_EPSILON};
pub use field::{Term, VectorField};
pub use mesh::{box_mesh, icosphere, rotate, torus, Point, TriMesh, GENERIC_ROTATION};

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum FlowError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("mesh is not closed: {0}")]
    NotClosed(String),
    #[error("bad mesh: {0}")]
    BadMesh(String),
    /// The field is tangent to the surface at a vertex, within tolerance.
    #[error("field is tangent at vertex {vertex} (X.n = {value:e}); perturb the mesh or the field")]
    AmbiguousTangency { vertex: usize, value: f64 },
    #[error("epsilon must be positive and finite, got {0}")]
    BadEpsilon(f64),
}
