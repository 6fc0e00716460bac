pub mod calculus;
pub mod detector;
pub mod flow;
pub mod homology;
pub mod surface;
pub mod trim;
