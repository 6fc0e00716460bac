//! Exact linear algebra: GF(2) ranks and kernels, integer Smith normal form,
//! and abelian groups presented by generators and relations.

mod bits;
mod group;
mod int;
mod smith;
mod sparse;

pub use bits::{kernel_basis_gf2, rank_gf2, BitMatrix, BitVec};
pub use group::{quotient_group, AbelianGroup, GroupElement};
pub use int::IntMatrix;
pub use smith::{smith_normal_form, SmithForm};
pub use sparse::{Reduction, SparseColumns};
