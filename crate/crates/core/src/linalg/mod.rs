//! Exact integer linear algebra: Hermite and Smith normal forms, lattices,
//! presented abelian groups, and sparse elimination for boundary matrices.

pub mod group;
pub mod hnf;
pub mod lattice;
pub mod matrix;
pub mod rational;
pub mod scalar;
pub mod snf;
pub mod sparse;

pub use group::{GroupInvariants, PresentedGroup};
pub use hnf::{hnf, Hnf};
pub use lattice::Lattice;
pub use matrix::{int_vec, IntMatrix, Matrix};
pub use snf::{invariant_factors, snf, Snf};
pub use sparse::SparseIntMatrix;
