//! Exact computations with truncated FI-modules.
//!
//! An FI-module is stored degree by degree up to a truncation `N`, together
//! with the action of adjacent transpositions and one standard inclusion per
//! degree. On top of that representation the crate computes FI-homology
//! through a Koszul-type complex, the shift and derivative functors,
//! saturation lattices, subset colimits, and the arithmetic of the stable
//! range bounds.

pub mod catalan;
pub mod colimit;
pub mod degree;
pub mod error;
pub mod families;
pub mod json_int;
pub mod koszul;
pub mod fi;
pub mod functors;
pub mod input;
pub mod linalg;
pub mod saturation;
pub mod stable_range;

pub use degree::{Degree, TruncatedDegree};
pub use error::{Error, Result};
