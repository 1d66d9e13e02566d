//! FI-modules: injections, FB-modules, free modules, and the truncated
//! module type with its submodule and quotient operations.

pub mod fb;
pub mod free;
pub mod injection;
pub mod module;
pub mod ops;

pub use fb::{FbModule, Preset, Representation};
pub use free::{FreeBasis, FreeBasisLabel, FreeModule};
pub use injection::{all_injections, subsets, Injection};
pub use module::{FiElement, FiModule, Ring, Tier, Violation};
pub use ops::{kernel_of_map, quotient_module, span_lattices, span_submodule, FiMap, Submodule};
