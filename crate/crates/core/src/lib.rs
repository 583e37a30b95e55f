//! Exact computation of the nef-cone slope `tau(C)` on the second symmetric
//! product of a smooth curve `C`, from structural data about the curve.
//!
//! - [`scalar`]: arithmetic in `Q(sqrt g)`.
//! - [`class_algebra`]: numerical classes on `C^(2)` and their pairing.
//! - [`cycle_tables`]: intersection numbers of cycles coming from coverings.
//! - [`tau_engine`]: the rule-based interval solver.
//! - [`decomposition`]: component decompositions of pencil curves.

pub mod class_algebra;
pub mod cycle_tables;
pub mod decomposition;
pub mod scalar;
pub mod tau_engine;

pub use scalar::ExactScalar;
