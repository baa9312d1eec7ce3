//! Preference-based teaching of finite and infinite concept classes:
//! teaching dimensions, exact PBTD-1 decisions, linear sets over ℕ₀,
//! closure-operator teaching, and halfspace protocols.

pub mod admissible;
pub mod class;
pub mod closure;
pub mod digraph;
pub mod dims;
pub mod error;
pub mod fourier_motzkin;
pub mod gallery;
pub mod halfspaces;
pub mod hitting_set;
pub mod linset_teach;
pub mod numsg;
pub mod pbtd_one;
pub mod rational;
pub mod report;
pub mod suite;

pub use class::{Concept, FiniteClass, LabeledExample, Sample, Sign, Universe};
pub use dims::{Budget, Dim};
pub use error::{Error, Result};
