//! Numerical radius of complex matrices and a verified catalog of its upper
//! bounds.
//!
//! The [`radius`] engine computes `w(T)` by a theta sweep of rotated
//! Hermitian parts. [`scalar`] and [`lemmas`] expose the vector- and
//! operator-level inequalities behind the bounds as checkable predicates,
//! [`bounds`] evaluates every bound, chain and lambda optimum, and
//! [`harness`] runs seeded batch verification over random ensembles.

pub mod bounds;
pub mod calculus;
pub mod eigen;
pub mod error;
pub mod harness;
pub mod lemmas;
pub mod matrix;
pub mod params;
pub mod radius;
pub mod scalar;
pub mod search;

pub use bounds::{BoundId, BoundMode, BoundResult, ChainId, ChainResult};
pub use error::{Error, Result};
pub use matrix::{ComplexMatrix, ComplexVector};
pub use num_complex::Complex64;
pub use params::BoundParams;
pub use scalar::InequalityRecord;
