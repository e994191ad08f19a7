//! Two-qubit entanglement, Bell violation and mixedness.
//!
//! The crate computes, for any 4×4 density matrix, the tangle and entanglement
//! of formation, the maximal CHSH violation `B = 2√M`, and the linearized and
//! base-4 von Neumann entropies. On top of those measures sits an analysis
//! layer that builds the standard state families (pure, Werner, MEMS,
//! Bell-diagonal mixtures), constructs equal-violation pairs exactly, checks
//! ordering claims between entanglement and mixedness over seeded ensembles,
//! and scans random states.
//!
//! Everything here is `no_std` + `alloc`. File formats and the command line
//! live in the `bellmix` crate.

#![no_std]
// `num_traits::Float` supplies f64 math without std. Whenever std is linked
// into the graph (tests, feature unification) its inherent methods win and the
// import looks unused.
#![allow(unused_imports)]

extern crate alloc;

pub mod analysis;
mod error;
pub mod matrix;
pub mod measures;
pub mod rng;
pub mod states;

pub use error::{Error, Result};
pub use matrix::{ComplexMatrix4, RealMatrix3, Spectrum4};
pub use measures::MeasureRecord;
pub use states::{DensityMatrix, FamilySpec};

/// Tolerance shared by state validation and eigenvalue clamping.
pub const STATE_TOLERANCE: f64 = 1e-9;
