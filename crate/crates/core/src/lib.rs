//! Imaginarity and mixedness of finite-dimensional quantum states.
//!
//! The crate covers the l1-norm, 1-norm and relative-entropy measures of
//! imaginarity, the linear/von Neumann/1-norm measures of mixedness, the
//! trade-off relations tying them together, explicit constructions of
//! maximally imaginary mixed states (MIMS), and the evolution of the qubit
//! trade-off functional under four Markovian channels.
//!
//! Everything here is `no_std` with `alloc`. File formats and the command
//! line live in the `imix` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod eigen;
mod error;
mod matrix;

pub mod channels;
pub mod measures;
pub mod mims;
pub mod search;
pub mod states;
pub mod tradeoffs;

pub use eigen::{hermitian_eigen, HermitianEigen};
pub use error::{Error, Result};
pub use matrix::CMatrix;
pub use num_complex::Complex64;
pub use states::{BlochVector, DensityMatrix, HermitianSpectrum};

/// Tolerances shared across modules.
pub mod tol {
    /// Maximum entrywise deviation from Hermiticity accepted (and symmetrized away).
    pub const HERMITIAN: f64 = 1e-10;
    /// Maximum deviation of the trace from one.
    pub const TRACE: f64 = 1e-10;
    /// Smallest eigenvalue allowed for a positive semidefinite state.
    pub const PSD: f64 = -1e-10;
    /// Bloch-vector norm slack.
    pub const BLOCH: f64 = 1e-12;
    /// Kraus completeness residual.
    pub const COMPLETENESS: f64 = 1e-10;
    /// Imaginary-part magnitude below which a Kraus entry counts as real.
    pub const REAL_ENTRY: f64 = 1e-14;
    /// Slack on feasibility thresholds so that s = threshold(d) itself is accepted.
    pub const THRESHOLD: f64 = 1e-12;
}
