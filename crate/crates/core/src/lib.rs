//! Numerical laboratory for frames and their (possibly non-frame) duals in
//! truncated separable Hilbert spaces.
//!
//! Families of vectors are materialized at a finite truncation level and
//! analysed with small dense complex linear algebra: frame bounds, canonical
//! and alternative duals, excess, moment spaces, and diagnostics separating
//! conditionally from unconditionally convergent frame expansions.

pub mod analysis;
pub mod convergence;
pub mod duality;
pub mod error;
pub mod family;
pub mod linalg;
pub mod structure;

pub use error::{FrameError, Result};
pub use family::{FamilyOrigin, FrameFamily, GallerySpec};
pub use linalg::{Scalar, Vector};

/// Numerical thresholds shared by every analysis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Relative accuracy demanded of eigenvalues.
    pub eigen: f64,
    /// Relative residual accepted from linear solves.
    pub residual: f64,
    /// Singular values below `rank * σ_max` count as zero.
    pub rank: f64,
    /// Operator-norm residual accepted when certifying a dual.
    pub dual: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            eigen: 1e-10,
            residual: 1e-10,
            rank: 1e-8,
            dual: 1e-8,
        }
    }
}
