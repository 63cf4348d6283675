//! Dense complex matrix arithmetic and spectral kernels.
//!
//! Everything here is a pure function of its inputs.

mod eig;
mod matrix;
mod polar;
mod power;
mod svd;

pub use eig::{hermitian_eig, hermitian_slack, symmetrize, HermitianEig};
pub use matrix::ComplexMatrix;
pub use polar::{abs_op, polar, polar_with, PolarForm};
pub use power::{abs_power, frac_power, frac_power_with, p_angular_distance};
pub use svd::{svd, Svd};

use crate::scalar::{precision_floor, Real};

/// Multiplier in the numerical-rank cutoff `max(m, n)·σ_max·ε·factor`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankCutoff<T> {
    pub factor: T,
}

impl<T: Real> Default for RankCutoff<T> {
    fn default() -> Self {
        Self {
            factor: T::lit(16.0),
        }
    }
}

/// Thresholds used by the spectral functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralTol<T> {
    pub rank_cutoff: RankCutoff<T>,
    /// Negative eigenvalues down to `-psd_slack·max(1, ρ)` are clamped to zero.
    pub psd_slack: T,
}

impl<T: Real> Default for SpectralTol<T> {
    fn default() -> Self {
        Self {
            rank_cutoff: RankCutoff::default(),
            psd_slack: precision_floor(1e-9, 1e4),
        }
    }
}
