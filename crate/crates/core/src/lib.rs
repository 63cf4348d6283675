//! Dense complex matrix analysis for operator angular-distance inequalities.
//!
//! The library computes operator absolute values, polar decompositions and
//! fractional powers, evaluates both sides of the operator p-angular
//! distance bounds, and checks their equality characterizations with
//! explicit tolerances. All routines are generic over a [`Real`] scalar;
//! the aliases below fix it to `f64` (or `f32`).

pub mod construct;
pub mod dw;
pub mod error;
pub mod kernels;
pub mod order;
pub mod sampler;
pub mod scalar;
pub mod st;

pub use error::{Error, Result};
pub use kernels::ComplexMatrix;
pub use scalar::Real;

pub type Matrix = ComplexMatrix<f64>;
pub type Matrix32 = ComplexMatrix<f32>;
pub type Policy = order::TolerancePolicy<f64>;
pub type Policy32 = order::TolerancePolicy<f32>;
pub type Report = dw::CheckReport<f64>;
pub type Report32 = dw::CheckReport<f32>;
pub type Polar = kernels::PolarForm<f64>;
pub type Complex64 = num_complex::Complex<f64>;
