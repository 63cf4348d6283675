//! Löwner-order comparison and the tolerance policy that turns operator
//! (in)equalities into boolean verdicts.
//!
//! Every check is measured against a `scale`; by convention callers use
//! [`check_scale`], i.e. `max(1, ‖A‖_F, ‖B‖_F)²`, since all the compared
//! expressions are quadratic in the operators.

use crate::error::{invalid, Result};
use crate::kernels::{hermitian_eig, ComplexMatrix, RankCutoff, SpectralTol};
use crate::scalar::{precision_floor, Real};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TolerancePolicy<T> {
    /// One-sided PSD slack: a gap may dip to `-eps_psd·scale`.
    pub eps_psd: T,
    /// Residual bound for detecting equality conditions.
    pub eps_eq: T,
    /// Residual bound for exact algebraic identities.
    pub eps_identity: T,
    pub rank_cutoff_factor: T,
}

impl<T: Real> Default for TolerancePolicy<T> {
    fn default() -> Self {
        Self {
            eps_psd: precision_floor(1e-9, 1e4),
            eps_eq: precision_floor(1e-8, 1e5),
            eps_identity: precision_floor(1e-10, 1e3),
            rank_cutoff_factor: T::lit(16.0),
        }
    }
}

impl<T: Real> TolerancePolicy<T> {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("eps_psd", self.eps_psd),
            ("eps_eq", self.eps_eq),
            ("eps_identity", self.eps_identity),
            ("rank_cutoff_factor", self.rank_cutoff_factor),
        ] {
            if !(v > T::zero()) || !v.is_finite() {
                return Err(invalid(
                    name,
                    v.to_f64_lossy(),
                    "must be positive and finite",
                ));
            }
        }
        if self.eps_identity > self.eps_eq {
            return Err(invalid(
                "eps_identity",
                self.eps_identity.to_f64_lossy(),
                "must not exceed eps_eq",
            ));
        }
        Ok(())
    }

    pub fn rank_cutoff(&self) -> RankCutoff<T> {
        RankCutoff {
            factor: self.rank_cutoff_factor,
        }
    }

    pub fn spectral(&self) -> SpectralTol<T> {
        SpectralTol {
            rank_cutoff: self.rank_cutoff(),
            psd_slack: self.eps_psd,
        }
    }

    pub fn psd_bound(&self, scale: T) -> T {
        self.eps_psd * scale
    }

    pub fn eq_bound(&self, scale: T) -> T {
        self.eps_eq * scale
    }

    pub fn identity_bound(&self, scale: T) -> T {
        self.eps_identity * scale
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderVerdict<T> {
    pub holds: bool,
    pub gap_min_eig: T,
    pub scale: T,
}

/// `max(1, ‖X‖_F, ...)²` over the operators involved in a check.
pub fn check_scale<T: Real>(ops: &[&ComplexMatrix<T>]) -> T {
    let m = ops.iter().fold(T::one(), |m, x| m.max(x.fro_norm()));
    m * m
}

pub fn min_eig<T: Real>(h: &ComplexMatrix<T>) -> Result<T> {
    Ok(hermitian_eig(h)?.min())
}

/// Verdict on `X ≤ Y`, i.e. `Y − X ≥ 0` up to `eps_psd·scale`.
///
/// Both sides are symmetrized separately before subtracting so that a
/// near-zero gap is exactly Hermitian.
pub fn loewner_leq<T: Real>(
    x: &ComplexMatrix<T>,
    y: &ComplexMatrix<T>,
    pol: &TolerancePolicy<T>,
    scale: T,
) -> Result<OrderVerdict<T>> {
    x.dim()?;
    x.ensure_same_shape(y)?;
    let gap = &y.hermitian_part() - &x.hermitian_part();
    let gap_min_eig = min_eig(&gap)?;
    Ok(OrderVerdict {
        holds: gap_min_eig >= -pol.psd_bound(scale),
        gap_min_eig,
        scale,
    })
}

pub fn residual_norm<T: Real>(x: &ComplexMatrix<T>) -> T {
    x.fro_norm()
}

pub fn is_equal<T: Real>(
    x: &ComplexMatrix<T>,
    y: &ComplexMatrix<T>,
    pol: &TolerancePolicy<T>,
    scale: T,
) -> Result<bool> {
    x.ensure_same_shape(y)?;
    Ok(residual_norm(&(x - y)) <= pol.eq_bound(scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex;

    type M = ComplexMatrix<f64>;

    #[test]
    fn min_eig_examples() {
        assert!((min_eig(&M::from_diag(&[1.0, -2.0])).unwrap() + 2.0).abs() < 1e-15);
        assert_eq!(min_eig(&M::zeros(2, 2)).unwrap(), 0.0);
        let h = M::from_real_rows(&[&[2.0, 1.0], &[1.0, 2.0]]).unwrap();
        assert!((min_eig(&h).unwrap() - 1.0).abs() < 1e-14);
        assert!(min_eig(&M::zeros(2, 3)).is_err());
    }

    #[test]
    fn loewner_examples() {
        let pol = TolerancePolicy::default();
        let v = loewner_leq(&M::zeros(2, 2), &M::from_diag(&[1.0, 2.0]), &pol, 1.0).unwrap();
        assert!(v.holds);
        assert!((v.gap_min_eig - 1.0).abs() < 1e-15);
        let v = loewner_leq(&M::from_diag(&[2.0]), &M::from_diag(&[1.0]), &pol, 1.0).unwrap();
        assert!(!v.holds);
        assert_eq!(v.gap_min_eig, -1.0);
        let x = M::from_real_rows(&[&[1.0, 0.5], &[0.5, -3.0]]).unwrap();
        let v = loewner_leq(&x, &x, &pol, 1.0).unwrap();
        assert!(v.holds && v.gap_min_eig.abs() < 1e-15);
        assert!(loewner_leq(&M::zeros(2, 2), &M::zeros(3, 3), &pol, 1.0).is_err());
    }

    #[test]
    fn residual_and_equality() {
        let pol = TolerancePolicy::default();
        assert_eq!(residual_norm(&M::zeros(2, 2)), 0.0);
        assert_eq!(residual_norm(&M::identity(2)), 2f64.sqrt());
        assert_eq!(residual_norm(&M::from_diag(&[3.0, 4.0])), 5.0);
        let x = M::from_diag(&[1.0, 2.0]);
        assert!(is_equal(&x, &x, &pol, 1.0).unwrap());
        assert!(!is_equal(&M::zeros(2, 2), &M::identity(2), &pol, 1.0).unwrap());
        let y = x.map(|z| z + Complex::new(1e-12, 0.0));
        assert!(is_equal(&x, &y, &pol, 1.0).unwrap());
        assert!(is_equal(&x, &M::zeros(3, 3), &pol, 1.0).is_err());
    }

    #[test]
    fn policy_validation() {
        assert!(TolerancePolicy::<f64>::default().validate().is_ok());
        let bad = TolerancePolicy {
            eps_identity: 1e-6,
            ..TolerancePolicy::<f64>::default()
        };
        assert!(bad.validate().is_err());
        let neg = TolerancePolicy {
            eps_psd: -1.0,
            ..TolerancePolicy::<f64>::default()
        };
        assert!(neg.validate().is_err());
    }

    #[test]
    fn scale_is_quadratic_and_floored() {
        assert_eq!(check_scale::<f64>(&[&M::zeros(2, 2)]), 1.0);
        assert_eq!(
            check_scale(&[&M::from_diag(&[3.0, 4.0]), &M::identity(2)]),
            25.0
        );
    }
}
