use super::eig::hermitian_eig;
use super::matrix::ComplexMatrix;
use super::polar::abs_op;
use super::SpectralTol;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Spectral power P^α of a Hermitian PSD matrix.
///
/// Eigenvalues at or below the rank cutoff `n·λ_max·ε·factor` count as zero:
/// they map to 0 for α > 0 and make α < 0 fail with `SingularPower`.
/// P^0 is the identity regardless of rank.
pub fn frac_power<T: Real>(p: &ComplexMatrix<T>, alpha: T) -> Result<ComplexMatrix<T>> {
    frac_power_with(p, alpha, &SpectralTol::default())
}

pub fn frac_power_with<T: Real>(
    p: &ComplexMatrix<T>,
    alpha: T,
    tol: &SpectralTol<T>,
) -> Result<ComplexMatrix<T>> {
    if !alpha.is_finite() {
        return Err(crate::error::invalid(
            "alpha",
            alpha.to_f64_lossy(),
            "must be finite",
        ));
    }
    let eig = hermitian_eig(p)?;
    let n = eig.eigenvalues.len();
    let radius = eig.spectral_radius();
    let scale = T::one().max(radius);
    if eig.min() < -tol.psd_slack * scale {
        return Err(Error::NotPsd {
            min_eig: eig.min().to_f64_lossy(),
        });
    }
    if alpha == T::zero() {
        return Ok(ComplexMatrix::identity(n));
    }
    let cutoff = T::from_count(n) * radius * T::epsilon() * tol.rank_cutoff.factor;
    if alpha < T::zero() && eig.min() <= cutoff {
        return Err(Error::SingularPower {
            alpha: alpha.to_f64_lossy(),
            min_eig: eig.min().to_f64_lossy(),
            cutoff: cutoff.to_f64_lossy(),
        });
    }
    if alpha == T::one() {
        return Ok(eig.apply(|l| if l <= cutoff { T::zero() } else { l }));
    }
    Ok(eig.apply(|l| {
        if l <= cutoff {
            T::zero()
        } else {
            l.powf(alpha)
        }
    }))
}

/// |A|^α.
pub fn abs_power<T: Real>(a: &ComplexMatrix<T>, alpha: T) -> Result<ComplexMatrix<T>> {
    frac_power(&abs_op(a)?, alpha)
}

/// Operator p-angular distance |A|A|^{p−1} − B|B|^{p−1}|.
pub fn p_angular_distance<T: Real>(
    a: &ComplexMatrix<T>,
    b: &ComplexMatrix<T>,
    p: T,
) -> Result<ComplexMatrix<T>> {
    a.dim()?;
    a.ensure_same_shape(b)?;
    let e = p - T::one();
    let x = a * &abs_power(a, e)?;
    let y = b * &abs_power(b, e)?;
    abs_op(&(&x - &y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(x: &ComplexMatrix<f64>, y: &ComplexMatrix<f64>, tol: f64) -> bool {
        (x - y).fro_norm() <= tol
    }

    #[test]
    fn square_root_and_cube_root_of_diagonals() {
        let p = ComplexMatrix::from_diag(&[4.0, 9.0]);
        assert!(close(
            &frac_power(&p, 0.5).unwrap(),
            &ComplexMatrix::from_diag(&[2.0, 3.0]),
            1e-14
        ));
        let q = ComplexMatrix::from_diag(&[0.0, 8.0]);
        assert!(close(
            &frac_power(&q, 1.0 / 3.0).unwrap(),
            &ComplexMatrix::from_diag(&[0.0, 2.0]),
            1e-14
        ));
    }

    #[test]
    fn negative_power_of_singular_matrix_fails() {
        let q = ComplexMatrix::from_diag(&[0.0, 1.0]);
        assert!(matches!(
            frac_power(&q, -1.0),
            Err(Error::SingularPower { .. })
        ));
    }

    #[test]
    fn zeroth_power_is_identity_even_when_singular() {
        let q = ComplexMatrix::from_diag(&[0.0, 1.0]);
        assert_eq!(frac_power(&q, 0.0).unwrap(), ComplexMatrix::identity(2));
    }

    #[test]
    fn materially_negative_matrix_is_rejected() {
        let q = ComplexMatrix::from_diag(&[-1.0, 1.0]);
        assert!(matches!(frac_power(&q, 0.5), Err(Error::NotPsd { .. })));
        let slightly = ComplexMatrix::from_diag(&[-1e-14, 1.0]);
        let r = frac_power(&slightly, 0.5).unwrap();
        assert!(close(&r, &ComplexMatrix::from_diag(&[0.0, 1.0]), 1e-15));
    }

    #[test]
    fn inverse_of_invertible() {
        let p = ComplexMatrix::from_diag(&[2.0, 4.0]);
        assert!(close(
            &frac_power(&p, -1.0).unwrap(),
            &ComplexMatrix::from_diag(&[0.5, 0.25]),
            1e-15
        ));
    }

    #[test]
    fn p_angular_distance_scalars() {
        let a = ComplexMatrix::<f64>::from_diag(&[2.0]);
        let b = ComplexMatrix::from_diag(&[1.0]);
        assert!((p_angular_distance(&a, &b, 1.0).unwrap()[(0, 0)].re - 1.0).abs() < 1e-15);
        assert!(p_angular_distance(&a, &b, 0.0).unwrap()[(0, 0)].norm() < 1e-15);
        assert!(p_angular_distance(&a, &a, 0.3).unwrap().fro_norm() < 1e-15);
    }

    #[test]
    fn p_angular_distance_needs_invertibility_below_one() {
        let a = ComplexMatrix::from_diag(&[0.0, 2.0]);
        let b = ComplexMatrix::from_diag(&[1.0, 1.0]);
        assert!(matches!(
            p_angular_distance(&a, &b, 0.5),
            Err(Error::SingularPower { .. })
        ));
        assert!(p_angular_distance(&a, &b, 2.0).is_ok());
    }
}
