use num_complex::Complex;

use super::matrix::ComplexMatrix;
use super::svd::{svd, Svd};
use super::RankCutoff;
use crate::error::Result;
use crate::scalar::Real;

/// A = U·|A| with U a partial isometry whose initial space is the support of |A|.
#[derive(Debug, Clone)]
pub struct PolarForm<T: Real> {
    pub isometry: ComplexMatrix<T>,
    pub positive: ComplexMatrix<T>,
    pub support_rank: usize,
}

impl<T: Real> PolarForm<T> {
    /// U*U.
    pub fn support_projection(&self) -> ComplexMatrix<T> {
        self.isometry.gram()
    }

    pub fn reconstruct(&self) -> ComplexMatrix<T> {
        &self.isometry * &self.positive
    }
}

/// |A| = (A*A)^{1/2}, computed as Vs·diag(σ)·Vs* from the SVD.
pub fn abs_op<T: Real>(a: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    a.dim()?;
    let s = svd(a)?;
    Ok(positive_factor(&s))
}

pub fn polar<T: Real>(a: &ComplexMatrix<T>) -> Result<PolarForm<T>> {
    polar_with(a, RankCutoff::default())
}

pub fn polar_with<T: Real>(a: &ComplexMatrix<T>, cutoff: RankCutoff<T>) -> Result<PolarForm<T>> {
    let n = a.dim()?;
    let s = svd(a)?;
    let tau = s.cutoff(cutoff.factor);
    let mut isometry = ComplexMatrix::zeros(n, n);
    let mut rank = 0;
    for (k, &sk) in s.sigma.iter().enumerate() {
        if sk <= tau {
            continue;
        }
        rank += 1;
        for i in 0..n {
            let u: Complex<T> = s.left[(i, k)];
            for j in 0..n {
                isometry[(i, j)] += u * s.right[(j, k)].conj();
            }
        }
    }
    Ok(PolarForm {
        isometry,
        positive: positive_factor(&s),
        support_rank: rank,
    })
}

fn positive_factor<T: Real>(s: &Svd<T>) -> ComplexMatrix<T> {
    let n = s.right.rows();
    let mut out = ComplexMatrix::zeros(n, n);
    for (k, &sk) in s.sigma.iter().enumerate() {
        if sk == T::zero() {
            continue;
        }
        for i in 0..n {
            let v = s.right[(i, k)] * sk;
            for j in 0..n {
                out[(i, j)] += v * s.right[(j, k)].conj();
            }
        }
    }
    out.hermitian_part()
}
