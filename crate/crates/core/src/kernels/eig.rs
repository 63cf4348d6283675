//! Hermitian eigendecomposition by cyclic complex Jacobi rotations.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal
//! unitary, then applies the real symmetric Schur rotation. Sweeps stop once
//! the off-diagonal mass drops below `eps·‖H‖_F`.

use num_complex::Complex;
use num_traits::Zero;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::scalar::{precision_floor, Real};

const MAX_SWEEPS: usize = 100;

/// Relative asymmetry above which a matrix is rejected as non-Hermitian.
pub fn hermitian_slack<T: Real>() -> T {
    precision_floor(1e-8, 1e3)
}

#[derive(Debug, Clone)]
pub struct HermitianEig<T: Real> {
    /// Ascending.
    pub eigenvalues: Vec<T>,
    /// Orthonormal eigenvectors stored as columns, in eigenvalue order.
    pub eigenvectors: ComplexMatrix<T>,
}

impl<T: Real> HermitianEig<T> {
    pub fn min(&self) -> T {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> T {
        *self.eigenvalues.last().expect("nonempty spectrum")
    }

    /// Largest eigenvalue magnitude.
    pub fn spectral_radius(&self) -> T {
        self.min().abs().max(self.max().abs())
    }

    /// V·diag(f(λ))·V*, returned exactly Hermitian.
    pub fn apply(&self, f: impl Fn(T) -> T) -> ComplexMatrix<T> {
        let v = &self.eigenvectors;
        let n = v.rows();
        let mapped: Vec<T> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let mut out = ComplexMatrix::zeros(n, n);
        for (k, &fk) in mapped.iter().enumerate() {
            if fk == T::zero() {
                continue;
            }
            for i in 0..n {
                let vik = v[(i, k)] * fk;
                for j in 0..n {
                    out[(i, j)] += vik * v[(j, k)].conj();
                }
            }
        }
        out.hermitian_part()
    }

    pub fn reconstruct(&self) -> ComplexMatrix<T> {
        self.apply(|l| l)
    }
}

/// Symmetrizes `h` and checks its asymmetry against [`hermitian_slack`].
pub fn symmetrize<T: Real>(h: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    h.dim()?;
    h.check_finite()?;
    let norm = h.fro_norm();
    let asym = h.asymmetry();
    if asym > hermitian_slack::<T>() * norm {
        return Err(Error::NotHermitian {
            asymmetry: (asym / norm).to_f64_lossy(),
        });
    }
    Ok(h.hermitian_part())
}

pub fn hermitian_eig<T: Real>(h: &ComplexMatrix<T>) -> Result<HermitianEig<T>> {
    let mut a = symmetrize(h)?;
    let n = a.rows();
    let mut v = ComplexMatrix::identity(n);
    let norm = a.fro_norm();
    let target = T::epsilon() * norm;

    for _ in 0..MAX_SWEEPS {
        if norm == T::zero() || off_diagonal_norm(&a) <= target {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<T> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).expect("finite eigenvalues"));
    let eigenvalues = order.iter().map(|&i| diag[i]).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |i, k| v[(i, order[k])]);
    Ok(HermitianEig {
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_norm<T: Real>(a: &ComplexMatrix<T>) -> T {
    let n = a.rows();
    let mut acc = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

fn rotate<T: Real>(a: &mut ComplexMatrix<T>, v: &mut ComplexMatrix<T>, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag == T::zero() {
        return;
    }
    let phase = apq / mag;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let two = T::lit(2.0);
    let zeta = (aqq - app) / (two * mag);
    let sign = if zeta >= T::zero() {
        T::one()
    } else {
        -T::one()
    };
    let t = sign / (zeta.abs() + T::one().hypot(zeta));
    let c = T::one() / (T::one() + t * t).sqrt();
    let s = t * c;

    // Q = [[c, s], [-s·conj(e), c·conj(e)]] acting on columns p, q.
    let ec = phase.conj();
    let q_pp = Complex::new(c, T::zero());
    let q_pq = Complex::new(s, T::zero());
    let q_qp = ec * (-s);
    let q_qq = ec * c;

    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * q_pp + akq * q_qp;
        a[(k, q)] = akp * q_pq + akq * q_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = q_pp.conj() * apk + q_qp.conj() * aqk;
        a[(q, k)] = q_pq.conj() * apk + q_qq.conj() * aqk;
    }
    a[(p, q)] = Complex::zero();
    a[(q, p)] = Complex::zero();
    a[(p, p)] = Complex::new(app - t * mag, T::zero());
    a[(q, q)] = Complex::new(aqq + t * mag, T::zero());

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * q_pp + vkq * q_qp;
        v[(k, q)] = vkp * q_pq + vkq * q_qq;
    }
}
