//! Thin SVD by one-sided (Hestenes) Jacobi orthogonalization of columns.
//!
//! Working on `G = A·V` directly keeps small singular values accurate, which
//! matters for the support projections of rank-deficient inputs.

use num_complex::Complex;
use num_traits::Zero;

use super::matrix::ComplexMatrix;
use crate::error::Result;
use crate::scalar::Real;

const MAX_SWEEPS: usize = 80;

/// `A = left · diag(sigma) · right*`, with `sigma` descending.
#[derive(Debug, Clone)]
pub struct Svd<T: Real> {
    /// m × k with orthonormal columns, k = min(m, n).
    pub left: ComplexMatrix<T>,
    pub sigma: Vec<T>,
    /// n × k with orthonormal columns.
    pub right: ComplexMatrix<T>,
}

impl<T: Real> Svd<T> {
    pub fn sigma_max(&self) -> T {
        self.sigma.first().copied().unwrap_or_else(T::zero)
    }

    pub fn sigma_min(&self) -> T {
        self.sigma.last().copied().unwrap_or_else(T::zero)
    }

    /// Rank cutoff `max(m, n)·σ_max·ε·factor`.
    pub fn cutoff(&self, factor: T) -> T {
        let m = self.left.rows().max(self.right.rows());
        T::from_count(m) * self.sigma_max() * T::epsilon() * factor
    }

    pub fn rank(&self, factor: T) -> usize {
        let tau = self.cutoff(factor);
        self.sigma.iter().filter(|&&s| s > tau).count()
    }

    pub fn reconstruct(&self) -> ComplexMatrix<T> {
        let (m, n) = (self.left.rows(), self.right.rows());
        let mut out = ComplexMatrix::zeros(m, n);
        for (k, &s) in self.sigma.iter().enumerate() {
            if s == T::zero() {
                continue;
            }
            for i in 0..m {
                let u = self.left[(i, k)] * s;
                for j in 0..n {
                    out[(i, j)] += u * self.right[(j, k)].conj();
                }
            }
        }
        out
    }
}

pub fn svd<T: Real>(a: &ComplexMatrix<T>) -> Result<Svd<T>> {
    a.check_finite()?;
    // Entries far from 1 would overflow or underflow the squared column norms.
    let big = T::max_value().sqrt().sqrt();
    let m = a.max_abs();
    if m > big || (m > T::zero() && m < big.recip()) {
        let mut s = svd(&a.scale(m.recip()))?;
        s.sigma.iter_mut().for_each(|x| *x *= m);
        return Ok(s);
    }
    if a.rows() < a.cols() {
        let t = tall_svd(&a.adjoint());
        return Ok(Svd {
            left: t.right,
            sigma: t.sigma,
            right: t.left,
        });
    }
    Ok(tall_svd(a))
}

fn tall_svd<T: Real>(a: &ComplexMatrix<T>) -> Svd<T> {
    let (m, n) = a.shape();
    // Column-major working copies.
    let mut g: Vec<Vec<Complex<T>>> = (0..n).map(|j| a.column(j)).collect();
    let mut v: Vec<Vec<Complex<T>>> = (0..n)
        .map(|j| {
            let mut e = vec![Complex::zero(); n];
            e[j] = Complex::new(T::one(), T::zero());
            e
        })
        .collect();
    let tol = T::epsilon() * T::from_count(m.max(2));

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..n {
            for j in (i + 1)..n {
                let alpha = norm_sqr(&g[i]);
                let beta = norm_sqr(&g[j]);
                if alpha == T::zero() || beta == T::zero() {
                    continue;
                }
                let gamma = inner(&g[i], &g[j]);
                let mag = gamma.norm();
                if mag <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / mag;
                let zeta = (beta - alpha) / (T::lit(2.0) * mag);
                let sign = if zeta >= T::zero() {
                    T::one()
                } else {
                    -T::one()
                };
                let t = sign / (zeta.abs() + T::one().hypot(zeta));
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;
                let ec = phase.conj();
                apply_pair(&mut g, i, j, c, s, ec);
                apply_pair(&mut v, i, j, c, s, ec);
            }
        }
        if !rotated {
            break;
        }
    }

    let norms: Vec<T> = g.iter().map(|col| norm_sqr(col).sqrt()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| norms[y].partial_cmp(&norms[x]).expect("finite norms"));
    let sigma: Vec<T> = order.iter().map(|&k| norms[k]).collect();
    let sigma_max = sigma.first().copied().unwrap_or_else(T::zero);
    let floor = sigma_max * T::epsilon() * T::from_count(m);

    // Normalize, then re-orthonormalize in descending order and complete the
    // basis where the column carries no information.
    let mut left_cols: Vec<Vec<Complex<T>>> = Vec::with_capacity(n);
    for (k, &idx) in order.iter().enumerate() {
        let candidate = if sigma[k] > floor {
            Some(g[idx].iter().map(|&z| z / sigma[k]).collect::<Vec<_>>())
        } else {
            None
        };
        let col = orthonormal_extension(&left_cols, candidate, m);
        left_cols.push(col);
    }

    let left = ComplexMatrix::from_fn(m, n, |i, k| left_cols[k][i]);
    let right = ComplexMatrix::from_fn(n, n, |i, k| v[order[k]][i]);
    Svd { left, sigma, right }
}

fn apply_pair<T: Real>(
    cols: &mut [Vec<Complex<T>>],
    i: usize,
    j: usize,
    c: T,
    s: T,
    ec: Complex<T>,
) {
    let (head, tail) = cols.split_at_mut(j);
    let ci = &mut head[i];
    let cj = &mut tail[0];
    for (x, y) in ci.iter_mut().zip(cj.iter_mut()) {
        let yi = *y * ec;
        let xi = *x;
        *x = xi * c - yi * s;
        *y = xi * s + yi * c;
    }
}

fn norm_sqr<T: Real>(x: &[Complex<T>]) -> T {
    x.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr())
}

/// x* y
fn inner<T: Real>(x: &[Complex<T>], y: &[Complex<T>]) -> Complex<T> {
    x.iter()
        .zip(y)
        .fold(Complex::zero(), |acc, (a, b)| acc + a.conj() * b)
}

fn project_out<T: Real>(basis: &[Vec<Complex<T>>], x: &mut [Complex<T>]) {
    for b in basis {
        let c = inner(b, x);
        for (xi, bi) in x.iter_mut().zip(b) {
            *xi -= *bi * c;
        }
    }
}

/// Next orthonormal column: the Gram-Schmidt residual of `candidate` when it
/// is well defined, otherwise the best-conditioned standard basis vector.
fn orthonormal_extension<T: Real>(
    basis: &[Vec<Complex<T>>],
    candidate: Option<Vec<Complex<T>>>,
    m: usize,
) -> Vec<Complex<T>> {
    let threshold = T::lit(0.5);
    if let Some(mut x) = candidate {
        for _ in 0..2 {
            project_out(basis, &mut x);
        }
        let nrm = norm_sqr(&x).sqrt();
        if nrm > threshold {
            return x.into_iter().map(|z| z / nrm).collect();
        }
    }
    let mut best: Option<(T, Vec<Complex<T>>)> = None;
    for e in 0..m {
        let mut x = vec![Complex::zero(); m];
        x[e] = Complex::new(T::one(), T::zero());
        for _ in 0..2 {
            project_out(basis, &mut x);
        }
        let nrm = norm_sqr(&x).sqrt();
        if best.as_ref().is_none_or(|(b, _)| nrm > *b) {
            best = Some((nrm, x));
        }
    }
    let (nrm, x) = best.expect("m >= 1");
    x.into_iter().map(|z| z / nrm).collect()
}
