use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Dense row-major complex matrix.
///
/// Matrices built through [`ComplexMatrix::new`] are checked for shape and
/// finiteness; results of arithmetic are not re-validated.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix<T: Real> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> ComplexMatrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex<T>>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Empty);
        }
        if data.len() != rows * cols {
            return Err(Error::LengthMismatch {
                rows,
                cols,
                got: data.len(),
            });
        }
        if let Some(k) = data
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite {
                row: k / cols,
                col: k % cols,
            });
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from real row slices. Panics on ragged input.
    pub fn from_real_rows(rows: &[&[T]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| Complex::new(x, T::zero())))
            .collect();
        Self::new(rows.len(), cols, data)
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Complex<T>,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                Complex::one()
            } else {
                Complex::zero()
            }
        })
    }

    pub fn from_diag(diag: &[T]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| {
            if i == j {
                Complex::new(diag[i], T::zero())
            } else {
                Complex::zero()
            }
        })
    }

    pub fn from_complex_diag(diag: &[Complex<T>]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |i, j| if i == j { diag[i] } else { Complex::zero() })
    }

    /// 1x1 matrix holding `z`.
    pub fn scalar(z: Complex<T>) -> Self {
        Self {
            rows: 1,
            cols: 1,
            data: vec![z],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Side length of a square matrix.
    pub fn dim(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<Complex<T>> {
        self.data
    }

    pub fn check_finite(&self) -> Result<()> {
        match self
            .data
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            Some(k) => Err(Error::NonFinite {
                row: k / self.cols,
                col: k % self.cols,
            }),
            None => Ok(()),
        }
    }

    pub fn ensure_same_shape(&self, other: &Self) -> Result<()> {
        if self.shape() == other.shape() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left: self.shape(),
                right: other.shape(),
            })
        }
    }

    pub fn column(&self, j: usize) -> Vec<Complex<T>> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn diagonal(&self) -> Vec<Complex<T>> {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)])
            .collect()
    }

    pub fn trace(&self) -> Complex<T> {
        self.diagonal()
            .into_iter()
            .fold(Complex::zero(), |acc, z| acc + z)
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: T) -> Self {
        self.map(|z| z * s)
    }

    pub fn scale_complex(&self, s: Complex<T>) -> Self {
        self.map(|z| z * s)
    }

    pub fn map(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    /// Frobenius norm, accumulated with scaling to avoid overflow.
    pub fn fro_norm(&self) -> T {
        let mut scale = T::zero();
        let mut ssq = T::one();
        for z in &self.data {
            for x in [z.re.abs(), z.im.abs()] {
                if x > T::zero() {
                    if scale < x {
                        let r = scale / x;
                        ssq = T::one() + ssq * r * r;
                        scale = x;
                    } else {
                        let r = x / scale;
                        ssq += r * r;
                    }
                }
            }
        }
        scale * ssq.sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, z| m.max(z.norm()))
    }

    /// (X + X*)/2, exactly Hermitian in floating point.
    pub fn hermitian_part(&self) -> Self {
        debug_assert!(self.is_square());
        let half = T::lit(0.5);
        Self::from_fn(self.rows, self.cols, |i, j| {
            (self[(i, j)] + self[(j, i)].conj()) * half
        })
    }

    /// ‖X − X*‖_F.
    pub fn asymmetry(&self) -> T {
        debug_assert!(self.is_square());
        let mut acc = Self::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                acc[(i, j)] = self[(i, j)] - self[(j, i)].conj();
            }
        }
        acc.fro_norm()
    }

    /// X*X, returned as an exactly Hermitian matrix.
    pub fn gram(&self) -> Self {
        (&self.adjoint() * self).hermitian_part()
    }

    /// X·Y + Y·X.
    pub fn anticommutator(&self, other: &Self) -> Self {
        &(self * other) + &(other * self)
    }

    /// X·Y − Y·X.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Q·X·Q*.
    pub fn conjugate_by(&self, q: &Self) -> Self {
        &(q * self) * &q.adjoint()
    }

    /// C*·X·C.
    pub fn congruence(&self, c: &Self) -> Self {
        &(&c.adjoint() * self) * c
    }

    /// Block-diagonal direct sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (r1, c1) = self.shape();
        let (r2, c2) = other.shape();
        Self::from_fn(r1 + r2, c1 + c2, |i, j| {
            if i < r1 && j < c1 {
                self[(i, j)]
            } else if i >= r1 && j >= c1 {
                other[(i - r1, j - c1)]
            } else {
                Complex::zero()
            }
        })
    }

    pub fn is_finite(&self) -> bool {
        self.check_finite().is_ok()
    }
}

impl<T: Real> Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = Complex<T>;

    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.cols + j]
    }
}

impl<T: Real> IndexMut<(usize, usize)> for ComplexMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Real> Add for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn add(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in add");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }
}

impl<T: Real> Sub for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn sub(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in sub");
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| a - b)
                .collect(),
        }
    }
}

impl<T: Real> Mul for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn mul(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in mul");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                let row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let dst = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }
}

impl<T: Real> Neg for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn neg(self) -> ComplexMatrix<T> {
        self.map(|z| -z)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl<T: Real> $tr for ComplexMatrix<T> {
            type Output = ComplexMatrix<T>;

            fn $method(self, rhs: Self) -> ComplexMatrix<T> {
                (&self).$method(&rhs)
            }
        }

        impl<T: Real> $tr<&ComplexMatrix<T>> for ComplexMatrix<T> {
            type Output = ComplexMatrix<T>;

            fn $method(self, rhs: &ComplexMatrix<T>) -> ComplexMatrix<T> {
                (&self).$method(rhs)
            }
        }

        impl<T: Real> $tr<ComplexMatrix<T>> for &ComplexMatrix<T> {
            type Output = ComplexMatrix<T>;

            fn $method(self, rhs: ComplexMatrix<T>) -> ComplexMatrix<T> {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Real> Neg for ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn neg(self) -> ComplexMatrix<T> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert_eq!(
            ComplexMatrix::new(2, 2, vec![c(1.0, 0.0); 3]),
            Err(Error::LengthMismatch {
                rows: 2,
                cols: 2,
                got: 3
            })
        );
        assert_eq!(
            ComplexMatrix::new(1, 2, vec![c(1.0, 0.0), c(f64::NAN, 0.0)]),
            Err(Error::NonFinite { row: 0, col: 1 })
        );
        assert_eq!(ComplexMatrix::<f64>::new(0, 0, vec![]), Err(Error::Empty));
    }

    #[test]
    fn product_and_adjoint() {
        let a = ComplexMatrix::new(
            2,
            2,
            vec![c(1.0, 1.0), c(2.0, 0.0), c(0.0, -1.0), c(3.0, 0.0)],
        )
        .unwrap();
        let id = ComplexMatrix::identity(2);
        assert_eq!(&a * &id, a);
        let h = a.gram();
        assert_eq!(h.asymmetry(), 0.0);
        assert_eq!(h[(0, 0)], c(3.0, 0.0));
        assert_eq!(a.adjoint()[(0, 1)], c(0.0, 1.0));
    }

    #[test]
    fn frobenius_norm_matches_direct_sum() {
        let m = ComplexMatrix::<f64>::from_diag(&[3.0, 4.0]);
        assert_eq!(m.fro_norm(), 5.0);
        assert_eq!(ComplexMatrix::<f64>::identity(2).fro_norm(), 2f64.sqrt());
        assert_eq!(ComplexMatrix::<f64>::zeros(3, 3).fro_norm(), 0.0);
        let big = ComplexMatrix::<f64>::from_diag(&[1e300, 1e300]);
        assert!((big.fro_norm() / 1e300 - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn direct_sum_is_block_diagonal() {
        let a = ComplexMatrix::<f64>::from_diag(&[1.0]);
        let b = ComplexMatrix::<f64>::from_diag(&[2.0, 3.0]);
        assert_eq!(a.direct_sum(&b), ComplexMatrix::from_diag(&[1.0, 2.0, 3.0]));
    }
}
