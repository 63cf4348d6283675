//! Seeded random instances: Ginibre matrices, rank-deficient products,
//! PSD matrices, partial isometries and parameter draws.
//!
//! A [`SeededStream`] is a ChaCha8 generator keyed by `master_seed` with
//! `stream_id` selecting an independent stream, so trial `i` of a run only
//! depends on `(seed, i)`.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};
use crate::kernels::{svd, ComplexMatrix};
use crate::scalar::Real;

pub const GENERATOR_NAME: &str = "chacha8";

#[derive(Debug, Clone)]
pub struct SeededStream {
    master_seed: u64,
    stream_id: u64,
    rng: ChaCha8Rng,
    spare_normal: Option<f64>,
}

impl SeededStream {
    pub fn new(master_seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
        rng.set_stream(stream_id);
        Self {
            master_seed,
            stream_id,
            rng,
            spare_normal: None,
        }
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// Uniform on [0, 1).
    pub fn uniform(&mut self) -> f64 {
        self.rng.gen::<f64>()
    }

    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Log-uniform on [lo, hi].
    pub fn log_uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.uniform_in(lo.ln(), hi.ln()).exp()
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn coin(&mut self, p_true: f64) -> bool {
        self.uniform() < p_true
    }

    /// Standard normal via Box-Muller; the second variate is cached.
    pub fn normal(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        let u1 = loop {
            let u = self.uniform();
            if u > 0.0 {
                break u;
            }
        };
        let u2 = self.uniform();
        let radius = (-2.0 * u1.ln()).sqrt();
        let angle = std::f64::consts::TAU * u2;
        self.spare_normal = Some(radius * angle.sin());
        radius * angle.cos()
    }

    /// Real and imaginary parts independent standard normal (E|z|² = 2).
    pub fn complex_normal<T: Real>(&mut self) -> Complex<T> {
        let re = self.normal();
        let im = self.normal();
        Complex::new(T::lit(re), T::lit(im))
    }
}

pub fn ginibre<T: Real>(n: usize, stream: &mut SeededStream) -> Result<ComplexMatrix<T>> {
    rectangular_ginibre(n, n, stream)
}

fn rectangular_ginibre<T: Real>(
    rows: usize,
    cols: usize,
    stream: &mut SeededStream,
) -> Result<ComplexMatrix<T>> {
    if rows == 0 || cols == 0 {
        return Err(Error::Empty);
    }
    Ok(ComplexMatrix::from_fn(rows, cols, |_, _| {
        stream.complex_normal()
    }))
}

/// Product of n×k and k×n Ginibre factors; rank k almost surely.
pub fn rank_deficient<T: Real>(
    n: usize,
    k: usize,
    stream: &mut SeededStream,
) -> Result<ComplexMatrix<T>> {
    if n == 0 {
        return Err(Error::Empty);
    }
    if k >= n {
        return Err(invalid("rank", k as f64, "must be below dimension"));
    }
    if k == 0 {
        return Ok(ComplexMatrix::zeros(n, n));
    }
    let left = rectangular_ginibre(n, k, stream)?;
    let right = rectangular_ginibre(k, n, stream)?;
    Ok(&left * &right)
}

/// G*G for a Ginibre G.
pub fn random_psd<T: Real>(n: usize, stream: &mut SeededStream) -> Result<ComplexMatrix<T>> {
    Ok(ginibre::<T>(n, stream)?.gram())
}

/// Σ_{i<rank} u_i v_i* from the SVD of a Ginibre draw.
pub fn random_partial_isometry<T: Real>(
    n: usize,
    rank: usize,
    stream: &mut SeededStream,
) -> Result<ComplexMatrix<T>> {
    if rank > n {
        return Err(invalid("rank", rank as f64, "must not exceed dimension"));
    }
    let g = ginibre::<T>(n, stream)?;
    let s = svd(&g)?;
    let mut w = ComplexMatrix::zeros(n, n);
    for k in 0..rank {
        for i in 0..n {
            let u = s.left[(i, k)];
            for j in 0..n {
                w[(i, j)] += u * s.right[(j, k)].conj();
            }
        }
    }
    Ok(w)
}

pub fn random_unitary<T: Real>(n: usize, stream: &mut SeededStream) -> Result<ComplexMatrix<T>> {
    random_partial_isometry(n, n, stream)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamKind {
    /// Log-uniform on [0.1, 10].
    T,
    /// Uniform on (0, 1].
    PT0,
    /// Uniform on [−2, 3].
    PT1,
    /// 1 + log-uniform on [0.1, 10].
    R,
}

impl std::str::FromStr for ParamKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "t" => Ok(ParamKind::T),
            "p_t0" => Ok(ParamKind::PT0),
            "p_t1" => Ok(ParamKind::PT1),
            "r" => Ok(ParamKind::R),
            _ => Err(invalid(
                "kind",
                f64::NAN,
                "expected one of t, p_t0, p_t1, r",
            )),
        }
    }
}

pub fn draw_params<T: Real>(stream: &mut SeededStream, kind: ParamKind) -> T {
    let x = match kind {
        ParamKind::T => stream.log_uniform(0.1, 10.0),
        // 1 − U with U ∈ [0, 1) lands in (0, 1].
        ParamKind::PT0 => 1.0 - stream.uniform(),
        ParamKind::PT1 => stream.uniform_in(-2.0, 3.0),
        ParamKind::R => 1.0 + stream.log_uniform(0.1, 10.0),
    };
    T::lit(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::polar;

    #[test]
    fn deterministic_per_seed_and_stream() {
        let a: ComplexMatrix<f64> = ginibre(4, &mut SeededStream::new(7, 3)).unwrap();
        let b: ComplexMatrix<f64> = ginibre(4, &mut SeededStream::new(7, 3)).unwrap();
        let c: ComplexMatrix<f64> = ginibre(4, &mut SeededStream::new(7, 4)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        let one: ComplexMatrix<f64> = ginibre(1, &mut SeededStream::new(1, 0)).unwrap();
        assert_eq!(one.shape(), (1, 1));
        assert!(ginibre::<f64>(0, &mut SeededStream::new(1, 0)).is_err());
    }

    #[test]
    fn complex_normal_second_moment() {
        let mut s = SeededStream::new(11, 0);
        let n = 10_000;
        let mean: f64 = (0..n)
            .map(|_| s.complex_normal::<f64>().norm_sqr())
            .sum::<f64>()
            / n as f64;
        assert!((1.9..=2.1).contains(&mean), "mean = {mean}");
    }

    #[test]
    fn rank_deficient_rank() {
        let mut s = SeededStream::new(5, 0);
        let z: ComplexMatrix<f64> = rank_deficient(3, 0, &mut s).unwrap();
        assert_eq!(z.fro_norm(), 0.0);
        let r: ComplexMatrix<f64> = rank_deficient(3, 1, &mut s).unwrap();
        assert_eq!(svd(&r).unwrap().rank(16.0), 1);
        let r: ComplexMatrix<f64> = rank_deficient(5, 3, &mut s).unwrap();
        assert_eq!(polar(&r).unwrap().support_rank, 3);
        assert!(rank_deficient::<f64>(3, 3, &mut s).is_err());
    }

    #[test]
    fn psd_and_partial_isometries() {
        let mut s = SeededStream::new(9, 2);
        let p: ComplexMatrix<f64> = random_psd(4, &mut s).unwrap();
        assert!(crate::order::min_eig(&p).unwrap() >= -1e-12);
        let u: ComplexMatrix<f64> = random_partial_isometry(4, 4, &mut s).unwrap();
        assert!((&u.gram() - &ComplexMatrix::identity(4)).fro_norm() < 1e-13);
        let w: ComplexMatrix<f64> = random_partial_isometry(4, 2, &mut s).unwrap();
        assert!((w.gram().trace().re - 2.0).abs() < 1e-10);
        let proj = w.gram();
        assert!((&(&proj * &proj) - &proj).fro_norm() < 1e-13);
        assert!(random_partial_isometry::<f64>(2, 3, &mut s).is_err());
    }

    #[test]
    fn parameter_ranges() {
        let mut s = SeededStream::new(3, 1);
        for _ in 0..10_000 {
            let t: f64 = draw_params(&mut s, ParamKind::T);
            assert!((0.1..=10.0).contains(&t));
            let r: f64 = draw_params(&mut s, ParamKind::R);
            assert!(r > 1.0);
            let p0: f64 = draw_params(&mut s, ParamKind::PT0);
            assert!(p0 > 0.0 && p0 <= 1.0);
            let p1: f64 = draw_params(&mut s, ParamKind::PT1);
            assert!((-2.0..=3.0).contains(&p1));
        }
        assert!("q".parse::<ParamKind>().is_err());
        assert_eq!("p_t1".parse::<ParamKind>().unwrap(), ParamKind::PT1);
        let x: f64 = draw_params(&mut SeededStream::new(3, 9), ParamKind::T);
        let y: f64 = draw_params(&mut SeededStream::new(3, 9), ParamKind::T);
        assert_eq!(x, y);
    }
}
