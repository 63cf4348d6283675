//! Random instances for the suites: generic, rank-deficient and invertible
//! pairs, plus conjugated diagonal equality witnesses.

use opineq::construct::{
    make_lemma21_equality, make_thm22_equality, make_thm23_equality_in, make_thm34_pair,
    DiagonalSpec, RootScan, Witness,
};
use opineq::kernels::svd;
use opineq::sampler::{ginibre, random_unitary, rank_deficient, SeededStream};
use opineq::{Matrix, Result};

use crate::config::DimRange;

/// Size of the perturbation applied to witnesses.
pub const PERTURBATION: f64 = 1e-3;

pub fn draw_dim(stream: &mut SeededStream, dims: DimRange) -> usize {
    dims.lo + stream.index(dims.hi - dims.lo + 1)
}

pub fn generic_pair(stream: &mut SeededStream, n: usize) -> Result<(Matrix, Matrix)> {
    Ok((ginibre(n, stream)?, ginibre(n, stream)?))
}

/// At least one of A, B has rank below `n`; which one is drawn.
pub fn deficient_pair(stream: &mut SeededStream, n: usize) -> Result<(Matrix, Matrix)> {
    let low = |stream: &mut SeededStream| {
        let k = stream.index(n);
        rank_deficient(n, k, stream)
    };
    match stream.index(3) {
        0 => Ok((low(stream)?, ginibre(n, stream)?)),
        1 => Ok((ginibre(n, stream)?, low(stream)?)),
        _ => Ok((low(stream)?, low(stream)?)),
    }
}

/// Every fourth trial (index ≡ 0 mod 4) gets a rank-deficient pair.
pub fn mixed_pair(
    stream: &mut SeededStream,
    n: usize,
    index: u64,
) -> Result<(Matrix, Matrix, bool)> {
    if index.is_multiple_of(4) {
        let (a, b) = deficient_pair(stream, n)?;
        Ok((a, b, true))
    } else {
        let (a, b) = generic_pair(stream, n)?;
        Ok((a, b, false))
    }
}

/// Largest condition number accepted by [`invertible_pair`]. The negative
/// powers in the invertible-case bounds amplify roundoff by roughly
/// `κ^{2|p|+1}`, so nearly singular draws would fail on noise alone.
pub const MAX_CONDITION: f64 = 1e2;

/// Ginibre draws, each redrawn until its condition number is at most
/// [`MAX_CONDITION`].
pub fn invertible_pair(stream: &mut SeededStream, n: usize) -> Result<(Matrix, Matrix)> {
    Ok((conditioned(stream, n)?, conditioned(stream, n)?))
}

fn conditioned(stream: &mut SeededStream, n: usize) -> Result<Matrix> {
    loop {
        let g: Matrix = ginibre(n, stream)?;
        let s = svd(&g)?;
        if s.sigma_max() <= MAX_CONDITION * s.sigma_min() {
            return Ok(g);
        }
    }
}

/// Ginibre draw scaled to unit Frobenius norm.
pub fn unit_direction(stream: &mut SeededStream, n: usize) -> Result<Matrix> {
    let g: Matrix = ginibre(n, stream)?;
    let norm = g.fro_norm();
    Ok(g.scale(1.0 / norm))
}

/// Scales both operators by the same factor so that
/// `max(‖A‖_F, ‖B‖_F) = 1`. Every equality condition in the library is
/// homogeneous, so witnesses stay witnesses.
pub fn unit_scaled(w: Witness<f64>) -> Witness<f64> {
    let m = w.a.fro_norm().max(w.b.fro_norm());
    if m == 0.0 {
        return w;
    }
    Witness {
        a: w.a.scale(1.0 / m),
        b: w.b.scale(1.0 / m),
        nontrivial: w.nontrivial,
    }
}

/// Largest factor by which [`balanced_scaled`] departs from [`unit_scaled`].
pub const MAX_REBALANCE: f64 = 1e2;

/// Scales a diagonal witness for an equality of degree `2p` (`p < 0` or
/// `p > 1`) so the largest power term `(c·μ)^{2p}` matches `(c·F)²`. Here
/// `F = max(‖A‖_F, ‖B‖_F)` and `μ` is the smallest nonzero diagonal modulus
/// when `p < 0`, the largest when `p > 1`. The factor stays within
/// [`MAX_REBALANCE`] of unit scaling, which matters for `p` near 1.
pub fn balanced_scaled(w: Witness<f64>, p: f64) -> Witness<f64> {
    let moduli = (0..w.a.rows())
        .flat_map(|i| [w.a[(i, i)].norm(), w.b[(i, i)].norm()])
        .filter(|&x| x > 0.0);
    let mu = if p < 0.0 {
        moduli.fold(f64::INFINITY, f64::min)
    } else {
        moduli.fold(0.0, f64::max)
    };
    if !mu.is_finite() || mu == 0.0 {
        return w;
    }
    let f = w.a.fro_norm().max(w.b.fro_norm());
    let c = (f * f * mu.powf(-2.0 * p)).powf(1.0 / (2.0 * p - 2.0));
    let c = c.clamp(1.0 / (MAX_REBALANCE * f), MAX_REBALANCE / f);
    Witness {
        a: w.a.scale(c),
        b: w.b.scale(c),
        nontrivial: w.nontrivial,
    }
}

/// Diagonal spec: `|B|` entries log-uniform on [0.5, 2], random signs,
/// each index active with probability 3/4.
pub fn diagonal_spec(stream: &mut SeededStream, n: usize) -> DiagonalSpec<f64> {
    let b_values = (0..n).map(|_| stream.log_uniform(0.5, 2.0)).collect();
    let signs = (0..n)
        .map(|_| if stream.coin(0.5) { 1.0 } else { -1.0 })
        .collect();
    let active_set = (0..n).filter(|_| stream.coin(0.75)).collect();
    DiagonalSpec {
        b_values,
        signs,
        active_set,
        null_set: Vec::new(),
    }
}

/// A witness scaled to unit size together with its conjugate by a random
/// unitary.
pub struct WitnessPair {
    pub diagonal: Witness<f64>,
    pub rotated: Witness<f64>,
}

fn finish(stream: &mut SeededStream, w: Witness<f64>) -> Result<WitnessPair> {
    finish_with(stream, unit_scaled(w))
}

fn finish_with(stream: &mut SeededStream, diagonal: Witness<f64>) -> Result<WitnessPair> {
    let q: Matrix = random_unitary(diagonal.a.rows(), stream)?;
    let rotated = diagonal.conjugated(&q);
    Ok(WitnessPair { diagonal, rotated })
}

pub fn lemma21_witness(stream: &mut SeededStream, n: usize, t: f64) -> Result<WitnessPair> {
    let b: Matrix = ginibre(n, stream)?;
    let a = make_lemma21_equality(&b, t)?;
    finish(
        stream,
        Witness {
            a,
            b,
            nontrivial: n,
        },
    )
}

/// Every fourth witness (index ≡ 0 mod 4, n ≥ 2) zeroes one inactive
/// coordinate of both A and B.
pub fn thm22_witness(
    stream: &mut SeededStream,
    n: usize,
    p: f64,
    t: f64,
    index: u64,
) -> Result<WitnessPair> {
    let mut spec = diagonal_spec(stream, n);
    if index.is_multiple_of(4) && n >= 2 {
        let k = stream.index(n);
        spec.active_set.retain(|&i| i != k);
        spec.null_set = vec![k];
    }
    let w = make_thm22_equality(&spec, p, t)?;
    finish(stream, w)
}

/// Ratios `|a_i|/|b_i|` outside this window give `|A|^{p−1}` weights too
/// badly conditioned to certify equality at the default tolerance.
pub const THM23_RATIO_WINDOW: (f64, f64) = (1e-2, 1e2);

/// Coordinates whose only nontrivial ratio falls outside
/// [`THM23_RATIO_WINDOW`] stay trivial (`a_i = b_i`). Outside `0 ≤ p ≤ 1` the
/// pair is scaled by [`balanced_scaled`] instead of [`unit_scaled`].
pub fn thm23_witness(stream: &mut SeededStream, n: usize, p: f64, r: f64) -> Result<WitnessPair> {
    let spec = diagonal_spec(stream, n);
    let scan = RootScan {
        lo: THM23_RATIO_WINDOW.0,
        hi: THM23_RATIO_WINDOW.1,
        ..RootScan::default()
    };
    let w = make_thm23_equality_in(&spec, p, r, &scan)?;
    if !(0.0..=1.0).contains(&p) {
        finish_with(stream, balanced_scaled(w, p))
    } else {
        finish(stream, w)
    }
}

pub fn thm34_witness(stream: &mut SeededStream, n: usize, t: f64) -> Result<WitnessPair> {
    let spec = diagonal_spec(stream, n);
    let w = make_thm34_pair(&spec, t)?;
    finish(stream, w)
}

/// A + δ·max(1, ‖A‖_F)·G for a unit-norm random G, so the step is measured
/// in the same units as the check scale.
pub fn perturbed(stream: &mut SeededStream, a: &Matrix) -> Result<Matrix> {
    let g = unit_direction(stream, a.rows())?;
    Ok(a + &g.scale(PERTURBATION * a.fro_norm().max(1.0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_scaling_fixes_the_larger_norm() {
        let mut s = SeededStream::new(2, 0);
        let w = thm34_witness(&mut s, 3, 0.5).unwrap();
        let m = w.rotated.a.fro_norm().max(w.rotated.b.fro_norm());
        assert!((m - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dims_cover_the_range() {
        let mut s = SeededStream::new(3, 0);
        let dims = DimRange { lo: 2, hi: 4 };
        let seen: std::collections::BTreeSet<usize> =
            (0..200).map(|_| draw_dim(&mut s, dims)).collect();
        assert_eq!(seen.into_iter().collect::<Vec<_>>(), vec![2, 3, 4]);
    }
}
