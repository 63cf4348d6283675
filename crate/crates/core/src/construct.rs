//! Exact equality witnesses.
//!
//! For diagonal A, B every equality condition splits into one scalar
//! equation per diagonal entry. Writing `β = sign·b` for an entry of B and
//! `α = σ·x·β` for the matching entry of A (σ = ±1 relative sign, x > 0),
//! each condition becomes an equation in the ratio `x` with the trivial root
//! `x = 1, σ = +1`. Nontrivial roots are bracketed on a log grid and refined
//! by bisection. Witnesses can then be rotated by any unitary without
//! leaving the equality set.

use num_complex::Complex;

use crate::error::{invalid, Error, Result};
use crate::kernels::ComplexMatrix;
use crate::scalar::Real;

/// Diagonal description of B plus the entries where a nontrivial A is wanted.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalSpec<T> {
    /// Diagonal of |B|; strictly positive.
    pub b_values: Vec<T>,
    /// Unitary part of B entrywise, each ±1.
    pub signs: Vec<T>,
    /// Indices where a nontrivial root is requested (or, for the
    /// structured pair, the support of W*W).
    pub active_set: Vec<usize>,
    /// Indices where A and B are both zero.
    pub null_set: Vec<usize>,
}

impl<T: Real> DiagonalSpec<T> {
    pub fn new(b_values: Vec<T>, signs: Vec<T>, active_set: Vec<usize>) -> Result<Self> {
        let spec = Self {
            b_values,
            signs,
            active_set,
            null_set: Vec::new(),
        };
        spec.validate()?;
        Ok(spec)
    }

    /// All entries positive and active.
    pub fn all_active(b_values: Vec<T>) -> Self {
        let n = b_values.len();
        Self {
            signs: vec![T::one(); n],
            b_values,
            active_set: (0..n).collect(),
            null_set: Vec::new(),
        }
    }

    pub fn with_null_set(mut self, null_set: Vec<usize>) -> Result<Self> {
        self.null_set = null_set;
        self.validate()?;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.b_values.len()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        if n == 0 {
            return Err(Error::Empty);
        }
        if self.signs.len() != n {
            return Err(invalid(
                "signs",
                self.signs.len() as f64,
                "length must equal dimension",
            ));
        }
        if let Some(&b) = self
            .b_values
            .iter()
            .find(|&&b| !(b > T::zero()) || !b.is_finite())
        {
            return Err(invalid(
                "b_values",
                b.to_f64_lossy(),
                "must be positive and finite",
            ));
        }
        if let Some(&s) = self
            .signs
            .iter()
            .find(|&&s| s != T::one() && s != -T::one())
        {
            return Err(invalid("signs", s.to_f64_lossy(), "must be +1 or -1"));
        }
        for &i in self.active_set.iter().chain(&self.null_set) {
            if i >= n {
                return Err(invalid("index", i as f64, "out of range"));
            }
        }
        if self.null_set.iter().any(|i| self.active_set.contains(i)) {
            return Err(invalid("null_set", 0.0, "must be disjoint from active_set"));
        }
        Ok(())
    }

    fn b_entry(&self, i: usize) -> T {
        if self.null_set.contains(&i) {
            T::zero()
        } else {
            self.signs[i] * self.b_values[i]
        }
    }

    fn b_matrix(&self) -> ComplexMatrix<T> {
        let d: Vec<T> = (0..self.dim()).map(|i| self.b_entry(i)).collect();
        ComplexMatrix::from_diag(&d)
    }
}

/// A constructed pair and how many entries took a nontrivial root.
#[derive(Debug, Clone)]
pub struct Witness<T: Real> {
    pub a: ComplexMatrix<T>,
    pub b: ComplexMatrix<T>,
    pub nontrivial: usize,
}

impl<T: Real> Witness<T> {
    /// (Q·A·Q*, Q·B·Q*).
    pub fn conjugated(&self, q: &ComplexMatrix<T>) -> Self {
        Self {
            a: self.a.conjugate_by(q),
            b: self.b.conjugate_by(q),
            nontrivial: self.nontrivial,
        }
    }
}

/// Log-grid bracket scan followed by bisection.
#[derive(Debug, Clone, Copy)]
pub struct RootScan {
    pub lo: f64,
    pub hi: f64,
    pub grid_points: usize,
    pub rel_tol: f64,
    pub max_iter: usize,
    /// Half-width (relative) of the excluded neighbourhood of the trivial root.
    pub trivial_gap: f64,
}

impl Default for RootScan {
    fn default() -> Self {
        Self {
            lo: 1e-6,
            hi: 1e6,
            grid_points: 600,
            rel_tol: 1e-13,
            max_iter: 200,
            trivial_gap: 1e-4,
        }
    }
}

impl RootScan {
    /// All bracketed roots of `f` on `[lo, hi]`, skipping the neighbourhood
    /// of `x = 1` when `skip_unit` is set.
    pub fn roots<T: Real>(&self, f: impl Fn(T) -> T, skip_unit: bool) -> Vec<T> {
        let (llo, lhi) = (self.lo.ln(), self.hi.ln());
        let mut grid: Vec<f64> = (0..=self.grid_points)
            .map(|k| (llo + (lhi - llo) * k as f64 / self.grid_points as f64).exp())
            .collect();
        let (below, above) = (1.0 - self.trivial_gap, 1.0 + self.trivial_gap);
        if skip_unit {
            grid.retain(|&x| x < below || x > above);
            grid.push(below);
            grid.push(above);
            grid.sort_by(|x, y| x.partial_cmp(y).expect("finite grid"));
        }

        let mut out = Vec::new();
        for w in grid.windows(2) {
            let (x0, x1) = (w[0], w[1]);
            if skip_unit && x0 == below && x1 == above {
                continue;
            }
            let (a, b) = (T::lit(x0), T::lit(x1));
            let (fa, fb) = (f(a), f(b));
            if !fa.is_finite() || !fb.is_finite() {
                continue;
            }
            if fa == T::zero() {
                out.push(a);
                continue;
            }
            if (fa < T::zero()) != (fb < T::zero()) && fb != T::zero() {
                if let Ok(root) = self.bisect(&f, a, b) {
                    out.push(root);
                }
            }
        }
        out
    }

    pub fn bisect<T: Real>(&self, f: &impl Fn(T) -> T, mut lo: T, mut hi: T) -> Result<T> {
        let mut flo = f(lo);
        let fhi = f(hi);
        if (flo < T::zero()) == (fhi < T::zero()) {
            return Err(Error::RootNotFound);
        }
        let tol = T::lit(self.rel_tol);
        for _ in 0..self.max_iter {
            let mid = (lo + hi) * T::lit(0.5);
            let fm = f(mid);
            if fm == T::zero() {
                return Ok(mid);
            }
            if (fm < T::zero()) == (flo < T::zero()) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
            if hi - lo <= tol * hi {
                break;
            }
        }
        Ok((lo + hi) * T::lit(0.5))
    }
}

/// Solves one entry: returns `(σ, x)` for the nontrivial root closest to the
/// trivial one (in log distance), trying both relative signs.
fn solve_entry<T: Real>(equation: impl Fn(T, T) -> T, scan: &RootScan) -> Result<(T, T)> {
    let mut best: Option<(T, T)> = None;
    for sigma in [T::one(), -T::one()] {
        let skip_unit = sigma == T::one();
        for x in scan.roots(|x| equation(sigma, x), skip_unit) {
            let d = x.ln().abs();
            if best.is_none_or(|(_, bx)| d < bx.ln().abs()) {
                best = Some((sigma, x));
            }
        }
    }
    best.ok_or(Error::RootNotFound)
}

fn diagonal_witness<T: Real>(
    spec: &DiagonalSpec<T>,
    scan: &RootScan,
    equation: impl Fn(T, T) -> T,
) -> Witness<T> {
    let n = spec.dim();
    let mut a = vec![T::zero(); n];
    let mut nontrivial = 0;
    for (i, ai) in a.iter_mut().enumerate() {
        let beta = spec.b_entry(i);
        *ai = beta;
        if beta == T::zero() || !spec.active_set.contains(&i) {
            continue;
        }
        if let Ok((sigma, x)) = solve_entry(&equation, scan) {
            *ai = sigma * x * beta;
            nontrivial += 1;
        }
    }
    Witness {
        a: ComplexMatrix::from_diag(&a),
        b: spec.b_matrix(),
        nontrivial,
    }
}

/// A = −B/t, the equality case of `|A−B|² ≤ (1+t)|A|² + (1+1/t)|B|²`.
pub fn make_lemma21_equality<T: Real>(b: &ComplexMatrix<T>, t: T) -> Result<ComplexMatrix<T>> {
    if !(t > T::zero()) || !t.is_finite() {
        return Err(invalid("t", t.to_f64_lossy(), "must be positive"));
    }
    Ok(b.scale(-T::one() / t))
}

/// Diagonal pair with `(r−1)(A−B)|A|^{p−1} = B(|A|^{p−1} − |B|^{p−1})`;
/// in ratio form `(r−1)(σx − 1)x^{p−1} = x^{p−1} − 1`.
pub fn make_thm23_equality<T: Real>(spec: &DiagonalSpec<T>, p: T, r: T) -> Result<Witness<T>> {
    make_thm23_equality_in(spec, p, r, &RootScan::default())
}

/// [`make_thm23_equality`] with ratios searched only in `[scan.lo, scan.hi]`.
pub fn make_thm23_equality_in<T: Real>(
    spec: &DiagonalSpec<T>,
    p: T,
    r: T,
    scan: &RootScan,
) -> Result<Witness<T>> {
    spec.validate()?;
    if !(r > T::one()) || !r.is_finite() {
        return Err(invalid("r", r.to_f64_lossy(), "must exceed 1"));
    }
    if !spec.null_set.is_empty() {
        return Err(invalid(
            "null_set",
            spec.null_set.len() as f64,
            "must be empty: |A|, |B| invertible",
        ));
    }
    let one = T::one();
    Ok(diagonal_witness(spec, scan, move |sigma, x| {
        let xp = x.powf(p - one);
        (r - one) * (sigma * x - one) * xp - xp + one
    }))
}

/// Diagonal pair with `t(A−B) + V(|B|^p|A|^{1−p} − |B|) = 0`; in ratio form
/// `t(σx − 1) + x^{1−p} − 1 = 0`. Entries in `null_set` are zero in both.
pub fn make_thm22_equality<T: Real>(spec: &DiagonalSpec<T>, p: T, t: T) -> Result<Witness<T>> {
    make_thm22_equality_in(spec, p, t, &RootScan::default())
}

/// [`make_thm22_equality`] with ratios searched only in `[scan.lo, scan.hi]`.
pub fn make_thm22_equality_in<T: Real>(
    spec: &DiagonalSpec<T>,
    p: T,
    t: T,
    scan: &RootScan,
) -> Result<Witness<T>> {
    spec.validate()?;
    if !(p > T::zero() && p <= T::one()) {
        return Err(invalid("p", p.to_f64_lossy(), "must lie in (0, 1]"));
    }
    if !(t > T::zero()) || !t.is_finite() {
        return Err(invalid("t", t.to_f64_lossy(), "must be positive"));
    }
    let one = T::one();
    Ok(diagonal_witness(spec, scan, move |sigma, x| {
        t * (sigma * x - one) + x.powf(one - p) - one
    }))
}

/// `A = B(I − 2/(1−t)·W*W)` with W*W the coordinate projection on
/// `active_set`; attains equality in the invertibility-free angular bound.
pub fn make_thm34_pair<T: Real>(spec: &DiagonalSpec<T>, t: T) -> Result<Witness<T>> {
    spec.validate()?;
    if !(t > T::zero() && t < T::one()) {
        return Err(invalid("t", t.to_f64_lossy(), "must lie in (0, 1)"));
    }
    let factor = T::one() - T::lit(2.0) / (T::one() - t);
    let n = spec.dim();
    let a: Vec<Complex<T>> = (0..n)
        .map(|i| {
            let beta = spec.b_entry(i);
            let k = if spec.active_set.contains(&i) {
                factor
            } else {
                T::one()
            };
            Complex::new(beta * k, T::zero())
        })
        .collect();
    Ok(Witness {
        a: ComplexMatrix::from_complex_diag(&a),
        b: spec.b_matrix(),
        nontrivial: spec
            .active_set
            .iter()
            .filter(|&&i| spec.b_entry(i) != T::zero())
            .count(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lemma21_witness_formula() {
        let b = ComplexMatrix::<f64>::identity(2);
        assert_eq!(make_lemma21_equality(&b, 2.0).unwrap(), b.scale(-0.5));
        let z = ComplexMatrix::<f64>::zeros(2, 2);
        assert_eq!(make_lemma21_equality(&z, 2.0).unwrap(), z);
        assert!(make_lemma21_equality(&b, 0.0).is_err());
    }

    #[test]
    fn thm23_quadratic_root() {
        // b = 1, p = 2, r = 3: (r−1)x² − r x + 1 = 0 has roots 1 and 1/(r−1).
        let spec = DiagonalSpec::<f64>::all_active(vec![1.0]);
        let w = make_thm23_equality(&spec, 2.0, 3.0).unwrap();
        assert_eq!(w.nontrivial, 1);
        assert!((w.a[(0, 0)].re - 0.5).abs() < 1e-12);
    }

    #[test]
    fn thm23_p_zero_same_sign_is_trivial() {
        // p = 0, r = 2: same-sign elimination forces a = b; the flipped
        // branch root r/(2−r) is absent because r = 2.
        let spec = DiagonalSpec::<f64>::all_active(vec![1.0]);
        let w = make_thm23_equality(&spec, 0.0, 2.0).unwrap();
        assert_eq!(w.nontrivial, 0);
        assert_eq!(w.a, w.b);
        // For r < 2 the flipped branch gives a = −r/(2−r)·b.
        let w = make_thm23_equality(&spec, 0.0, 1.5).unwrap();
        assert_eq!(w.nontrivial, 1);
        assert!((w.a[(0, 0)].re + 3.0).abs() < 1e-11);
    }

    #[test]
    fn thm22_linear_case_is_trivial() {
        // p = 1, t = 3: 3(a−1) + (a−1) = 0 and 3(−a−1) + a − 1 = 0 have no positive nontrivial root.
        let spec = DiagonalSpec::<f64>::all_active(vec![1.0]);
        let w = make_thm22_equality(&spec, 1.0, 3.0).unwrap();
        assert_eq!(w.nontrivial, 0);
        assert_eq!(w.a, w.b);
    }

    #[test]
    fn thm22_null_entries_stay_zero() {
        let spec = DiagonalSpec::all_active(vec![1.0, 2.0, 1.0])
            .with_null_set(vec![])
            .unwrap();
        let spec = DiagonalSpec {
            active_set: vec![0, 2],
            ..spec
        }
        .with_null_set(vec![1])
        .unwrap();
        let w = make_thm22_equality(&spec, 0.5, 0.2).unwrap();
        assert_eq!(w.a[(1, 1)].norm(), 0.0);
        assert_eq!(w.b[(1, 1)].norm(), 0.0);
        assert_eq!(w.nontrivial, 2);
    }

    #[test]
    fn thm34_pairs() {
        let w = make_thm34_pair(&DiagonalSpec::<f64>::all_active(vec![1.0]), 0.5).unwrap();
        assert!((w.a[(0, 0)].re + 3.0).abs() < 1e-15);
        let spec = DiagonalSpec::new(vec![1.0, 5.0], vec![1.0, 1.0], vec![0]).unwrap();
        let w = make_thm34_pair(&spec, 0.5).unwrap();
        assert_eq!(w.a, ComplexMatrix::from_diag(&[-3.0, 5.0]));
        let spec = DiagonalSpec::new(vec![1.0, 5.0], vec![1.0, -1.0], vec![]).unwrap();
        let w = make_thm34_pair(&spec, 0.5).unwrap();
        assert_eq!(w.a, w.b);
        assert!(make_thm34_pair(&spec, 1.0).is_err());
    }

    #[test]
    fn spec_validation() {
        assert!(DiagonalSpec::new(vec![1.0, 0.0], vec![1.0, 1.0], vec![]).is_err());
        assert!(DiagonalSpec::new(vec![1.0], vec![0.5], vec![]).is_err());
        assert!(DiagonalSpec::new(vec![1.0], vec![1.0], vec![3]).is_err());
        let s = DiagonalSpec::all_active(vec![1.0, 1.0]);
        assert!(s.with_null_set(vec![0]).is_err());
    }

    #[test]
    fn bisection_recovers_sqrt_two() {
        let scan = RootScan::default();
        let r = scan.bisect(&|x: f64| x * x - 2.0, 1.0, 2.0).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-12);
        assert!(scan.bisect(&|x: f64| x * x + 1.0, 0.0, 1.0).is_err());
    }
}
