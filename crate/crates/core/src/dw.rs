//! Operator angular-distance bounds built on the generalized parallelogram law
//!
//! ```text
//! |A−B|² + (1/t)|tA+B|² = (1+t)|A|² + (1+1/t)|B|²,   t ≠ 0
//! ```
//!
//! Each `*_check` evaluates both sides of an operator inequality, the Löwner
//! gap between them, and the residual of the stated equality condition.

use crate::error::{invalid, Error, Result};
use crate::kernels::{frac_power_with, polar_with, ComplexMatrix, PolarForm};
use crate::order::{check_scale, is_equal, loewner_leq, OrderVerdict, TolerancePolicy};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Lemma21,
    Thm22,
    Thm23,
    Cor24,
    Thm31,
    Thm32,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Lemma21 => "lemma21",
            Variant::Thm22 => "thm22",
            Variant::Thm23 => "thm23",
            Variant::Cor24 => "cor24",
            Variant::Thm31 => "thm31",
            Variant::Thm32 => "thm32",
        }
    }
}

/// Exponent and weight parameters. `r = t + 1` and `s = 1 + 1/t` are
/// conjugate: `1/r + 1/s = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DwParams<T> {
    pub p: T,
    pub t: T,
    pub r: T,
    pub s: T,
}

impl<T: Real> DwParams<T> {
    pub fn from_t(p: T, t: T) -> Result<Self> {
        if !(t > T::zero()) || !t.is_finite() {
            return Err(invalid("t", t.to_f64_lossy(), "must be positive"));
        }
        if !p.is_finite() {
            return Err(invalid("p", p.to_f64_lossy(), "must be finite"));
        }
        Ok(Self {
            p,
            t,
            r: t + T::one(),
            s: T::one() + T::one() / t,
        })
    }

    pub fn from_r(p: T, r: T) -> Result<Self> {
        if !(r > T::one()) || !r.is_finite() {
            return Err(invalid("r", r.to_f64_lossy(), "must exceed 1"));
        }
        let mut out = Self::from_t(p, r - T::one())?;
        out.r = r;
        out.s = r / (r - T::one());
        Ok(out)
    }

    /// |1/r + 1/s − 1|.
    pub fn conjugacy_defect(&self) -> T {
        (T::one() / self.r + T::one() / self.s - T::one()).abs()
    }
}

#[derive(Debug, Clone)]
pub struct CheckReport<T: Real> {
    pub variant: Variant,
    pub lhs: ComplexMatrix<T>,
    pub rhs: ComplexMatrix<T>,
    /// Smallest eigenvalue of `rhs − lhs`.
    pub gap_min_eig: T,
    pub holds: bool,
    pub equality_residual: T,
    pub equality_predicted: bool,
    pub equality_attained: bool,
    pub scale: T,
}

impl<T: Real> CheckReport<T> {
    pub(crate) fn assemble(
        variant: Variant,
        lhs: ComplexMatrix<T>,
        rhs: ComplexMatrix<T>,
        equality_residual: T,
        scale: T,
        pol: &TolerancePolicy<T>,
    ) -> Result<Self> {
        let lhs = lhs.hermitian_part();
        let rhs = rhs.hermitian_part();
        let OrderVerdict {
            holds, gap_min_eig, ..
        } = loewner_leq(&lhs, &rhs, pol, scale)?;
        let equality_attained = is_equal(&rhs, &lhs, pol, scale)?;
        Ok(Self {
            variant,
            lhs,
            rhs,
            gap_min_eig,
            holds,
            equality_residual,
            equality_predicted: equality_residual <= pol.eq_bound(scale),
            equality_attained,
            scale,
        })
    }

    /// ‖rhs − lhs‖_F.
    pub fn attainment_residual(&self) -> T {
        (&self.rhs - &self.lhs).fro_norm()
    }

    /// The "if" direction of the equality characterization.
    pub fn equality_sound(&self) -> bool {
        !self.equality_predicted || self.equality_attained
    }
}

/// Alternative right-hand side using `||A|^{1−p}|B|^p − |B||²` as middle
/// term, reported for comparison only.
#[derive(Debug, Clone)]
pub struct CompanionBound<T: Real> {
    pub rhs: ComplexMatrix<T>,
    pub gap_min_eig: T,
    pub holds: bool,
}

/// Conjugate-exponent residuals of the four equivalent equality conditions.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceReport<T> {
    pub residuals: [T; 4],
    pub all_hold: bool,
    pub none_hold: bool,
    pub scale: T,
}

#[derive(Debug, Clone)]
pub struct Prop26Report<T> {
    pub hypothesis_residual: T,
    /// `(r−1)|A−B|² = (1/r)K + (1/s)|A|² − |B|²` with `K = |A|^{1−p}|B|^{2p}|A|^{1−p}`.
    pub identity_residual: T,
    pub identity_holds: bool,
    /// `|B| ≤ ((1/r)K + (1/s)|A|²)^{1/2}`.
    pub order: OrderVerdict<T>,
    /// `r|A−B| = s||B|^p|A|^{1−p} − |B||`.
    pub operator_residual: T,
    pub operator_holds: bool,
    /// `|A| = |B| + (r/s)|A−B|`, evaluated only for p = 0.
    pub zero_p_residual: Option<T>,
    pub zero_p_holds: Option<bool>,
    pub scale: T,
}

impl<T: Real> Prop26Report<T> {
    pub fn all_hold(&self) -> bool {
        self.identity_holds
            && self.order.holds
            && self.operator_holds
            && self.zero_p_holds.unwrap_or(true)
    }
}

/// Polar data for a pair of same-sized square operators.
pub(crate) struct Pair<'a, T: Real> {
    pub a: &'a ComplexMatrix<T>,
    pub b: &'a ComplexMatrix<T>,
    pub pa: PolarForm<T>,
    pub pb: PolarForm<T>,
    pub n: usize,
    pub scale: T,
}

impl<'a, T: Real> Pair<'a, T> {
    pub fn new(
        a: &'a ComplexMatrix<T>,
        b: &'a ComplexMatrix<T>,
        pol: &TolerancePolicy<T>,
    ) -> Result<Self> {
        let n = a.dim()?;
        a.ensure_same_shape(b)?;
        a.check_finite()?;
        b.check_finite()?;
        Ok(Self {
            a,
            b,
            pa: polar_with(a, pol.rank_cutoff())?,
            pb: polar_with(b, pol.rank_cutoff())?,
            n,
            scale: check_scale(&[a, b]),
        })
    }

    pub fn abs_a(&self) -> &ComplexMatrix<T> {
        &self.pa.positive
    }

    pub fn abs_b(&self) -> &ComplexMatrix<T> {
        &self.pb.positive
    }

    pub fn diff(&self) -> ComplexMatrix<T> {
        self.a - self.b
    }

    /// Both |A| and |B| invertible at the policy's rank cutoff.
    pub fn require_invertible(&self, pol: &TolerancePolicy<T>) -> Result<()> {
        for pf in [&self.pa, &self.pb] {
            if pf.support_rank < self.n {
                let e = crate::kernels::hermitian_eig(&pf.positive)?;
                let cutoff = T::from_count(self.n)
                    * e.spectral_radius()
                    * T::epsilon()
                    * pol.rank_cutoff_factor;
                return Err(Error::SingularPower {
                    alpha: -1.0,
                    min_eig: e.min().to_f64_lossy(),
                    cutoff: cutoff.to_f64_lossy(),
                });
            }
        }
        Ok(())
    }
}

pub(crate) fn power<T: Real>(
    p: &ComplexMatrix<T>,
    alpha: T,
    pol: &TolerancePolicy<T>,
) -> Result<ComplexMatrix<T>> {
    frac_power_with(p, alpha, &pol.spectral())
}

fn require_positive_t<T: Real>(t: T) -> Result<()> {
    if t > T::zero() && t.is_finite() {
        Ok(())
    } else {
        Err(invalid("t", t.to_f64_lossy(), "must be positive"))
    }
}

/// ‖LHS − RHS‖_F of the generalized parallelogram law; pure roundoff.
pub fn gpl_residual<T: Real>(a: &ComplexMatrix<T>, b: &ComplexMatrix<T>, t: T) -> Result<T> {
    a.dim()?;
    a.ensure_same_shape(b)?;
    if t == T::zero() || !t.is_finite() {
        return Err(invalid("t", t.to_f64_lossy(), "must be nonzero"));
    }
    let lhs = &(a - b).gram() + &(&a.scale(t) + b).gram().scale(T::one() / t);
    let rhs = &a.gram().scale(T::one() + t) + &b.gram().scale(T::one() + T::one() / t);
    Ok((&lhs - &rhs).fro_norm())
}

/// `|A−B|² ≤ (1+t)|A|² + (1+1/t)|B|²`, equality iff `tA + B = 0`.
pub fn lemma21_check<T: Real>(
    a: &ComplexMatrix<T>,
    b: &ComplexMatrix<T>,
    t: T,
    pol: &TolerancePolicy<T>,
) -> Result<CheckReport<T>> {
    require_positive_t(t)?;
    a.dim()?;
    a.ensure_same_shape(b)?;
    let scale = check_scale(&[a, b]);
    let lhs = (a - b).gram();
    let rhs = &a.gram().scale(T::one() + t) + &b.gram().scale(T::one() + T::one() / t);
    let residual = (&a.scale(t) + b).fro_norm();
    CheckReport::assemble(Variant::Lemma21, lhs, rhs, residual, scale, pol)
}

fn require_p_t0<T: Real>(p: T) -> Result<()> {
    if p > T::zero() && p <= T::one() {
        Ok(())
    } else {
        Err(invalid("p", p.to_f64_lossy(), "must lie in (0, 1]"))
    }
}

/// `|(U|A|^p − V|B|^p)|A|^{1−p}|² ≤ (1+t)|A−B|² + (1+1/t)||B|^p|A|^{1−p} − |B||²`
/// for 0 < p ≤ 1 without invertibility; equality iff
/// `t(A−B) + V(|B|^p|A|^{1−p} − |B|) = 0`.
pub fn thm22_check<T: Real>(
    a: &ComplexMatrix<T>,
    b: &ComplexMatrix<T>,
    p: T,
    t: T,
    pol: &TolerancePolicy<T>,
) -> Result<CheckReport<T>> {
    require_p_t0(p)?;
    require_positive_t(t)?;
    let pair = Pair::new(a, b, pol)?;
    let a_p = power(pair.abs_a(), p, pol)?;
    let a_q = power(pair.abs_a(), T::one() - p, pol)?;
    let b_p = power(pair.abs_b(), p, pol)?;
    let u = &pair.pa.isometry;
    let v = &pair.pb.isometry;

    let lhs = (&(&(u * &a_p) - &(v * &b_p)) * &a_q).gram();
    let middle = &(&b_p * &a_q) - pair.abs_b();
    let rhs =
        &pair.diff().gram().scale(T::one() + t) + &middle.gram().scale(T::one() + T::one() / t);
    let residual = (&pair.diff().scale(t) + &(v * &middle)).fro_norm();
    CheckReport::assemble(Variant::Thm22, lhs, rhs, residual, pair.scale, pol)
}

/// Invertibility-free p-angular bound with the adjoint middle term `||A|^{1−p}|B|^p − |B||²`.
pub fn thm22_abstract_form<T: Real>(
    a: &ComplexMatrix<T>,
    b: &ComplexMatrix<T>,
    p: T,
    t: T,
    pol: &TolerancePolicy<T>,
) -> Result<CompanionBound<T>> {
    let base = thm22_check(a, b, p, t, pol)?;
    let pair = Pair::new(a, b, pol)?;
    let a_q = power(pair.abs_a(), T::one() - p, pol)?;
    let b_p = power(pair.abs_b(), p, pol)?;
    let middle = &(&a_q * &b_p) - pair.abs_b();
    let rhs = (&pair.diff().gram().scale(T::one() + t)
        + &middle.gram().scale(T::one() + T::one() / t))
        .hermitian_part();
    companion(&base.lhs, rhs, pair.scale, pol)
}

fn companion<T: Real>(
    lhs: &ComplexMatrix<T>,
    rhs: ComplexMatrix<T>,
    scale: T,
    pol: &TolerancePolicy<T>,
) -> Result<CompanionBound<T>> {
    let v = loewner_leq(lhs, &rhs, pol, scale)?;
    Ok(CompanionBound {
        rhs,
        gap_min_eig: v.gap_min_eig,
        holds: v.holds,
    })
}

struct Thm23Parts<T: Real> {
    lhs: ComplexMatrix<T>,
    rhs: ComplexMatrix<T>,
    residual: T,
    scale: T,
}

fn thm23_parts<T: Real>(
    a: &ComplexMatrix<T>,
    b: &ComplexMatrix<T>,
    params: &DwParams<T>,
    pol: &TolerancePolicy<T>,
    adjoint_middle: bool,
) -> Result<Thm23Parts<T>> {
    let pair = Pair::new(a, b, pol)?;
    pair.require_invertible(pol)?;
    let DwParams { p, r, s, .. } = *params;
    let x = power(pair.abs_a(), p - T::one(), pol)?;
    let y = power(pair.abs_b(), p - T::one(), pol)?;
    let a_q = power(pair.abs_a(), T::one() - p, pol)?;
    let b_p = power(pair.abs_b(), p, pol)?;

    let lhs = (&(a * &x) - &(b * &y)).gram();
    let middle = if adjoint_middle {
        &(&a_q * &b_p) - pair.abs_b()
    } else {
        &(&b_p * &a_q) - pair.abs_b()
    };
    let inner = &pair.diff().gram().scale(r) + &middle.gram().scale(s);
    let rhs = inner.congruence(&x).hermitian_part();
    let residual = (&(&pair.diff() * &x).scale(r - T::one()) - &(b * &(&x - &y))).fro_norm();
    Ok(Thm23Parts {
        lhs,
        rhs,
        residual,
        scale: pair.scale,
    })
}

/// Operator p-angular distance bound for invertible |A|, |B| and any real p:
/// `|A|A|^{p−1} − B|B|^{p−1}|² ≤ |A|^{p−1}(r|A−B|² + s||B|^p|A|^{1−p} − |B||²)|A|^{p−1}`,
/// equality iff `(r−1)(A−B)|A|^{p−1} = B(|A|^{p−1} − |B|^{p−1})`.
pub fn thm23_check<T: Real>(
    a: &ComplexMatrix<T>,
    b: &ComplexMatrix<T>,
    p: T,
    r: T,
    pol: &TolerancePolicy<T>,
) -> Result<CheckReport<T>> {
    let params = DwParams::from_r(p, r)?;
    let parts = thm23_parts(a, b, &params, pol, false)?;
    CheckReport::assemble(
        Variant::Thm23,
        parts.lhs,
        parts.rhs,
        parts.residual,
        parts.scale,
        pol,
    )
}

/// Invertible-case p-angular bound with the adjoint middle term `||A|^{1−p}|B|^p − |B||²`.
pub fn thm23_abstract_form<T: Real>(
    a: &ComplexMatrix<T>,
    b: &ComplexMatrix<T>,
    p: T,
    r: T,
    pol: &TolerancePolicy<T>,
) -> Result<CompanionBound<T>> {
    let params = DwParams::from_r(p, r)?;
    let parts = thm23_parts(a, b, &params, pol, true)?;
    companion(&parts.lhs, parts.rhs, parts.scale, pol)
}

/// The p = 0 case written with `(|A| − |B|)²`:
/// `|A|A|^{-1} − B|B|^{-1}|² ≤ |A|^{-1}(r|A−B|² + s(|A|−|B|)²)|A|^{-1}`.
pub fn cor24_check<T: Real>(
    a: &ComplexMatrix<T>,
    b: &ComplexMatrix<T>,
    r: T,
    pol: &TolerancePolicy<T>,
) -> Result<CheckReport<T>> {
    let params = DwParams::from_r(T::zero(), r)?;
    let pair = Pair::new(a, b, pol)?;
    pair.require_invertible(pol)?;
    let x = power(pair.abs_a(), -T::one(), pol)?;
    let y = power(pair.abs_b(), -T::one(), pol)?;
    let lhs = (&(a * &x) - &(b * &y)).gram();
    let abs_diff = pair.abs_a() - pair.abs_b();
    let inner = &pair.diff().gram().scale(params.r) + &abs_diff.gram().scale(params.s);
    let rhs = inner.congruence(&x);
    let residual = (&(&pair.diff() * &x).scale(params.r - T::one()) - &(b * &(&x - &y))).fro_norm();
    CheckReport::assemble(Variant::Cor24, lhs, rhs, residual, pair.scale, pol)
}

/// max(‖Δlhs‖, ‖Δrhs‖) between `cor24_check` and `thm23_check` at p = 0.
pub fn cor24_consistency<T: Real>(
    a: &ComplexMatrix<T>,
    b: &ComplexMatrix<T>,
    r: T,
    pol: &TolerancePolicy<T>,
) -> Result<T> {
    let c = cor24_check(a, b, r, pol)?;
    let g = thm23_check(a, b, T::zero(), r, pol)?;
    Ok((&c.lhs - &g.lhs)
        .fro_norm()
        .max((&c.rhs - &g.rhs).fro_norm()))
}

/// Residuals of the four mutually equivalent forms of the invertible-case
/// equality condition.
pub fn prop25_predicates<T: Real>(
    a: &ComplexMatrix<T>,
    b: &ComplexMatrix<T>,
    p: T,
    r: T,
    pol: &TolerancePolicy<T>,
) -> Result<EquivalenceReport<T>> {
    let DwParams { r, s, .. } = DwParams::from_r(p, r)?;
    let pair = Pair::new(a, b, pol)?;
    if p < T::one() {
        pair.require_invertible(pol)?;
    }
    let x = power(pair.abs_a(), p - T::one(), pol)?;
    let y = power(pair.abs_b(), p - T::one(), pol)?;
    let diff_x = &pair.diff() * &x;
    let b_xy = b * &(&x - &y);
    let one = T::one();

    let residuals = [
        (&diff_x.scale(r - one) - &b_xy).fro_norm(),
        (&b_xy.scale(s - one) - &diff_x).fro_norm(),
        (&diff_x.scale(r) - &b_xy.scale(s)).fro_norm(),
        (&(&(a * &x) - &(b * &y)) - &b_xy.scale(s)).fro_norm(),
    ];
    let bound = pol.eq_bound(pair.scale);
    Ok(EquivalenceReport {
        all_hold: residuals.iter().all(|&x| x <= bound),
        none_hold: residuals.iter().all(|&x| x > bound),
        residuals,
        scale: pair.scale,
    })
}

/// Necessary consequences of the invertible-case equality condition. Fails with
/// `HypothesisNotSatisfied` when that condition does not hold.
pub fn prop26_consequences<T: Real>(
    a: &ComplexMatrix<T>,
    b: &ComplexMatrix<T>,
    p: T,
    r: T,
    pol: &TolerancePolicy<T>,
) -> Result<Prop26Report<T>> {
    let DwParams { r, s, .. } = DwParams::from_r(p, r)?;
    let pair = Pair::new(a, b, pol)?;
    pair.require_invertible(pol)?;
    let scale = pair.scale;
    let one = T::one();

    let x = power(pair.abs_a(), p - one, pol)?;
    let y = power(pair.abs_b(), p - one, pol)?;
    let diff = pair.diff();
    let hypothesis_residual = (&(&diff * &x).scale(r - one) - &(b * &(&x - &y))).fro_norm();
    if hypothesis_residual > pol.eq_bound(scale) {
        return Err(Error::HypothesisNotSatisfied {
            residual: hypothesis_residual.to_f64_lossy(),
            bound: pol.eq_bound(scale).to_f64_lossy(),
        });
    }

    let a_q = power(pair.abs_a(), one - p, pol)?;
    let b_2p = power(pair.abs_b(), p + p, pol)?;
    let k = b_2p.congruence(&a_q).hermitian_part();
    let bound_sq = &k.scale(one / r) + &pair.abs_a().gram().scale(one / s);

    let identity = &diff.gram().scale(r - one) - &(&bound_sq - &pair.abs_b().gram());
    let identity_residual = identity.fro_norm();

    let root = power(&bound_sq, T::lit(0.5), pol)?;
    let order = loewner_leq(pair.abs_b(), &root, pol, scale)?;

    let b_p = power(pair.abs_b(), p, pol)?;
    let middle = &(&b_p * &a_q) - pair.abs_b();
    let abs_diff = polar_with(&diff, pol.rank_cutoff())?.positive;
    let abs_middle = polar_with(&middle, pol.rank_cutoff())?.positive;
    let operator_residual = (&abs_diff.scale(r) - &abs_middle.scale(s)).fro_norm();

    let zero_p_residual = (p == T::zero())
        .then(|| (&(pair.abs_a() - pair.abs_b()) - &abs_diff.scale(r / s)).fro_norm());

    Ok(Prop26Report {
        hypothesis_residual,
        identity_residual,
        identity_holds: identity_residual <= pol.identity_bound(scale),
        order,
        operator_residual,
        operator_holds: operator_residual <= pol.eq_bound(scale),
        zero_p_holds: zero_p_residual.map(|x| x <= pol.eq_bound(scale)),
        zero_p_residual,
        scale,
    })
}
