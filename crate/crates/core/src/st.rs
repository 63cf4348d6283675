//! Invertibility-free angular bound `|(U−V)|A||² ≤ (t+1)|A−B|² + (1+1/t)(|A|−|B|)²`
//! and the characterization of its equality case.

use crate::dw::{CheckReport, Pair, Variant};
use crate::error::{invalid, Error, Result};
use crate::kernels::{polar_with, ComplexMatrix};
use crate::order::{loewner_leq, OrderVerdict, TolerancePolicy};
use crate::scalar::Real;

fn require_positive_t<T: Real>(t: T) -> Result<()> {
    if t > T::zero() && t.is_finite() {
        Ok(())
    } else {
        Err(invalid("t", t.to_f64_lossy(), "must be positive"))
    }
}

/// ‖t(A−B) − V(|B|−|A|)‖_F.
fn angular_condition<T: Real>(pair: &Pair<'_, T>, t: T) -> T {
    let rhs = &pair.pb.isometry * &(pair.abs_b() - pair.abs_a());
    (&pair.diff().scale(t) - &rhs).fro_norm()
}

/// ‖V*V − U*U‖_F.
fn support_mismatch<T: Real>(pair: &Pair<'_, T>) -> T {
    (&pair.pb.support_projection() - &pair.pa.support_projection()).fro_norm()
}

pub fn thm32_check<T: Real>(
    a: &ComplexMatrix<T>,
    b: &ComplexMatrix<T>,
    t: T,
    pol: &TolerancePolicy<T>,
) -> Result<CheckReport<T>> {
    require_positive_t(t)?;
    let pair = Pair::new(a, b, pol)?;
    thm32_from_pair(&pair, t, pol, Variant::Thm32)
}

fn thm32_from_pair<T: Real>(
    pair: &Pair<'_, T>,
    t: T,
    pol: &TolerancePolicy<T>,
    variant: Variant,
) -> Result<CheckReport<T>> {
    let u_minus_v = &pair.pa.isometry - &pair.pb.isometry;
    let lhs = (&u_minus_v * pair.abs_a()).gram();
    let rhs = &pair.diff().gram().scale(t + T::one())
        + &(pair.abs_a() - pair.abs_b())
            .gram()
            .scale(T::one() + T::one() / t);
    let residual = angular_condition(pair, t).max(support_mismatch(pair));
    CheckReport::assemble(variant, lhs, rhs, residual, pair.scale, pol)
}

/// Conjugate-exponent form; identical to [`thm32_check`] at `t = conj_p − 1`.
pub fn thm31_check<T: Real>(
    a: &ComplexMatrix<T>,
    b: &ComplexMatrix<T>,
    conj_p: T,
    pol: &TolerancePolicy<T>,
) -> Result<CheckReport<T>> {
    if !(conj_p > T::one()) || !conj_p.is_finite() {
        return Err(invalid("conj_p", conj_p.to_f64_lossy(), "must exceed 1"));
    }
    let pair = Pair::new(a, b, pol)?;
    thm32_from_pair(&pair, conj_p - T::one(), pol, Variant::Thm31)
}

#[derive(Debug, Clone)]
pub struct Lemma33Report<T> {
    pub hypothesis_residual: T,
    /// t|A−B|² ≤ |A|² − |B|².
    pub weighted_gap: OrderVerdict<T>,
    /// |B| ≤ |A|.
    pub abs_order: OrderVerdict<T>,
    /// V*V ≤ U*U.
    pub support_order: OrderVerdict<T>,
    /// Present when U*U = V*V: residual of t|A−B|² = |A|² − |B|².
    pub identity_residual: Option<T>,
    pub identity_holds: Option<bool>,
}

impl<T> Lemma33Report<T> {
    pub fn all_hold(&self) -> bool {
        self.weighted_gap.holds
            && self.abs_order.holds
            && self.support_order.holds
            && self.identity_holds.unwrap_or(true)
    }
}

/// Consequences of `t(A−B) + V(|A|−|B|) = 0`.
pub fn lemma33_consequences<T: Real>(
    a: &ComplexMatrix<T>,
    b: &ComplexMatrix<T>,
    t: T,
    pol: &TolerancePolicy<T>,
) -> Result<Lemma33Report<T>> {
    require_positive_t(t)?;
    let pair = Pair::new(a, b, pol)?;
    let scale = pair.scale;
    let hypothesis_residual = angular_condition(&pair, t);
    if hypothesis_residual > pol.eq_bound(scale) {
        return Err(Error::HypothesisNotSatisfied {
            residual: hypothesis_residual.to_f64_lossy(),
            bound: pol.eq_bound(scale).to_f64_lossy(),
        });
    }
    let weighted = pair.diff().gram().scale(t);
    let sq_gap = &pair.abs_a().gram() - &pair.abs_b().gram();
    let weighted_gap = loewner_leq(&weighted, &sq_gap, pol, scale)?;
    let abs_order = loewner_leq(pair.abs_b(), pair.abs_a(), pol, scale)?;
    let support_order = loewner_leq(
        &pair.pb.support_projection(),
        &pair.pa.support_projection(),
        pol,
        scale,
    )?;
    let (identity_residual, identity_holds) = if support_mismatch(&pair) <= pol.eq_bound(scale) {
        let res = (&weighted - &sq_gap).fro_norm();
        (Some(res), Some(res <= pol.identity_bound(scale)))
    } else {
        (None, None)
    };
    Ok(Lemma33Report {
        hypothesis_residual,
        weighted_gap,
        abs_order,
        support_order,
        identity_residual,
        identity_holds,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Lemma35Report<T> {
    /// ‖t(A−B) − V(|B|−|A|)‖.
    pub forward_residual: T,
    /// (‖|A| − |B| − t|A−B|‖, ‖A−B + V|A−B|‖).
    pub backward_residuals: (T, T),
    pub forward_holds: bool,
    pub backward_holds: bool,
}

impl<T> Lemma35Report<T> {
    /// Both sides of the equivalence agree.
    pub fn consistent(&self) -> bool {
        self.forward_holds == self.backward_holds
    }
}

/// Under `V*V = U*U`: `t(A−B) = V(|B|−|A|)` iff `|A| = |B| + t|A−B|` and
/// `A−B = −V|A−B|`.
pub fn lemma35_equivalence<T: Real>(
    a: &ComplexMatrix<T>,
    b: &ComplexMatrix<T>,
    t: T,
    pol: &TolerancePolicy<T>,
) -> Result<Lemma35Report<T>> {
    require_positive_t(t)?;
    let pair = Pair::new(a, b, pol)?;
    let bound = pol.eq_bound(pair.scale);
    let mismatch = support_mismatch(&pair);
    if mismatch > bound {
        return Err(Error::SupportMismatch {
            residual: mismatch.to_f64_lossy(),
            bound: bound.to_f64_lossy(),
        });
    }
    let forward_residual = angular_condition(&pair, t);
    let diff = pair.diff();
    let abs_diff = polar_with(&diff, pol.rank_cutoff())?.positive;
    let r1 = (&(pair.abs_a() - pair.abs_b()) - &abs_diff.scale(t)).fro_norm();
    let r2 = (&diff + &(&pair.pb.isometry * &abs_diff)).fro_norm();
    Ok(Lemma35Report {
        forward_residual,
        backward_residuals: (r1, r2),
        forward_holds: forward_residual <= bound,
        backward_holds: r1 <= bound && r2 <= bound,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lemma36Report<T> {
    /// ‖|B||C| + |C||B| − (1−t)|C|²‖ with C = A − B.
    pub identity_residual: T,
    pub holds: bool,
}

pub fn lemma36_check<T: Real>(
    a: &ComplexMatrix<T>,
    b: &ComplexMatrix<T>,
    t: T,
    pol: &TolerancePolicy<T>,
) -> Result<Lemma36Report<T>> {
    require_positive_t(t)?;
    let pair = Pair::new(a, b, pol)?;
    let bound = pol.eq_bound(pair.scale);
    let hyp = angular_condition(&pair, t).max(support_mismatch(&pair));
    if hyp > bound {
        return Err(Error::HypothesisNotSatisfied {
            residual: hyp.to_f64_lossy(),
            bound: bound.to_f64_lossy(),
        });
    }
    let diff = pair.diff();
    let abs_c = polar_with(&diff, pol.rank_cutoff())?.positive;
    let lhs = pair.abs_b().anticommutator(&abs_c);
    let rhs = diff.gram().scale(T::one() - t);
    let identity_residual = (&lhs - &rhs).fro_norm();
    Ok(Lemma36Report {
        identity_residual,
        holds: identity_residual <= pol.identity_bound(pair.scale),
    })
}

/// ‖|A−B|·|B| − |B|·|A−B|‖_F.
pub fn commutation_residual<T: Real>(
    a: &ComplexMatrix<T>,
    b: &ComplexMatrix<T>,
    pol: &TolerancePolicy<T>,
) -> Result<T> {
    a.ensure_same_shape(b)?;
    let abs_c = polar_with(&(a - b), pol.rank_cutoff())?.positive;
    let abs_b = polar_with(b, pol.rank_cutoff())?.positive;
    Ok(abs_c.commutator(&abs_b).fro_norm())
}

/// Classification of a pair attaining equality in [`thm32_check`].
#[derive(Debug, Clone, PartialEq)]
pub enum EqualityClass<T> {
    /// A = B; the structural identities are vacuous.
    TrivialEqual,
    /// 0 < t < 1: residuals of `A = B(I − 2/(1−t)W*W)` and
    /// `|A| = |B|(I + 2t/(1−t)W*W)`, W from the polar form of A − B.
    Structured { residuals: (T, T), holds: bool },
    /// t ≥ 1 yet A ≠ B: contradicts the t ≥ 1 branch.
    NotEqualCase { difference: T },
}

impl<T> EqualityClass<T> {
    pub fn kind(&self) -> &'static str {
        match self {
            EqualityClass::TrivialEqual => "trivial_AB_equal",
            EqualityClass::Structured { .. } => "structured",
            EqualityClass::NotEqualCase { .. } => "not_equal_case",
        }
    }
}

pub fn thm34_characterize<T: Real>(
    a: &ComplexMatrix<T>,
    b: &ComplexMatrix<T>,
    t: T,
    pol: &TolerancePolicy<T>,
) -> Result<EqualityClass<T>> {
    let report = thm32_check(a, b, t, pol)?;
    let bound = pol.eq_bound(report.scale);
    if !report.equality_attained {
        return Err(Error::EqualityNotAttained {
            residual: report.attainment_residual().to_f64_lossy(),
            bound: bound.to_f64_lossy(),
        });
    }
    let diff = a - b;
    let difference = diff.fro_norm();
    if difference <= bound {
        return Ok(EqualityClass::TrivialEqual);
    }
    if t >= T::one() {
        return Ok(EqualityClass::NotEqualCase { difference });
    }
    let n = a.dim()?;
    let w = polar_with(&diff, pol.rank_cutoff())?.isometry;
    let proj = w.gram();
    let id = ComplexMatrix::identity(n);
    let one = T::one();
    let shrink = &id - &proj.scale(T::lit(2.0) / (one - t));
    let grow = &id + &proj.scale(T::lit(2.0) * t / (one - t));
    let abs_a = polar_with(a, pol.rank_cutoff())?.positive;
    let abs_b = polar_with(b, pol.rank_cutoff())?.positive;
    let r1 = (a - &(b * &shrink)).fro_norm();
    let r2 = (&abs_a - &(&abs_b * &grow)).fro_norm();
    Ok(EqualityClass::Structured {
        residuals: (r1, r2),
        holds: r1 <= bound && r2 <= bound,
    })
}
