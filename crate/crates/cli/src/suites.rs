//! One function per suite. Each draws its instance from the trial's own
//! stream and records verdicts on a [`Trial`].

use num_complex::Complex64;
use opineq::dw::{
    cor24_check, cor24_consistency, gpl_residual, lemma21_check, prop25_predicates,
    prop26_consequences, thm22_abstract_form, thm22_check, thm23_abstract_form, thm23_check,
};
use opineq::kernels::{p_angular_distance, polar};
use opineq::order::check_scale;
use opineq::sampler::{draw_params, ParamKind, SeededStream};
use opineq::st::{
    commutation_residual, lemma33_consequences, lemma35_equivalence, lemma36_check, thm31_check,
    thm32_check, thm34_characterize, EqualityClass,
};
use opineq::{Error, Matrix, Report};

use crate::config::Suite;
use crate::instances::{
    draw_dim, invertible_pair, lemma21_witness, mixed_pair, perturbed, thm22_witness,
    thm23_witness, thm34_witness, unit_direction, WitnessPair,
};
use crate::oracle;
use crate::runner::{is_precondition, Ctx, Status, Trial};

/// Generic pairs must keep every equivalent equality residual above this
/// (relative to scale).
pub const GENERIC_SEPARATION: f64 = 1e-4;

/// Agreement required between the matrix code and the scalar oracle.
pub const ORACLE_TOL: f64 = 1e-12;

/// Parameters for which equality forces A = B.
pub const RIGID_T: [f64; 3] = [1.0, 1.5, 2.0];

/// `‖A − B‖_F` must reach this multiple of the scale in the impossibility
/// trials.
pub const MIN_SEPARATION: f64 = 0.1;

enum Abort {
    Skip(String),
    Fail(String),
}

impl From<Error> for Abort {
    fn from(e: Error) -> Self {
        if is_precondition(&e) {
            Abort::Skip(e.to_string())
        } else {
            Abort::Fail(e.to_string())
        }
    }
}

/// For instances whose hypotheses hold by construction: any error fails.
fn built(e: Error) -> Abort {
    Abort::Fail(e.to_string())
}

type Step = Result<(), Abort>;

pub fn run_trial(suite: Suite, ctx: &Ctx<'_>, index: u64, stream: &mut SeededStream) -> Trial {
    let mut trial = Trial::new(index, 0);
    let outcome = match suite {
        Suite::Gpl => gpl(ctx, &mut trial, stream),
        Suite::Lemma21 => lemma21(ctx, &mut trial, stream),
        Suite::Thm22 => thm22(ctx, &mut trial, stream),
        Suite::Thm23 => thm23(ctx, &mut trial, stream),
        Suite::Cor24 => cor24(ctx, &mut trial, stream),
        Suite::Prop25 => prop25(ctx, &mut trial, stream),
        Suite::Prop26 => prop26(ctx, &mut trial, stream),
        Suite::Thm32 => thm32(ctx, &mut trial, stream),
        Suite::Lemma33 => lemma33(ctx, &mut trial, stream),
        Suite::Lemma35 => lemma35(ctx, &mut trial, stream),
        Suite::Lemma36 => lemma36(ctx, &mut trial, stream),
        Suite::Thm34 => thm34(ctx, &mut trial, stream),
        Suite::Constructors => constructors(ctx, &mut trial, stream),
        Suite::ScalarOracle => scalar_oracle(&mut trial, stream),
        Suite::All => Err(Abort::Fail("`all` is not a single suite".into())),
    };
    match outcome {
        Ok(()) => {}
        Err(Abort::Skip(why)) => {
            trial.status = Status::Skipped;
            trial.notes.push(why);
        }
        Err(Abort::Fail(why)) => {
            trial.status = Status::Failed;
            trial.notes.push(why);
        }
    }
    trial
}

fn start(ctx: &Ctx<'_>, trial: &mut Trial, stream: &mut SeededStream) -> usize {
    let n = draw_dim(stream, ctx.config.dims);
    trial.dim = n;
    n
}

fn mixed(
    trial: &mut Trial,
    stream: &mut SeededStream,
    n: usize,
) -> Result<(Matrix, Matrix), Abort> {
    let (a, b, deficient) = mixed_pair(stream, n, trial.index).map_err(built)?;
    trial.rank_deficient = deficient;
    trial.keep(&a, &b);
    Ok((a, b))
}

fn invertible(
    trial: &mut Trial,
    stream: &mut SeededStream,
    n: usize,
) -> Result<(Matrix, Matrix), Abort> {
    let (a, b) = invertible_pair(stream, n).map_err(built)?;
    trial.keep(&a, &b);
    Ok((a, b))
}

/// Inequality verdict plus the "if" direction of the equality condition.
fn sound(trial: &mut Trial, r: &Report) {
    trial.gap(r.gap_min_eig / r.scale);
    trial.require(r.holds, || {
        format!(
            "{}: gap {:e} below tolerance",
            r.variant.name(),
            r.gap_min_eig
        )
    });
    trial.require(r.equality_sound(), || {
        format!(
            "{}: equality predicted (residual {:e}) but not attained ({:e})",
            r.variant.name(),
            r.equality_residual,
            r.attainment_residual()
        )
    });
}

/// Both directions on a witness.
fn attained(trial: &mut Trial, r: &Report, label: &str) {
    trial.gap(r.gap_min_eig / r.scale);
    trial.require(r.equality_attained && r.equality_predicted, || {
        format!(
            "{label} {}: attained={} (residual {:e}), predicted={} (residual {:e})",
            r.variant.name(),
            r.equality_attained,
            r.attainment_residual(),
            r.equality_predicted,
            r.equality_residual
        )
    });
}

fn draw_t(stream: &mut SeededStream) -> f64 {
    draw_params(stream, ParamKind::T)
}

/// t uniform on [0.05, 0.9], inside the range where structured equality
/// pairs exist.
fn draw_structured_t(stream: &mut SeededStream) -> f64 {
    stream.uniform_in(0.05, 0.9)
}

fn gpl(ctx: &Ctx<'_>, trial: &mut Trial, stream: &mut SeededStream) -> Step {
    let n = start(ctx, trial, stream);
    let (a, b) = mixed(trial, stream, n)?;
    let mut t = draw_t(stream);
    if stream.coin(0.5) {
        t = -t;
    }
    trial.param("t", t);
    let res = gpl_residual(&a, &b, t)?;
    let scale = check_scale(&[&a, &b]);
    trial.identity(res / scale);
    trial.require(res <= ctx.policy.identity_bound(scale), || {
        format!("gpl residual {res:e} at scale {scale:e}")
    });
    Ok(())
}

fn lemma21(ctx: &Ctx<'_>, trial: &mut Trial, stream: &mut SeededStream) -> Step {
    let n = start(ctx, trial, stream);
    let (a, b) = mixed(trial, stream, n)?;
    let t = draw_t(stream);
    trial.param("t", t);
    sound(trial, &lemma21_check(&a, &b, t, ctx.policy)?);
    Ok(())
}

fn thm22(ctx: &Ctx<'_>, trial: &mut Trial, stream: &mut SeededStream) -> Step {
    let n = start(ctx, trial, stream);
    let (a, b) = mixed(trial, stream, n)?;
    let p = draw_params(stream, ParamKind::PT0);
    let t = draw_t(stream);
    trial.param("p", p);
    trial.param("t", t);
    let r = thm22_check(&a, &b, p, t, ctx.policy)?;
    sound(trial, &r);
    if ctx.config.report_abstract_form {
        let c = thm22_abstract_form(&a, &b, p, t, ctx.policy)?;
        trial.abstract_gap = Some(c.gap_min_eig / r.scale);
    }
    Ok(())
}

fn thm23(ctx: &Ctx<'_>, trial: &mut Trial, stream: &mut SeededStream) -> Step {
    let n = start(ctx, trial, stream);
    let (a, b) = invertible(trial, stream, n)?;
    let p = draw_params(stream, ParamKind::PT1);
    let r = draw_params(stream, ParamKind::R);
    trial.param("p", p);
    trial.param("r", r);
    let rep = thm23_check(&a, &b, p, r, ctx.policy)?;
    sound(trial, &rep);
    if ctx.config.report_abstract_form {
        let c = thm23_abstract_form(&a, &b, p, r, ctx.policy)?;
        trial.abstract_gap = Some(c.gap_min_eig / rep.scale);
    }
    Ok(())
}

fn cor24(ctx: &Ctx<'_>, trial: &mut Trial, stream: &mut SeededStream) -> Step {
    let n = start(ctx, trial, stream);
    let (a, b) = invertible(trial, stream, n)?;
    let r = draw_params(stream, ParamKind::R);
    trial.param("r", r);
    let rep = cor24_check(&a, &b, r, ctx.policy)?;
    sound(trial, &rep);
    let diff = cor24_consistency(&a, &b, r, ctx.policy)?;
    trial.identity(diff / rep.scale);
    trial.require(diff <= ctx.policy.identity_bound(rep.scale), || {
        format!("p = 0 reduction differs by {diff:e}")
    });
    Ok(())
}

fn thm23_instance(
    trial: &mut Trial,
    stream: &mut SeededStream,
    n: usize,
    p: f64,
    r: f64,
) -> Result<WitnessPair, Abort> {
    let w = thm23_witness(stream, n, p, r).map_err(built)?;
    trial.param("nontrivial", w.rotated.nontrivial as f64);
    trial.keep(&w.rotated.a, &w.rotated.b);
    Ok(w)
}

fn prop25(ctx: &Ctx<'_>, trial: &mut Trial, stream: &mut SeededStream) -> Step {
    let n = start(ctx, trial, stream);
    let p = draw_params(stream, ParamKind::PT1);
    let r = draw_params(stream, ParamKind::R);
    trial.param("p", p);
    trial.param("r", r);
    let w = thm23_instance(trial, stream, n, p, r)?;
    let on = prop25_predicates(&w.rotated.a, &w.rotated.b, p, r, ctx.policy).map_err(built)?;
    trial.require(on.all_hold, || {
        format!("witness residuals {:?}", on.residuals)
    });

    let (a, b) = invertible_pair(stream, n).map_err(built)?;
    let off = prop25_predicates(&a, &b, p, r, ctx.policy).map_err(built)?;
    let floor = GENERIC_SEPARATION * off.scale;
    trial.require(off.residuals.iter().all(|&x| x > floor), || {
        format!(
            "generic residuals {:?} not all above {floor:e}",
            off.residuals
        )
    });
    Ok(())
}

fn prop26(ctx: &Ctx<'_>, trial: &mut Trial, stream: &mut SeededStream) -> Step {
    let n = start(ctx, trial, stream);
    // Every fourth trial exercises p = 0 with r < 2, where nontrivial
    // witnesses exist.
    let (p, r) = if trial.index.is_multiple_of(4) {
        (0.0, 1.0 + stream.uniform_in(0.1, 0.9))
    } else {
        (
            draw_params(stream, ParamKind::PT1),
            draw_params(stream, ParamKind::R),
        )
    };
    trial.param("p", p);
    trial.param("r", r);
    let w = thm23_instance(trial, stream, n, p, r)?;
    let rep = prop26_consequences(&w.rotated.a, &w.rotated.b, p, r, ctx.policy).map_err(built)?;
    trial.identity(rep.identity_residual / rep.scale);
    trial.gap(rep.order.gap_min_eig / rep.scale);
    trial.require(rep.identity_holds, || {
        format!("identity residual {:e}", rep.identity_residual)
    });
    trial.require(rep.order.holds, || {
        format!("order gap {:e}", rep.order.gap_min_eig)
    });
    trial.require(rep.operator_holds, || {
        format!("operator residual {:e}", rep.operator_residual)
    });
    if p == 0.0 {
        trial.require(rep.zero_p_holds == Some(true), || {
            format!("p = 0 residual {:?}", rep.zero_p_residual)
        });
    }
    Ok(())
}

fn thm32(ctx: &Ctx<'_>, trial: &mut Trial, stream: &mut SeededStream) -> Step {
    let n = start(ctx, trial, stream);
    let (a, b) = mixed(trial, stream, n)?;
    let t = draw_t(stream);
    trial.param("t", t);
    let rep = thm32_check(&a, &b, t, ctx.policy)?;
    sound(trial, &rep);
    let conj_p = t + 1.0;
    let via = thm31_check(&a, &b, conj_p, ctx.policy)?;
    let direct = thm32_check(&a, &b, conj_p - 1.0, ctx.policy)?;
    trial.require(via.lhs == direct.lhs && via.rhs == direct.rhs, || {
        "conjugate-exponent form differs from t-form".into()
    });
    Ok(())
}

fn thm34_instance(
    ctx: &Ctx<'_>,
    trial: &mut Trial,
    stream: &mut SeededStream,
) -> Result<(WitnessPair, f64), Abort> {
    let n = start(ctx, trial, stream);
    let t = draw_structured_t(stream);
    trial.param("t", t);
    let w = thm34_witness(stream, n, t).map_err(built)?;
    trial.param("nontrivial", w.rotated.nontrivial as f64);
    trial.keep(&w.rotated.a, &w.rotated.b);
    Ok((w, t))
}

fn lemma33(ctx: &Ctx<'_>, trial: &mut Trial, stream: &mut SeededStream) -> Step {
    let (w, t) = thm34_instance(ctx, trial, stream)?;
    let rep = lemma33_consequences(&w.rotated.a, &w.rotated.b, t, ctx.policy).map_err(built)?;
    let scale = check_scale(&[&w.rotated.a, &w.rotated.b]);
    for v in [&rep.weighted_gap, &rep.abs_order, &rep.support_order] {
        trial.gap(v.gap_min_eig / scale);
    }
    if let Some(res) = rep.identity_residual {
        trial.identity(res / scale);
    }
    trial.require(rep.identity_holds.is_some(), || {
        "supports differ on a witness".into()
    });
    trial.require(rep.all_hold(), || format!("{rep:?}"));
    Ok(())
}

fn lemma35(ctx: &Ctx<'_>, trial: &mut Trial, stream: &mut SeededStream) -> Step {
    let (w, t) = thm34_instance(ctx, trial, stream)?;
    let (a, b) = (&w.rotated.a, &w.rotated.b);
    let on = lemma35_equivalence(a, b, t, ctx.policy).map_err(built)?;
    let (r1, r2) = on.backward_residuals;
    trial.identity(on.forward_residual.max(r1).max(r2) / check_scale(&[a, b]));
    trial.require(on.forward_holds && on.backward_holds, || {
        format!("witness {on:?}")
    });

    // Invertible pairs share the full support, so the hypothesis holds; both
    // sides should fail together.
    let (a, b) = invertible_pair(stream, trial.dim).map_err(built)?;
    let off = lemma35_equivalence(&a, &b, t, ctx.policy).map_err(built)?;
    trial.require(off.consistent() && !off.forward_holds, || {
        format!("generic {off:?}")
    });
    Ok(())
}

fn lemma36(ctx: &Ctx<'_>, trial: &mut Trial, stream: &mut SeededStream) -> Step {
    let (w, t) = thm34_instance(ctx, trial, stream)?;
    let (a, b) = (&w.rotated.a, &w.rotated.b);
    let scale = check_scale(&[a, b]);
    let rep = lemma36_check(a, b, t, ctx.policy).map_err(built)?;
    trial.identity(rep.identity_residual / scale);
    trial.require(rep.holds, || {
        format!("identity residual {:e}", rep.identity_residual)
    });
    let comm = commutation_residual(a, b, ctx.policy).map_err(built)?;
    trial.identity(comm / scale);
    trial.require(comm <= ctx.policy.identity_bound(scale), || {
        format!("commutation residual {comm:e}")
    });
    Ok(())
}

fn thm34(ctx: &Ctx<'_>, trial: &mut Trial, stream: &mut SeededStream) -> Step {
    if trial.index.is_multiple_of(2) {
        thm34_structured(ctx, trial, stream)
    } else {
        thm34_rigid(ctx, trial, stream)
    }
}

fn thm34_structured(ctx: &Ctx<'_>, trial: &mut Trial, stream: &mut SeededStream) -> Step {
    let (w, t) = thm34_instance(ctx, trial, stream)?;
    let (a, b) = (&w.rotated.a, &w.rotated.b);
    let class = thm34_characterize(a, b, t, ctx.policy).map_err(built)?;
    let scale = check_scale(&[a, b]);
    match class {
        EqualityClass::Structured { residuals, holds } => {
            trial.identity(residuals.0.max(residuals.1) / scale);
            trial.require(holds, || format!("structural residuals {residuals:?}"));
        }
        EqualityClass::TrivialEqual => {
            trial.require(w.rotated.nontrivial == 0, || {
                "nontrivial witness classified trivial".into()
            });
        }
        EqualityClass::NotEqualCase { difference } => {
            trial.require(false, || {
                format!("not_equal_case with ‖A−B‖ = {difference:e}")
            });
        }
    }
    let rigid_t = RIGID_T[(trial.index / 2 % 3) as usize];
    let same = thm34_characterize(b, b, rigid_t, ctx.policy).map_err(built)?;
    trial.require(same == EqualityClass::TrivialEqual, || {
        format!("A = B gave {}", same.kind())
    });
    Ok(())
}

/// Random pairs at t ≥ 1 with A, B far apart never attain equality.
fn thm34_rigid(ctx: &Ctx<'_>, trial: &mut Trial, stream: &mut SeededStream) -> Step {
    let n = start(ctx, trial, stream);
    let t = RIGID_T[(trial.index / 2 % 3) as usize];
    trial.param("t", t);
    let a = unit_direction(stream, n).map_err(built)?;
    let b = unit_direction(stream, n).map_err(built)?;
    trial.keep(&a, &b);
    let scale = check_scale(&[&a, &b]);
    let separation = (&a - &b).fro_norm();
    if separation < MIN_SEPARATION * scale {
        return Err(Abort::Skip(format!(
            "‖A−B‖ = {separation:e} below {MIN_SEPARATION}·scale"
        )));
    }
    let rep = thm32_check(&a, &b, t, ctx.policy)?;
    sound(trial, &rep);
    trial.attainment = Some(rep.attainment_residual() / scale);
    trial.require(!rep.equality_attained && !rep.equality_predicted, || {
        format!(
            "equality at t = {t}: attainment {:e}, condition {:e}",
            rep.attainment_residual(),
            rep.equality_residual
        )
    });
    Ok(())
}

fn constructors(ctx: &Ctx<'_>, trial: &mut Trial, stream: &mut SeededStream) -> Step {
    let n = start(ctx, trial, stream);
    let pol = ctx.policy;
    let kind = trial.index % 4;
    let (w, check): (
        WitnessPair,
        Box<dyn Fn(&Matrix, &Matrix) -> opineq::Result<Report>>,
    ) = match kind {
        0 => {
            let t = draw_t(stream);
            trial.param("t", t);
            let w = lemma21_witness(stream, n, t).map_err(built)?;
            (w, Box::new(move |a, b| lemma21_check(a, b, t, pol)))
        }
        1 => {
            let p = draw_params(stream, ParamKind::PT0);
            let t = draw_t(stream);
            trial.param("p", p);
            trial.param("t", t);
            let w = thm22_witness(stream, n, p, t, trial.index / 4).map_err(built)?;
            trial.rank_deficient = polar(&w.diagonal.b).map_err(built)?.support_rank < n;
            (w, Box::new(move |a, b| thm22_check(a, b, p, t, pol)))
        }
        2 => {
            let p = draw_params(stream, ParamKind::PT1);
            let r = draw_params(stream, ParamKind::R);
            trial.param("p", p);
            trial.param("r", r);
            let w = thm23_witness(stream, n, p, r).map_err(built)?;
            (w, Box::new(move |a, b| thm23_check(a, b, p, r, pol)))
        }
        _ => {
            let t = draw_structured_t(stream);
            trial.param("t", t);
            let w = thm34_witness(stream, n, t).map_err(built)?;
            (w, Box::new(move |a, b| thm32_check(a, b, t, pol)))
        }
    };
    trial.param("constructor", kind as f64);
    trial.param("nontrivial", w.rotated.nontrivial as f64);
    trial.keep(&w.rotated.a, &w.rotated.b);
    attained(
        trial,
        &check(&w.diagonal.a, &w.diagonal.b).map_err(built)?,
        "diagonal",
    );
    attained(
        trial,
        &check(&w.rotated.a, &w.rotated.b).map_err(built)?,
        "rotated",
    );

    let moved = perturbed(stream, &w.rotated.a).map_err(built)?;
    match check(&moved, &w.rotated.b) {
        Ok(r) => trial.broke = Some(!r.equality_attained),
        // A perturbation can only leave the invertible set on a null set.
        Err(e) => return Err(built(e)),
    }
    Ok(())
}

fn scalar(z: Complex64) -> Matrix {
    Matrix::scalar(z)
}

fn entry(m: &Matrix) -> f64 {
    m[(0, 0)].re
}

/// Largest relative disagreement, `|x − y| / max(1, |y|)`.
struct Agreement(f64);

impl Agreement {
    fn cmp(&mut self, x: f64, y: f64) {
        let d = (x - y).abs() / y.abs().max(1.0);
        self.0 = if d.is_nan() {
            f64::INFINITY
        } else {
            self.0.max(d)
        };
    }

    fn sides(&mut self, r: &Report, o: oracle::Sides) {
        self.cmp(entry(&r.lhs), o.lhs);
        self.cmp(entry(&r.rhs), o.rhs);
        self.cmp(r.equality_residual, o.residual);
    }
}

fn scalar_oracle(trial: &mut Trial, stream: &mut SeededStream) -> Step {
    let pol = opineq::Policy::default();
    trial.dim = 1;
    let a: Complex64 = stream.complex_normal();
    let b: Complex64 = stream.complex_normal();
    let t = draw_t(stream);
    let p0 = draw_params(stream, ParamKind::PT0);
    let p1 = draw_params(stream, ParamKind::PT1);
    let r = draw_params(stream, ParamKind::R);
    for (k, v) in [("t", t), ("p_t0", p0), ("p_t1", p1), ("r", r)] {
        trial.param(k, v);
    }
    let (ma, mb) = (scalar(a), scalar(b));
    trial.keep(&ma, &mb);
    let mut agree = Agreement(0.0);

    agree.cmp(gpl_residual(&ma, &mb, t)?, oracle::gpl_residual(a, b, t));
    agree.sides(&lemma21_check(&ma, &mb, t, &pol)?, oracle::lemma21(a, b, t));
    let o22 = oracle::thm22(a, b, p0, t);
    agree.sides(&thm22_check(&ma, &mb, p0, t, &pol)?, o22);
    agree.cmp(
        entry(&thm22_abstract_form(&ma, &mb, p0, t, &pol)?.rhs),
        o22.rhs,
    );
    let o23 = oracle::thm23(a, b, p1, r);
    agree.sides(&thm23_check(&ma, &mb, p1, r, &pol)?, o23);
    agree.cmp(
        entry(&thm23_abstract_form(&ma, &mb, p1, r, &pol)?.rhs),
        o23.rhs,
    );
    agree.sides(&cor24_check(&ma, &mb, r, &pol)?, oracle::cor24(a, b, r));
    let eq = prop25_predicates(&ma, &mb, p1, r, &pol)?;
    for (x, y) in eq.residuals.iter().zip(oracle::prop25(a, b, p1, r)) {
        agree.cmp(*x, y);
    }
    let o32 = oracle::thm32(a, b, t);
    agree.sides(&thm32_check(&ma, &mb, t, &pol)?, o32);
    agree.sides(
        &thm31_check(&ma, &mb, t + 1.0, &pol)?,
        oracle::thm32(a, b, t + 1.0 - 1.0),
    );
    agree.cmp(
        entry(&p_angular_distance(&ma, &mb, p1)?),
        oracle::p_angular_distance(a, b, p1),
    );
    let pf = polar(&ma)?;
    let (abs_a, u) = oracle::polar(a);
    agree.cmp(entry(&pf.positive), abs_a);
    agree.cmp(pf.isometry[(0, 0)].re, u.re);
    agree.cmp(pf.isometry[(0, 0)].im, u.im);

    // Witness-only evaluators, on the scalar equality instance B(1 − 2/(1−t)).
    let ts = draw_structured_t(stream);
    trial.param("t_structured", ts);
    let wa = b * (1.0 - 2.0 / (1.0 - ts));
    let mwa = scalar(wa);
    let (gap_id, anti_id) = oracle::chain_identities(wa, b, ts);
    let l33 = lemma33_consequences(&mwa, &mb, ts, &pol).map_err(built)?;
    agree.cmp(l33.identity_residual.unwrap_or(f64::NAN), gap_id.abs());
    let l36 = lemma36_check(&mwa, &mb, ts, &pol).map_err(built)?;
    agree.cmp(l36.identity_residual, anti_id.abs());
    if let EqualityClass::Structured { residuals, .. } =
        thm34_characterize(&mwa, &mb, ts, &pol).map_err(built)?
    {
        let (s1, s2) = oracle::structured(wa, b, ts);
        agree.cmp(residuals.0, s1);
        agree.cmp(residuals.1, s2);
    } else {
        return Err(Abort::Fail(
            "scalar structured witness misclassified".into(),
        ));
    }

    // p = 2, r = 3 family: A = B/(r − 1) attains the p-angular bound.
    let rw = draw_params(stream, ParamKind::R);
    trial.param("r_witness", rw);
    let aw = b / (rw - 1.0);
    let p26 = prop26_consequences(&scalar(aw), &mb, 2.0, rw, &pol).map_err(built)?;
    let (id, gap, op, _) = oracle::prop26(aw, b, 2.0, rw);
    agree.cmp(p26.identity_residual, id);
    agree.cmp(p26.order.gap_min_eig, gap);
    agree.cmp(p26.operator_residual, op);

    trial.identity(agree.0);
    trial.require(agree.0 <= ORACLE_TOL, || {
        format!("oracle disagreement {:e}", agree.0)
    });
    Ok(())
}
