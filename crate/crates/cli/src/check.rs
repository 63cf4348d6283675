//! Single-instance mode: evaluate one (A, B) pair and describe the result
//! as JSON.

use opineq::dw::{
    cor24_check, gpl_residual, lemma21_check, prop25_predicates, prop26_consequences,
    thm22_abstract_form, thm22_check, thm23_abstract_form, thm23_check, CompanionBound,
};
use opineq::kernels::hermitian_eig;
use opineq::order::check_scale;
use opineq::st::{
    lemma33_consequences, lemma35_equivalence, lemma36_check, thm31_check, thm32_check,
    thm34_characterize, EqualityClass,
};
use opineq::{Matrix, Policy, Report};
use serde_json::{json, Value};

use crate::config::Suite;
use crate::error::CliError;
use crate::io::matrix_to_value;
use crate::runner::{is_precondition, SCHEMA};

/// Which single-instance evaluation to run. `thm31` is only available here.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Suite(Suite),
    Thm31,
}

impl std::str::FromStr for Target {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        if s == "thm31" {
            return Ok(Target::Thm31);
        }
        match s.parse::<Suite>()? {
            Suite::All | Suite::Constructors | Suite::ScalarOracle => Err(CliError::Config(
                format!("suite `{s}` has no single-instance form"),
            )),
            suite => Ok(Target::Suite(suite)),
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct CheckParams {
    pub p: Option<f64>,
    pub t: Option<f64>,
    pub r: Option<f64>,
    pub conj_p: Option<f64>,
}

fn need(v: Option<f64>, name: &str, target: &str) -> Result<f64, CliError> {
    v.ok_or_else(|| CliError::Config(format!("{target} needs --{name}")))
}

/// Outcome of a single check: the JSON document and whether every verdict
/// that is asserted came out true.
pub struct CheckOutcome {
    pub value: Value,
    pub ok: bool,
}

fn spectrum(h: &Matrix) -> Result<Vec<f64>, CliError> {
    Ok(hermitian_eig(h)?.eigenvalues)
}

fn report_value(r: &Report) -> Result<Value, CliError> {
    Ok(json!({
        "variant": r.variant.name(),
        "lhs": matrix_to_value(&r.lhs),
        "rhs": matrix_to_value(&r.rhs),
        "lhs_spectrum": spectrum(&r.lhs)?,
        "rhs_spectrum": spectrum(&r.rhs)?,
        "gap_min_eig": r.gap_min_eig,
        "holds": r.holds,
        "equality_residual": r.equality_residual,
        "attainment_residual": r.attainment_residual(),
        "equality_predicted": r.equality_predicted,
        "equality_attained": r.equality_attained,
        "scale": r.scale,
    }))
}

fn companion_value(c: &CompanionBound<f64>) -> Result<Value, CliError> {
    Ok(json!({
        "rhs": matrix_to_value(&c.rhs),
        "rhs_spectrum": spectrum(&c.rhs)?,
        "gap_min_eig": c.gap_min_eig,
        "holds": c.holds,
    }))
}

fn report_outcome(r: &Report, extra: Option<Value>) -> Result<CheckOutcome, CliError> {
    let mut value = report_value(r)?;
    if let Some(x) = extra {
        value["abstract_form"] = x;
    }
    Ok(CheckOutcome {
        value,
        ok: r.holds && r.equality_sound(),
    })
}

fn evaluate(
    target: Target,
    a: &Matrix,
    b: &Matrix,
    params: CheckParams,
    pol: &Policy,
    abstract_form: bool,
) -> Result<CheckOutcome, CliError> {
    let suite = match target {
        Target::Thm31 => {
            let conj_p = need(params.conj_p, "conj-p", "thm31")?;
            return report_outcome(&thm31_check(a, b, conj_p, pol)?, None);
        }
        Target::Suite(s) => s,
    };
    let name = suite.name();
    match suite {
        Suite::Gpl => {
            let t = need(params.t, "t", name)?;
            let residual = gpl_residual(a, b, t)?;
            let scale = check_scale(&[a, b]);
            let ok = residual <= pol.identity_bound(scale);
            Ok(CheckOutcome {
                value: json!({"residual": residual, "scale": scale, "holds": ok}),
                ok,
            })
        }
        Suite::Lemma21 => {
            let t = need(params.t, "t", name)?;
            report_outcome(&lemma21_check(a, b, t, pol)?, None)
        }
        Suite::Thm22 => {
            let (p, t) = (need(params.p, "p", name)?, need(params.t, "t", name)?);
            let extra = if abstract_form {
                Some(companion_value(&thm22_abstract_form(a, b, p, t, pol)?)?)
            } else {
                None
            };
            report_outcome(&thm22_check(a, b, p, t, pol)?, extra)
        }
        Suite::Thm23 => {
            let (p, r) = (need(params.p, "p", name)?, need(params.r, "r", name)?);
            let extra = if abstract_form {
                Some(companion_value(&thm23_abstract_form(a, b, p, r, pol)?)?)
            } else {
                None
            };
            report_outcome(&thm23_check(a, b, p, r, pol)?, extra)
        }
        Suite::Cor24 => {
            let r = need(params.r, "r", name)?;
            report_outcome(&cor24_check(a, b, r, pol)?, None)
        }
        Suite::Thm32 => {
            let t = need(params.t, "t", name)?;
            report_outcome(&thm32_check(a, b, t, pol)?, None)
        }
        Suite::Prop25 => {
            let (p, r) = (need(params.p, "p", name)?, need(params.r, "r", name)?);
            let e = prop25_predicates(a, b, p, r, pol)?;
            Ok(CheckOutcome {
                value: json!({
                    "residuals": e.residuals,
                    "all_hold": e.all_hold,
                    "none_hold": e.none_hold,
                    "scale": e.scale,
                }),
                ok: e.all_hold || e.none_hold,
            })
        }
        Suite::Prop26 => {
            let (p, r) = (need(params.p, "p", name)?, need(params.r, "r", name)?);
            let e = prop26_consequences(a, b, p, r, pol)?;
            Ok(CheckOutcome {
                value: json!({
                    "hypothesis_residual": e.hypothesis_residual,
                    "identity_residual": e.identity_residual,
                    "identity_holds": e.identity_holds,
                    "order_gap_min_eig": e.order.gap_min_eig,
                    "order_holds": e.order.holds,
                    "operator_residual": e.operator_residual,
                    "operator_holds": e.operator_holds,
                    "zero_p_residual": e.zero_p_residual,
                    "zero_p_holds": e.zero_p_holds,
                    "scale": e.scale,
                }),
                ok: e.all_hold(),
            })
        }
        Suite::Lemma33 => {
            let t = need(params.t, "t", name)?;
            let e = lemma33_consequences(a, b, t, pol)?;
            let verdict = |v: &opineq::order::OrderVerdict<f64>| json!({"holds": v.holds, "gap_min_eig": v.gap_min_eig});
            Ok(CheckOutcome {
                value: json!({
                    "hypothesis_residual": e.hypothesis_residual,
                    "weighted_gap": verdict(&e.weighted_gap),
                    "abs_order": verdict(&e.abs_order),
                    "support_order": verdict(&e.support_order),
                    "identity_residual": e.identity_residual,
                    "identity_holds": e.identity_holds,
                }),
                ok: e.all_hold(),
            })
        }
        Suite::Lemma35 => {
            let t = need(params.t, "t", name)?;
            let e = lemma35_equivalence(a, b, t, pol)?;
            Ok(CheckOutcome {
                value: json!({
                    "forward_residual": e.forward_residual,
                    "backward_residuals": [e.backward_residuals.0, e.backward_residuals.1],
                    "forward_holds": e.forward_holds,
                    "backward_holds": e.backward_holds,
                    "consistent": e.consistent(),
                }),
                ok: e.consistent(),
            })
        }
        Suite::Lemma36 => {
            let t = need(params.t, "t", name)?;
            let e = lemma36_check(a, b, t, pol)?;
            Ok(CheckOutcome {
                value: json!({"identity_residual": e.identity_residual, "holds": e.holds}),
                ok: e.holds,
            })
        }
        Suite::Thm34 => {
            let t = need(params.t, "t", name)?;
            let class = thm34_characterize(a, b, t, pol)?;
            let (value, ok) = match &class {
                EqualityClass::TrivialEqual => (json!({"kind": class.kind()}), true),
                EqualityClass::Structured { residuals, holds } => (
                    json!({
                        "kind": class.kind(),
                        "structural_residuals": [residuals.0, residuals.1],
                        "holds": holds,
                    }),
                    *holds,
                ),
                EqualityClass::NotEqualCase { difference } => (
                    json!({"kind": class.kind(), "difference": difference}),
                    false,
                ),
            };
            Ok(CheckOutcome { value, ok })
        }
        Suite::All | Suite::Constructors | Suite::ScalarOracle => Err(CliError::Config(format!(
            "suite `{name}` has no single-instance form"
        ))),
    }
}

/// Evaluates `target` on (A, B). Inputs outside the routine's hypotheses
/// yield a `skipped-precondition` document rather than an error.
pub fn check_pair(
    target: Target,
    a: &Matrix,
    b: &Matrix,
    params: CheckParams,
    pol: &Policy,
    abstract_form: bool,
) -> Result<CheckOutcome, CliError> {
    a.ensure_same_shape(b)?;
    a.dim()?;
    let label = match target {
        Target::Thm31 => "thm31",
        Target::Suite(s) => s.name(),
    };
    let mut out = match evaluate(target, a, b, params, pol, abstract_form) {
        Ok(mut o) => {
            o.value["status"] = json!("ok");
            o
        }
        Err(CliError::Core(e)) if is_precondition(&e) => CheckOutcome {
            value: json!({"status": "skipped-precondition", "reason": e.to_string()}),
            ok: true,
        },
        Err(e) => return Err(e),
    };
    out.value["schema"] = json!(SCHEMA);
    out.value["suite"] = json!(label);
    Ok(out)
}
