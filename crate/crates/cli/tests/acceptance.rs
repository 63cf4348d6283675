//! End-to-end acceptance run: one PASS/FAIL line per criterion.

use std::collections::BTreeMap;
use std::process::{Command, ExitCode};
use std::time::Instant;

use opineq_cli::runner::{strip_timing, Status, Trial};
use opineq_cli::{run_suite, Suite, SuiteReport, TrialConfig};
use serde_json::Value;

const SEED: u64 = 20_240_601;

type Verdict = Result<String, String>;

fn run(suite: Suite, trials: usize) -> (SuiteReport, f64) {
    let start = Instant::now();
    let report = run_suite(&TrialConfig::new(suite, trials, SEED)).expect("suite runs");
    let elapsed = start.elapsed().as_secs_f64();
    let s = report.suites.into_iter().next().expect("one suite");
    (s, elapsed)
}

fn no_failures(s: &SuiteReport) -> Result<(), String> {
    if s.counts.failed == 0 {
        return Ok(());
    }
    let first = s.trials.iter().find(|t| t.status == Status::Failed);
    Err(format!(
        "{}: {} failed, first {:?}",
        s.suite.name(),
        s.counts.failed,
        first.map(|t| (t.index, &t.notes))
    ))
}

fn check(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn passed(s: &SuiteReport) -> impl Iterator<Item = &Trial> {
    s.trials.iter().filter(|t| t.status == Status::Passed)
}

fn parallelogram() -> Verdict {
    let (s, secs) = run(Suite::Gpl, 10_000);
    no_failures(&s)?;
    let worst = s.worst_identity.unwrap_or(f64::INFINITY);
    check(s.counts.passed == 10_000, || format!("{:?}", s.counts))?;
    check(worst <= 1e-10, || format!("worst residual {worst:e}"))?;
    check(secs < 30.0, || format!("took {secs:.1}s"))?;
    Ok(format!("worst residual {worst:.2e}·scale in {secs:.2}s"))
}

fn soundness() -> Verdict {
    let mut total = 0.0;
    let mut notes = Vec::new();
    for suite in [
        Suite::Lemma21,
        Suite::Thm22,
        Suite::Thm23,
        Suite::Cor24,
        Suite::Thm32,
    ] {
        let (s, secs) = run(suite, 2_000);
        total += secs;
        no_failures(&s)?;
        check(s.counts.passed == 2_000, || {
            format!("{}: {:?}", suite.name(), s.counts)
        })?;
        let worst = s.worst_gap.unwrap_or(f64::NEG_INFINITY);
        check(worst >= -1e-9, || {
            format!("{}: gap {worst:e}", suite.name())
        })?;
        if matches!(suite, Suite::Thm22 | Suite::Thm32) {
            let share = s.rank_deficient as f64 / 2_000.0;
            check(share >= 0.2, || {
                format!("{}: rank-deficient share {share}", suite.name())
            })?;
        }
        notes.push(format!("{} {worst:.1e}", suite.name()));
    }
    check(total < 60.0, || format!("took {total:.1}s"))?;
    Ok(format!("min gap/scale {} in {total:.2}s", notes.join(", ")))
}

const CONSTRUCTORS: [&str; 4] = ["lemma21", "thm22", "thm23", "thm34"];

fn by_constructor(s: &SuiteReport) -> BTreeMap<usize, Vec<&Trial>> {
    let mut m: BTreeMap<usize, Vec<&Trial>> = BTreeMap::new();
    for t in &s.trials {
        m.entry(t.params["constructor"] as usize)
            .or_default()
            .push(t);
    }
    m
}

fn witnesses(s: &SuiteReport) -> Verdict {
    no_failures(s)?;
    let groups = by_constructor(s);
    for (k, name) in CONSTRUCTORS.iter().enumerate() {
        let n = groups.get(&k).map_or(0, |g| {
            g.iter().filter(|t| t.status == Status::Passed).count()
        });
        check(n >= 200, || format!("{name}: {n} attained witnesses"))?;
    }
    Ok(format!(
        "{} witnesses attained before and after rotation",
        s.counts.passed
    ))
}

fn perturbation(s: &SuiteReport) -> Verdict {
    let mut rates = Vec::new();
    for (k, trials) in by_constructor(s) {
        let tested = trials.iter().filter(|t| t.broke.is_some()).count();
        let broken = trials.iter().filter(|t| t.broke == Some(true)).count();
        let rate = broken as f64 / tested.max(1) as f64;
        check(tested >= 200 && rate >= 0.99, || {
            format!("{}: {broken}/{tested} broke", CONSTRUCTORS[k])
        })?;
        rates.push(format!("{} {:.1}%", CONSTRUCTORS[k], 100.0 * rate));
    }
    Ok(format!("break rates {}", rates.join(", ")))
}

fn equivalent_forms() -> Verdict {
    let (s, _) = run(Suite::Prop25, 200);
    no_failures(&s)?;
    check(s.counts.passed == 200, || format!("{:?}", s.counts))?;
    Ok("200 witnesses with all four forms, 200 generic pairs with none".into())
}

fn necessary_conditions() -> Verdict {
    let (s, _) = run(Suite::Prop26, 200);
    no_failures(&s)?;
    check(s.counts.passed == 200, || format!("{:?}", s.counts))?;
    let zero = passed(&s)
        .filter(|t| t.params.get("p") == Some(&0.0))
        .count();
    check(zero > 0, || "no p = 0 witness".into())?;
    Ok(format!("200 witnesses, {zero} at p = 0"))
}

fn chain() -> Verdict {
    let mut worst: f64 = 0.0;
    let mut commutation = f64::INFINITY;
    for suite in [Suite::Lemma33, Suite::Lemma35, Suite::Lemma36] {
        let (s, _) = run(suite, 500);
        no_failures(&s)?;
        check(s.counts.passed == 500, || {
            format!("{}: {:?}", suite.name(), s.counts)
        })?;
        let w = s.worst_identity.unwrap_or(f64::INFINITY);
        worst = worst.max(w);
        if suite == Suite::Lemma36 {
            // Trial residuals there include the commutator norm.
            commutation = w;
        }
    }
    check(worst <= 1e-8, || format!("worst residual {worst:e}"))?;
    check(commutation <= 1e-10, || {
        format!("commutation {commutation:e}")
    })?;
    Ok(format!(
        "worst residual {worst:.1e}·scale, commutation {commutation:.1e}·scale"
    ))
}

fn rigidity() -> Verdict {
    let (s, _) = run(Suite::Thm34, 12_600);
    no_failures(&s)?;
    let mut per_t: BTreeMap<String, usize> = BTreeMap::new();
    for t in passed(&s).filter(|t| t.attainment.is_some()) {
        *per_t.entry(format!("{}", t.params["t"])).or_default() += 1;
    }
    check(per_t.len() == 3, || format!("t values {per_t:?}"))?;
    for (t, n) in &per_t {
        check(*n >= 2_000, || format!("t = {t}: {n} qualifying pairs"))?;
    }
    let closest = s.min_attainment.unwrap_or(0.0);
    check(closest > 1e-8, || format!("closest approach {closest:e}"))?;
    Ok(format!(
        "{per_t:?} separated pairs, closest {closest:.2e}·scale"
    ))
}

fn oracle() -> Verdict {
    let (s, _) = run(Suite::ScalarOracle, 10_000);
    no_failures(&s)?;
    check(s.counts.passed == 10_000, || format!("{:?}", s.counts))?;
    let worst = s.worst_identity.unwrap_or(f64::INFINITY);
    check(worst <= 1e-12, || format!("worst disagreement {worst:e}"))?;
    Ok(format!("worst disagreement {worst:.1e}"))
}

fn report_of_binary() -> Result<Value, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_opineq"))
        .args(["--suite", "all", "--seed", "42"])
        .output()
        .map_err(|e| e.to_string())?;
    check(out.status.success(), || {
        String::from_utf8_lossy(&out.stderr).into_owned()
    })?;
    let mut v: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    strip_timing(&mut v);
    Ok(v)
}

fn determinism() -> Verdict {
    let first = report_of_binary()?;
    let second = report_of_binary()?;
    check(first == second, || "reports differ".into())?;
    let n = first["counts"]["passed"].as_u64().unwrap_or(0);
    Ok(format!("identical reports, {n} passing trials"))
}

fn main() -> ExitCode {
    let (constructors, _) = run(Suite::Constructors, 800);
    let criteria: Vec<(&str, Box<dyn Fn() -> Verdict>)> = vec![
        ("parallelogram identity", Box::new(parallelogram)),
        ("inequality soundness", Box::new(soundness)),
        (
            "witnesses attain equality",
            Box::new(|| witnesses(&constructors)),
        ),
        (
            "perturbation breaks equality",
            Box::new(|| perturbation(&constructors)),
        ),
        ("equivalent equality forms", Box::new(equivalent_forms)),
        ("necessary conditions", Box::new(necessary_conditions)),
        ("structured chain", Box::new(chain)),
        ("rigid parameters", Box::new(rigidity)),
        ("scalar oracle", Box::new(oracle)),
        ("determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
