use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::time::Instant;

use opineq::sampler::{SeededStream, GENERATOR_NAME};
use opineq::{Error, Matrix, Policy};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::config::{Suite, TrialConfig};
use crate::error::CliError;
use crate::io::{matrix_to_value, write_json};
use crate::suites::run_trial;

pub const SCHEMA: u64 = 1;

/// Minimum fraction of perturbed witnesses that must lose equality.
pub const MIN_BREAK_RATE: f64 = 0.99;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Passed,
    Failed,
    Skipped,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Passed => "pass",
            Status::Failed => "fail",
            Status::Skipped => "skip",
        }
    }
}

/// Outcome of one seeded trial. Gaps and residuals are divided by the
/// trial's scale.
#[derive(Debug, Clone)]
pub struct Trial {
    pub index: u64,
    pub dim: usize,
    pub status: Status,
    pub params: BTreeMap<&'static str, f64>,
    pub rank_deficient: bool,
    pub gap: Option<f64>,
    pub identity: Option<f64>,
    pub abstract_gap: Option<f64>,
    /// Normalized `‖rhs − lhs‖_F` where equality must fail.
    pub attainment: Option<f64>,
    /// `Some(true)` when a perturbed witness lost equality.
    pub broke: Option<bool>,
    pub notes: Vec<String>,
    pub instance: Option<(Matrix, Matrix)>,
}

impl Trial {
    pub fn new(index: u64, dim: usize) -> Self {
        Self {
            index,
            dim,
            status: Status::Passed,
            params: BTreeMap::new(),
            rank_deficient: false,
            gap: None,
            identity: None,
            abstract_gap: None,
            attainment: None,
            broke: None,
            notes: Vec::new(),
            instance: None,
        }
    }

    pub fn param(&mut self, name: &'static str, value: f64) {
        self.params.insert(name, value);
    }

    pub fn keep(&mut self, a: &Matrix, b: &Matrix) {
        self.instance = Some((a.clone(), b.clone()));
    }

    /// Records a normalized gap, keeping the smallest.
    pub fn gap(&mut self, g: f64) {
        self.gap = Some(self.gap.map_or(g, |x| x.min(g)));
    }

    /// Records a normalized identity residual, keeping the largest.
    pub fn identity(&mut self, r: f64) {
        self.identity = Some(self.identity.map_or(r, |x| x.max(r)));
    }

    /// Marks the trial failed unless `ok`.
    pub fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.status = Status::Failed;
            self.notes.push(what());
        }
    }

    fn to_value(&self) -> Value {
        let mut m = Map::new();
        m.insert("index".into(), json!(self.index));
        m.insert("dim".into(), json!(self.dim));
        m.insert("status".into(), json!(self.status.name()));
        if !self.params.is_empty() {
            m.insert("params".into(), json!(self.params));
        }
        if self.rank_deficient {
            m.insert("rank_deficient".into(), json!(true));
        }
        for (key, v) in [
            ("gap", self.gap),
            ("identity", self.identity),
            ("abstract_gap", self.abstract_gap),
            ("attainment", self.attainment),
        ] {
            if let Some(v) = v {
                m.insert(key.into(), json!(v));
            }
        }
        if let Some(b) = self.broke {
            m.insert("perturbation_broke".into(), json!(b));
        }
        if !self.notes.is_empty() {
            m.insert("notes".into(), json!(self.notes));
        }
        Value::Object(m)
    }
}

/// Errors that mean the drawn instance is outside a routine's hypotheses.
pub fn is_precondition(e: &Error) -> bool {
    matches!(
        e,
        Error::SingularPower { .. }
            | Error::HypothesisNotSatisfied { .. }
            | Error::SupportMismatch { .. }
    )
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Counts {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl Counts {
    pub fn total(&self) -> usize {
        self.passed + self.failed + self.skipped
    }

    fn add(&mut self, other: Counts) {
        self.passed += other.passed;
        self.failed += other.failed;
        self.skipped += other.skipped;
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: Suite,
    pub suite_seed: u64,
    pub counts: Counts,
    pub worst_gap: Option<f64>,
    pub worst_identity: Option<f64>,
    pub worst_abstract_gap: Option<f64>,
    /// Smallest normalized attainment residual among trials that must not
    /// attain equality.
    pub min_attainment: Option<f64>,
    /// (perturbed witnesses, how many lost equality).
    pub perturbation: Option<(usize, usize)>,
    pub rank_deficient: usize,
    pub wall_time_s: f64,
    pub trials: Vec<Trial>,
}

impl SuiteReport {
    pub fn break_rate(&self) -> Option<f64> {
        self.perturbation
            .filter(|&(n, _)| n > 0)
            .map(|(n, k)| k as f64 / n as f64)
    }

    pub fn ok(&self) -> bool {
        self.counts.failed == 0 && self.break_rate().is_none_or(|r| r >= MIN_BREAK_RATE)
    }

    fn to_value(&self) -> Value {
        let mut m = Map::new();
        m.insert("suite".into(), json!(self.suite.name()));
        m.insert("suite_seed".into(), json!(self.suite_seed));
        m.insert("counts".into(), counts_value(self.counts));
        m.insert("worst_gap".into(), json!(self.worst_gap));
        m.insert("worst_identity_residual".into(), json!(self.worst_identity));
        if self.worst_abstract_gap.is_some() {
            m.insert("worst_abstract_gap".into(), json!(self.worst_abstract_gap));
        }
        if self.min_attainment.is_some() {
            m.insert("min_attainment_residual".into(), json!(self.min_attainment));
        }
        if let Some((n, k)) = self.perturbation {
            m.insert(
                "perturbation".into(),
                json!({"tested": n, "broken": k, "rate": self.break_rate()}),
            );
        }
        m.insert("rank_deficient_trials".into(), json!(self.rank_deficient));
        m.insert("ok".into(), json!(self.ok()));
        m.insert("wall_time_s".into(), json!(self.wall_time_s));
        m.insert(
            "trials".into(),
            Value::Array(self.trials.iter().map(Trial::to_value).collect()),
        );
        Value::Object(m)
    }
}

fn counts_value(c: Counts) -> Value {
    json!({"passed": c.passed, "failed": c.failed, "skipped": c.skipped})
}

/// Result of a full run: one report per executed suite.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub config: TrialConfig,
    pub suites: Vec<SuiteReport>,
    pub wall_time_s: f64,
}

impl RunReport {
    pub fn counts(&self) -> Counts {
        let mut c = Counts::default();
        for s in &self.suites {
            c.add(s.counts);
        }
        c
    }

    pub fn ok(&self) -> bool {
        self.suites.iter().all(SuiteReport::ok)
    }

    pub fn suite(&self, suite: Suite) -> Option<&SuiteReport> {
        self.suites.iter().find(|s| s.suite == suite)
    }

    pub fn to_value(&self) -> Value {
        let c = &self.config;
        let p = &c.policy;
        let mut suites = Map::new();
        for s in &self.suites {
            suites.insert(s.suite.name().into(), s.to_value());
        }
        json!({
            "schema": SCHEMA,
            "generator": GENERATOR_NAME,
            "seed": c.seed,
            "suite": c.suite.name(),
            "config": {
                "dims": c.dims.to_string(),
                "trials": c.trials,
                "report_abstract_form": c.report_abstract_form,
                "tolerances": {
                    "eps_psd": p.eps_psd,
                    "eps_eq": p.eps_eq,
                    "eps_identity": p.eps_identity,
                    "rank_cutoff_factor": p.rank_cutoff_factor,
                },
            },
            "counts": counts_value(self.counts()),
            "ok": self.ok(),
            "wall_time_s": self.wall_time_s,
            "suites": suites,
        })
    }
}

/// Removes every `wall_time_s` field, recursively.
pub fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(m) => {
            m.remove("wall_time_s");
            m.values_mut().for_each(strip_timing);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Seed for one suite: the master seed mixed with an FNV-1a hash of the
/// suite name, so suites draw unrelated instances.
pub fn suite_seed(master: u64, suite: Suite) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for byte in suite.name().bytes() {
        h ^= u64::from(byte);
        h = h.wrapping_mul(0x0000_0100_0000_01B3);
    }
    splitmix64(master ^ h)
}

pub struct Ctx<'a> {
    pub policy: &'a Policy,
    pub config: &'a TrialConfig,
}

fn run_one(config: &TrialConfig, suite: Suite) -> SuiteReport {
    let start = Instant::now();
    let seed = suite_seed(config.seed, suite);
    let ctx = Ctx {
        policy: &config.policy,
        config,
    };
    let trials: Vec<Trial> = (0..config.trials as u64)
        .into_par_iter()
        .map(|index| {
            let mut stream = SeededStream::new(seed, index);
            run_trial(suite, &ctx, index, &mut stream)
        })
        .collect();

    let mut counts = Counts::default();
    let mut worst_gap: Option<f64> = None;
    let mut worst_identity: Option<f64> = None;
    let mut worst_abstract_gap: Option<f64> = None;
    let mut min_attainment: Option<f64> = None;
    let mut perturbation: Option<(usize, usize)> = None;
    let mut rank_deficient = 0;
    for t in &trials {
        match t.status {
            Status::Passed => counts.passed += 1,
            Status::Failed => counts.failed += 1,
            Status::Skipped => counts.skipped += 1,
        }
        if t.status == Status::Skipped {
            continue;
        }
        if let Some(g) = t.gap {
            worst_gap = Some(worst_gap.map_or(g, |w| w.min(g)));
        }
        if let Some(r) = t.identity {
            worst_identity = Some(worst_identity.map_or(r, |w| w.max(r)));
        }
        if let Some(g) = t.abstract_gap {
            worst_abstract_gap = Some(worst_abstract_gap.map_or(g, |w| w.min(g)));
        }
        if let Some(r) = t.attainment {
            min_attainment = Some(min_attainment.map_or(r, |w| w.min(r)));
        }
        if let Some(b) = t.broke {
            let (n, k) = perturbation.unwrap_or((0, 0));
            perturbation = Some((n + 1, k + usize::from(b)));
        }
        rank_deficient += usize::from(t.rank_deficient);
    }
    SuiteReport {
        suite,
        suite_seed: seed,
        counts,
        worst_gap,
        worst_identity,
        worst_abstract_gap,
        min_attainment,
        perturbation,
        rank_deficient,
        wall_time_s: start.elapsed().as_secs_f64(),
        trials,
    }
}

/// Runs the configured suite (or every suite for `all`), writes the report
/// and failure dumps if paths are configured, and returns the report.
pub fn run_suite(config: &TrialConfig) -> Result<RunReport, CliError> {
    config.validate()?;
    if let Some(dir) = &config.dump_dir {
        fs::create_dir_all(dir).map_err(|source| CliError::Io {
            path: dir.clone(),
            source,
        })?;
    }
    let start = Instant::now();
    let selected: Vec<Suite> = match config.suite {
        Suite::All => Suite::EACH.to_vec(),
        s => vec![s],
    };
    let mut suites: Vec<SuiteReport> = selected.into_iter().map(|s| run_one(config, s)).collect();
    if let Some(dir) = &config.dump_dir {
        for s in &suites {
            dump_failures(config, s, dir)?;
        }
    }
    for s in &mut suites {
        for t in &mut s.trials {
            t.instance = None;
        }
    }
    let report = RunReport {
        config: config.clone(),
        suites,
        wall_time_s: start.elapsed().as_secs_f64(),
    };
    if let Some(path) = &config.out_path {
        write_json(&report.to_value(), path)?;
    }
    Ok(report)
}

fn dump_failures(config: &TrialConfig, s: &SuiteReport, dir: &Path) -> Result<(), CliError> {
    for t in s.trials.iter().filter(|t| t.status == Status::Failed) {
        let mut v = json!({
            "schema": SCHEMA,
            "generator": GENERATOR_NAME,
            "seed": config.seed,
            "suite": s.suite.name(),
            "suite_seed": s.suite_seed,
            "trial": t.index,
            "params": t.params,
            "notes": t.notes,
        });
        if let Some((a, b)) = &t.instance {
            v["a"] = matrix_to_value(a);
            v["b"] = matrix_to_value(b);
        }
        let path = dir.join(format!("{}-trial{:06}.json", s.suite.name(), t.index));
        write_json(&v, &path)?;
    }
    Ok(())
}
