use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use opineq::Policy;
use opineq_cli::check::{check_pair, CheckParams, Target};
use opineq_cli::io::read_matrix;
use opineq_cli::{run_suite, CliError, DimRange, Suite, TrialConfig};

#[derive(Parser)]
#[command(
    name = "opineq",
    version,
    about = "Seeded verification suites for operator angular-distance inequalities"
)]
#[command(args_conflicts_with_subcommands = true)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,

    #[command(flatten)]
    run: RunArgs,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a single (A, B) pair read from JSON matrix files.
    Check(CheckArgs),
}

#[derive(Args)]
struct Tolerances {
    /// PSD slack, relative to scale.
    #[arg(long = "tol-psd", value_name = "X")]
    psd: Option<f64>,

    /// Equality residual bound, relative to scale.
    #[arg(long = "tol-eq", value_name = "X")]
    eq: Option<f64>,
}

impl Tolerances {
    fn policy(&self) -> Policy {
        let mut p = Policy::default();
        if let Some(x) = self.psd {
            p.eps_psd = x;
        }
        if let Some(x) = self.eq {
            p.eps_eq = x;
        }
        p
    }
}

#[derive(Args)]
struct RunArgs {
    /// Suite to run, or `all`.
    #[arg(long, value_name = "NAME")]
    suite: Option<String>,

    /// Inclusive dimension range.
    #[arg(long, value_name = "LO..HI", default_value = "1..8")]
    dims: String,

    #[arg(long, value_name = "N", default_value_t = 100)]
    trials: usize,

    #[arg(long, value_name = "S", default_value_t = 0)]
    seed: u64,

    #[command(flatten)]
    tol: Tolerances,

    /// Write the JSON report here instead of standard output.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Directory for failing instances.
    #[arg(long = "dump-failures", value_name = "DIR")]
    dump_failures: Option<PathBuf>,

    /// Also evaluate the bound with the adjoint middle term.
    #[arg(long = "report-abstract-form")]
    report_abstract_form: bool,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, value_name = "FILE")]
    a: PathBuf,

    #[arg(long, value_name = "FILE")]
    b: PathBuf,

    #[arg(long, value_name = "NAME")]
    suite: String,

    #[arg(long, allow_negative_numbers = true)]
    p: Option<f64>,

    #[arg(long, allow_negative_numbers = true)]
    t: Option<f64>,

    #[arg(long, allow_negative_numbers = true)]
    r: Option<f64>,

    #[arg(long = "conj-p", allow_negative_numbers = true)]
    conj_p: Option<f64>,

    #[command(flatten)]
    tol: Tolerances,

    #[arg(long = "report-abstract-form")]
    report_abstract_form: bool,
}

fn run(args: RunArgs) -> Result<bool, CliError> {
    let suite: Suite = args
        .suite
        .as_deref()
        .ok_or_else(|| CliError::Config("--suite is required".into()))?
        .parse()?;
    let config = TrialConfig {
        suite,
        dims: args.dims.parse::<DimRange>()?,
        trials: args.trials,
        seed: args.seed,
        policy: args.tol.policy(),
        out_path: args.out.clone(),
        dump_dir: args.dump_failures,
        report_abstract_form: args.report_abstract_form,
    };
    let report = run_suite(&config)?;
    for s in &report.suites {
        eprintln!(
            "{:<13} passed {:>6}  failed {:>4}  skipped {:>4}  {}",
            s.suite.name(),
            s.counts.passed,
            s.counts.failed,
            s.counts.skipped,
            if s.ok() { "ok" } else { "FAILED" }
        );
    }
    if args.out.is_none() {
        let text = serde_json::to_string_pretty(&report.to_value()).expect("json value serializes");
        println!("{text}");
    }
    Ok(report.ok())
}

fn check(args: CheckArgs) -> Result<bool, CliError> {
    let target: Target = args.suite.parse()?;
    let a = read_matrix(&args.a)?;
    let b = read_matrix(&args.b)?;
    let params = CheckParams {
        p: args.p,
        t: args.t,
        r: args.r,
        conj_p: args.conj_p,
    };
    let policy = args.tol.policy();
    policy
        .validate()
        .map_err(|e| CliError::Config(e.to_string()))?;
    let out = check_pair(target, &a, &b, params, &policy, args.report_abstract_form)?;
    let text = serde_json::to_string_pretty(&out.value).expect("json value serializes");
    println!("{text}");
    Ok(out.ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Some(Command::Check(args)) => check(args),
        None => run(cli.run),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
