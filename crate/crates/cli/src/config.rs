use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use opineq::Policy;

use crate::error::CliError;

pub const MAX_DIM: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Gpl,
    Lemma21,
    Thm22,
    Thm23,
    Cor24,
    Prop25,
    Prop26,
    Thm32,
    Lemma33,
    Lemma35,
    Lemma36,
    Thm34,
    Constructors,
    ScalarOracle,
    All,
}

impl Suite {
    /// Every runnable suite, in report order.
    pub const EACH: [Suite; 14] = [
        Suite::Gpl,
        Suite::Lemma21,
        Suite::Thm22,
        Suite::Thm23,
        Suite::Cor24,
        Suite::Prop25,
        Suite::Prop26,
        Suite::Thm32,
        Suite::Lemma33,
        Suite::Lemma35,
        Suite::Lemma36,
        Suite::Thm34,
        Suite::Constructors,
        Suite::ScalarOracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Gpl => "gpl",
            Suite::Lemma21 => "lemma21",
            Suite::Thm22 => "thm22",
            Suite::Thm23 => "thm23",
            Suite::Cor24 => "cor24",
            Suite::Prop25 => "prop25",
            Suite::Prop26 => "prop26",
            Suite::Thm32 => "thm32",
            Suite::Lemma33 => "lemma33",
            Suite::Lemma35 => "lemma35",
            Suite::Lemma36 => "lemma36",
            Suite::Thm34 => "thm34",
            Suite::Constructors => "constructors",
            Suite::ScalarOracle => "scalar_oracle",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Suite::EACH
            .iter()
            .copied()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| CliError::Config(format!("unknown suite `{s}`")))
    }
}

/// Inclusive dimension range, written `LO..HI` on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DimRange {
    pub lo: usize,
    pub hi: usize,
}

impl DimRange {
    pub fn new(lo: usize, hi: usize) -> Result<Self, CliError> {
        if lo == 0 || hi > MAX_DIM || lo > hi {
            return Err(CliError::Config(format!(
                "dims {lo}..{hi} must satisfy 1 <= lo <= hi <= {MAX_DIM}"
            )));
        }
        Ok(Self { lo, hi })
    }
}

impl FromStr for DimRange {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let bad = || CliError::Config(format!("dims `{s}` is not of the form LO..HI"));
        let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
        let lo = lo.trim().parse().map_err(|_| bad())?;
        let hi = hi.trim().parse().map_err(|_| bad())?;
        DimRange::new(lo, hi)
    }
}

impl fmt::Display for DimRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

#[derive(Debug, Clone)]
pub struct TrialConfig {
    pub suite: Suite,
    pub dims: DimRange,
    pub trials: usize,
    pub seed: u64,
    pub policy: Policy,
    pub out_path: Option<PathBuf>,
    pub dump_dir: Option<PathBuf>,
    pub report_abstract_form: bool,
}

impl TrialConfig {
    pub fn new(suite: Suite, trials: usize, seed: u64) -> Self {
        Self {
            suite,
            dims: DimRange { lo: 1, hi: 8 },
            trials,
            seed,
            policy: Policy::default(),
            out_path: None,
            dump_dir: None,
            report_abstract_form: false,
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.trials == 0 {
            return Err(CliError::Config("trials must be at least 1".into()));
        }
        DimRange::new(self.dims.lo, self.dims.hi)?;
        self.policy
            .validate()
            .map_err(|e| CliError::Config(e.to_string()))
    }
}
