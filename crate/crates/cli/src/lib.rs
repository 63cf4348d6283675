//! Seeded suite runner and single-instance checker built on [`opineq`].

pub mod check;
pub mod config;
pub mod error;
pub mod instances;
pub mod io;
pub mod oracle;
pub mod runner;
pub mod suites;

pub use config::{DimRange, Suite, TrialConfig};
pub use error::CliError;
pub use runner::{run_suite, RunReport, SuiteReport};
