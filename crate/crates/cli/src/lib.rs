//! Scenario runner behind the `pseudorbit` command: validates a run
//! configuration, analyses every initial condition, and writes CSV, SVG and
//! summary files.

pub mod config;
pub mod csv;
pub mod output;
pub mod scenario;
pub mod svg;

pub use config::{RunConfig, ValidatedConfig, PAPER_INITIAL_CONDITIONS, PAPER_R};
pub use scenario::{
    analyze, run_scenario, summary_table, verify, Analysis, ExitStatus, OracleOutcome, RunReport,
    ScenarioOutcome,
};
