//! One scenario per initial condition: both pseudo-orbits, their lower bound
//! error, phase segmentation, verdict and oracle check.

use crate::config::{slug, ValidatedConfig};
use crate::{csv, output, svg};
use anyhow::{Context, Result};
use pseudorbit::{
    build_report, classify_phases, exact_orbit_with_budget, fixed_points, iterate,
    lower_bound_error_with_floor, true_errors, validate_lbe, DivergenceSeries, Error,
    ExtensionForm, InitialCondition, IntermittencyReport, LbeValidation, PseudoOrbit,
};
use rayon::prelude::*;
use std::fmt::Write as _;
use std::path::PathBuf;

/// Documented process exit statuses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success,
    /// Usage, configuration or I/O error.
    Failure,
    /// The lower-bound check failed at some oracle index.
    ValidationFailed,
    /// A pseudo-orbit left the unit interval.
    RangeFault,
    /// The exact orbit outgrew its digit budget.
    OracleBudget,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        match self {
            ExitStatus::Success => 0,
            ExitStatus::Failure => 1,
            ExitStatus::ValidationFailed => 2,
            ExitStatus::RangeFault => 3,
            ExitStatus::OracleBudget => 4,
        }
    }

    fn severity(self) -> u8 {
        match self {
            ExitStatus::Success => 0,
            ExitStatus::OracleBudget => 1,
            ExitStatus::ValidationFailed => 2,
            ExitStatus::RangeFault => 3,
            ExitStatus::Failure => 4,
        }
    }

    /// The more severe of the two: range fault > validation failure > budget.
    pub fn worst(self, other: ExitStatus) -> ExitStatus {
        if other.severity() > self.severity() {
            other
        } else {
            self
        }
    }
}

#[derive(Debug, Clone)]
pub enum OracleOutcome {
    Validated(LbeValidation),
    BudgetExceeded(Error),
}

#[derive(Debug, Clone)]
pub struct Analysis {
    pub x0: InitialCondition,
    pub x_star: f64,
    pub orbit_a: PseudoOrbit,
    pub orbit_b: PseudoOrbit,
    pub series: DivergenceSeries,
    pub report: IntermittencyReport,
    pub oracle: OracleOutcome,
}

impl Analysis {
    pub fn status(&self) -> ExitStatus {
        match &self.oracle {
            OracleOutcome::Validated(v) if v.passed() => ExitStatus::Success,
            OracleOutcome::Validated(_) => ExitStatus::ValidationFailed,
            OracleOutcome::BudgetExceeded(_) => ExitStatus::OracleBudget,
        }
    }
}

#[derive(Debug, Clone)]
pub enum ScenarioOutcome {
    Completed(Box<Analysis>),
    RangeFault { x0: InitialCondition, error: Error },
}

impl ScenarioOutcome {
    pub fn label(&self) -> &str {
        match self {
            ScenarioOutcome::Completed(a) => a.x0.label(),
            ScenarioOutcome::RangeFault { x0, .. } => x0.label(),
        }
    }

    pub fn status(&self) -> ExitStatus {
        match self {
            ScenarioOutcome::Completed(a) => a.status(),
            ScenarioOutcome::RangeFault { .. } => ExitStatus::RangeFault,
        }
    }
}

/// Runs every stage for one initial condition.
pub fn analyze(cfg: &ValidatedConfig, x0: &InitialCondition) -> Result<ScenarioOutcome, Error> {
    let orbits = ExtensionForm::ALL.map(|form| iterate(form, &cfg.params, x0, cfg.iterations));
    let [orbit_a, orbit_b] = match orbits {
        [Ok(a), Ok(b)] => [a, b],
        [Err(error), _] | [_, Err(error)] => {
            return Ok(ScenarioOutcome::RangeFault {
                x0: x0.clone(),
                error,
            })
        }
    };
    let series = lower_bound_error_with_floor(&orbit_a, &orbit_b, cfg.digit_floor)?;
    let (_, x_star) = fixed_points(&cfg.params);
    let report = build_report(
        classify_phases(&orbit_a, x_star, cfg.rule),
        classify_phases(&orbit_b, x_star, cfg.rule),
        &series,
    )?;
    let oracle = verify_against_oracle(cfg, x0, &orbit_a, &orbit_b, &series)?;
    Ok(ScenarioOutcome::Completed(Box::new(Analysis {
        x0: x0.clone(),
        x_star,
        orbit_a,
        orbit_b,
        series,
        report,
        oracle,
    })))
}

fn verify_against_oracle(
    cfg: &ValidatedConfig,
    x0: &InitialCondition,
    orbit_a: &PseudoOrbit,
    orbit_b: &PseudoOrbit,
    series: &DivergenceSeries,
) -> Result<OracleOutcome, Error> {
    match exact_orbit_with_budget(&cfg.params, x0, cfg.oracle_horizon, cfg.oracle_digit_budget) {
        Ok(exact) => {
            let errors = true_errors(orbit_a, orbit_b, &exact)?;
            Ok(OracleOutcome::Validated(validate_lbe(series, &errors)))
        }
        Err(e @ Error::BudgetExceeded { .. }) => Ok(OracleOutcome::BudgetExceeded(e)),
        Err(e) => Err(e),
    }
}

/// Oracle-only check for each initial condition: iterates both forms up to
/// the oracle horizon and validates the lower bound there.
pub fn verify(cfg: &ValidatedConfig) -> Vec<(InitialCondition, Result<OracleOutcome, Error>)> {
    cfg.initials
        .par_iter()
        .map(|x0| {
            let outcome = (|| {
                let a = iterate(ExtensionForm::FormA, &cfg.params, x0, cfg.oracle_horizon)?;
                let b = iterate(ExtensionForm::FormB, &cfg.params, x0, cfg.oracle_horizon)?;
                let series = lower_bound_error_with_floor(&a, &b, cfg.digit_floor)?;
                verify_against_oracle(cfg, x0, &a, &b, &series)
            })();
            (x0.clone(), outcome)
        })
        .collect()
}

#[derive(Debug)]
pub struct RunReport {
    pub outcomes: Vec<ScenarioOutcome>,
    pub summary: String,
    pub written: Vec<PathBuf>,
}

impl RunReport {
    pub fn status(&self) -> ExitStatus {
        self.outcomes
            .iter()
            .map(ScenarioOutcome::status)
            .fold(ExitStatus::Success, ExitStatus::worst)
    }
}

/// Full pipeline: analyses run concurrently, then each scenario writes its
/// own files, then the summary is written once.
pub fn run_scenario(cfg: &ValidatedConfig) -> Result<RunReport> {
    let outcomes = cfg
        .initials
        .par_iter()
        .map(|x0| analyze(cfg, x0))
        .collect::<Result<Vec<_>, Error>>()?;

    std::fs::create_dir_all(&cfg.output_dir)
        .with_context(|| format!("creating output directory {}", cfg.output_dir.display()))?;

    let mut written = Vec::new();
    for outcome in &outcomes {
        let ScenarioOutcome::Completed(a) = outcome else {
            continue;
        };
        let stem = format!("x0_{}", slug(a.x0.label()));
        let path = cfg.output_dir.join(format!("{stem}.csv"));
        output::write_atomic(&path, csv::render(a).as_bytes())?;
        written.push(path);
        if cfg.emit_svg {
            for (suffix, body) in [
                ("orbit", svg::orbit_chart(a)),
                ("lbe", svg::divergence_chart(a)),
            ] {
                let path = cfg.output_dir.join(format!("{stem}_{suffix}.svg"));
                output::write_atomic(&path, body.as_bytes())?;
                written.push(path);
            }
        }
    }

    let summary = summary_table(&outcomes);
    let path = cfg.output_dir.join("summary.txt");
    output::write_atomic(&path, summary.as_bytes())?;
    written.push(path);

    Ok(RunReport {
        outcomes,
        summary,
        written,
    })
}

fn opt(v: Option<usize>) -> String {
    v.map_or_else(|| "none".to_string(), |n| n.to_string())
}

/// One line per scenario: label, n_max, verdict, first disagreement.
pub fn summary_table(outcomes: &[ScenarioOutcome]) -> String {
    let width = outcomes
        .iter()
        .map(|o| o.label().len())
        .max()
        .unwrap_or(0)
        .max("x0".len());
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<width$}  {:>6}  {:<24}  first_disagreement",
        "x0", "n_max", "verdict"
    );
    for o in outcomes {
        match o {
            ScenarioOutcome::Completed(a) => {
                let _ = writeln!(
                    out,
                    "{:<width$}  {:>6}  {:<24}  {}",
                    a.x0.label(),
                    opt(a.series.n_max()),
                    a.report.verdict.as_str(),
                    opt(a.report.first_disagreement()),
                );
            }
            ScenarioOutcome::RangeFault { x0, error } => {
                let index = match error {
                    Error::RangeFault { index, .. } => index.to_string(),
                    _ => "?".into(),
                };
                let _ = writeln!(
                    out,
                    "{:<width$}  {:>6}  {:<24}  -",
                    x0.label(),
                    "-",
                    format!("RangeFault@{index}"),
                );
            }
        }
    }
    out
}

/// Human-readable oracle result for one scenario.
pub fn describe_oracle(label: &str, outcome: &OracleOutcome) -> String {
    match outcome {
        OracleOutcome::Validated(v) => match v.first_failure() {
            None => format!(
                "{label}: lower bound holds at every index 0..={}",
                opt(v.horizon())
            ),
            Some(n) => format!(
                "{label}: lower bound VIOLATED at {} of {} indices (first n = {n})",
                v.failures().count(),
                v.checks().len()
            ),
        },
        OracleOutcome::BudgetExceeded(e) => format!("{label}: oracle stopped: {e}"),
    }
}
