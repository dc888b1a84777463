use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use pseudorbit::Error;
use pseudorbit_cli::config::DEFAULT_ITERATIONS;
use pseudorbit_cli::scenario::describe_oracle;
use pseudorbit_cli::{run_scenario, verify, ExitStatus, OracleOutcome, RunConfig, ScenarioOutcome};
use std::path::PathBuf;
use std::process::ExitCode;

/// Lower-bound-error reliability analysis for logistic-map simulations.
///
/// Exit status: 0 success, 1 usage/config/I-O error, 2 lower-bound check
/// failed against the exact oracle, 3 a pseudo-orbit left the unit
/// interval, 4 exact oracle exceeded its digit budget.
#[derive(Parser, Debug)]
#[command(name = "pseudorbit", version, about, long_about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full pipeline for the given r and initial conditions.
    Run {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[command(flatten)]
        knobs: Knobs,
    },
    /// Exact-oracle validation of the lower bound only.
    Verify {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// r = 3.8283 with x0 ∈ {0.3, 1/r, 300/341, 1904/6365}.
    PaperPreset {
        #[command(flatten)]
        knobs: Knobs,
    },
}

#[derive(Args, Debug)]
struct ScenarioArgs {
    /// Map parameter as a decimal literal, in (0, 4].
    #[arg(long = "r", value_name = "DECIMAL")]
    r: String,
    /// Initial condition: decimal, fraction p/q, or `1/r`. Repeatable.
    #[arg(long = "x0", value_name = "X0", required = true)]
    x0: Vec<String>,
}

#[derive(Args, Debug)]
struct OracleArgs {
    /// Number of iterations computed in exact rational arithmetic.
    #[arg(long, default_value_t = pseudorbit::oracle::DEFAULT_HORIZON)]
    oracle_horizon: usize,
    /// Largest denominator, in decimal digits, the exact orbit may reach.
    #[arg(long, default_value_t = pseudorbit::oracle::DEFAULT_DIGIT_BUDGET)]
    oracle_budget: u64,
}

#[derive(Args, Debug)]
struct Knobs {
    /// Map applications per pseudo-orbit.
    #[arg(long, default_value_t = DEFAULT_ITERATIONS)]
    iterations: usize,
    /// Reliability threshold in decimal digits.
    #[arg(long, default_value_t = pseudorbit::DEFAULT_DIGIT_FLOOR)]
    digit_floor: f64,
    /// Half-width of the laminar band around the fixed point.
    #[arg(long, default_value_t = pseudorbit::intermittency::DEFAULT_EPS)]
    eps: f64,
    /// Shortest run of near-fixed-point iterates that counts as laminar.
    #[arg(long, default_value_t = pseudorbit::intermittency::DEFAULT_MIN_LAMINAR_LEN)]
    laminar_len: usize,
    #[command(flatten)]
    oracle: OracleArgs,
    /// Output directory.
    #[arg(long, default_value = "pseudorbit-out")]
    out: PathBuf,
    /// Also write SVG charts.
    #[arg(long)]
    svg: bool,
}

impl Knobs {
    fn into_config(self, r: String, x0: Vec<String>) -> RunConfig {
        RunConfig {
            iterations: self.iterations,
            digit_floor: self.digit_floor,
            eps: self.eps,
            laminar_len: self.laminar_len,
            oracle_horizon: self.oracle.oracle_horizon,
            oracle_digit_budget: self.oracle.oracle_budget,
            emit_svg: self.svg,
            ..RunConfig::new(r, x0, self.out)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => exit(ExitStatus::Failure),
            };
        }
    };
    exit(match cli.command {
        Command::Run { scenario, knobs } => run(knobs.into_config(scenario.r, scenario.x0)),
        Command::PaperPreset { knobs } => {
            let preset = RunConfig::paper_preset("");
            run(knobs.into_config(preset.r_text, preset.x0_texts))
        }
        Command::Verify { scenario, oracle } => {
            let cfg = RunConfig {
                iterations: oracle.oracle_horizon,
                oracle_horizon: oracle.oracle_horizon,
                oracle_digit_budget: oracle.oracle_budget,
                ..RunConfig::new(scenario.r, scenario.x0, ".")
            };
            verify_only(cfg)
        }
    })
}

fn exit(status: ExitStatus) -> ExitCode {
    ExitCode::from(status.code() as u8)
}

fn run(cfg: RunConfig) -> ExitStatus {
    let cfg = match cfg.validate() {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitStatus::Failure;
        }
    };
    let report = match run_scenario(&cfg) {
        Ok(report) => report,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitStatus::Failure;
        }
    };
    print!("{}", report.summary);
    println!();
    for outcome in &report.outcomes {
        match outcome {
            ScenarioOutcome::Completed(a) => println!("{}", describe_oracle(a.x0.label(), &a.oracle)),
            ScenarioOutcome::RangeFault { x0, error } => eprintln!("{}: {error}", x0.label()),
        }
    }
    println!();
    for path in &report.written {
        println!("wrote {}", path.display());
    }
    report.status()
}

fn verify_only(cfg: RunConfig) -> ExitStatus {
    let cfg = match cfg.validate() {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitStatus::Failure;
        }
    };
    let mut worst = ExitStatus::Success;
    for (x0, outcome) in verify(&cfg) {
        let status = match outcome {
            Ok(o) => {
                println!("{}", describe_oracle(x0.label(), &o));
                match &o {
                    OracleOutcome::Validated(v) if v.passed() => ExitStatus::Success,
                    OracleOutcome::Validated(_) => ExitStatus::ValidationFailed,
                    OracleOutcome::BudgetExceeded(_) => ExitStatus::OracleBudget,
                }
            }
            Err(e) => {
                eprintln!("{}: {e}", x0.label());
                match e {
                    Error::RangeFault { .. } => ExitStatus::RangeFault,
                    _ => ExitStatus::Failure,
                }
            }
        };
        worst = worst.worst(status);
    }
    worst
}
