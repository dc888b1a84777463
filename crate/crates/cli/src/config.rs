use pseudorbit::lbe::DEFAULT_DIGIT_FLOOR;
use pseudorbit::oracle::{DEFAULT_DIGIT_BUDGET, DEFAULT_HORIZON};
use pseudorbit::{
    make_params, parse_initial_condition, Error, InitialCondition, LaminarityRule, MapParams,
};
use std::collections::HashSet;
use std::path::PathBuf;

pub const PAPER_R: &str = "3.8283";
pub const PAPER_INITIAL_CONDITIONS: [&str; 4] = ["0.3", "1/r", "300/341", "1904/6365"];
pub const DEFAULT_ITERATIONS: usize = 5000;

/// Raw, unvalidated run settings as typed by the user.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub r_text: String,
    pub x0_texts: Vec<String>,
    pub iterations: usize,
    pub digit_floor: f64,
    pub eps: f64,
    pub laminar_len: usize,
    pub oracle_horizon: usize,
    pub oracle_digit_budget: u64,
    pub output_dir: PathBuf,
    pub emit_svg: bool,
}

impl RunConfig {
    pub fn paper_preset(output_dir: impl Into<PathBuf>) -> Self {
        Self {
            r_text: PAPER_R.into(),
            x0_texts: PAPER_INITIAL_CONDITIONS.iter().map(|s| s.to_string()).collect(),
            ..Self::new(PAPER_R, Vec::new(), output_dir)
        }
    }

    pub fn new(r_text: impl Into<String>, x0_texts: Vec<String>, output_dir: impl Into<PathBuf>) -> Self {
        Self {
            r_text: r_text.into(),
            x0_texts,
            iterations: DEFAULT_ITERATIONS,
            digit_floor: DEFAULT_DIGIT_FLOOR,
            eps: pseudorbit::intermittency::DEFAULT_EPS,
            laminar_len: pseudorbit::intermittency::DEFAULT_MIN_LAMINAR_LEN,
            oracle_horizon: DEFAULT_HORIZON,
            oracle_digit_budget: DEFAULT_DIGIT_BUDGET,
            output_dir: output_dir.into(),
            emit_svg: false,
        }
    }

    /// Checks every field before any work starts.
    pub fn validate(&self) -> Result<ValidatedConfig, Error> {
        let params = make_params(&self.r_text).map_err(|e| field_error("r", e))?;
        if self.x0_texts.is_empty() {
            return Err(Error::Config {
                field: "x0",
                reason: "at least one initial condition is required".into(),
            });
        }
        let mut seen = HashSet::new();
        let mut initials = Vec::with_capacity(self.x0_texts.len());
        for text in &self.x0_texts {
            let ic = parse_initial_condition(text, &params).map_err(|e| field_error("x0", e))?;
            if !seen.insert(slug(ic.label())) {
                return Err(Error::Config {
                    field: "x0",
                    reason: format!("{:?} is given more than once", ic.label()),
                });
            }
            initials.push(ic);
        }
        if !(self.digit_floor.is_finite() && self.digit_floor >= 0.0) {
            return Err(Error::Config {
                field: "digit-floor",
                reason: format!("must be a finite number ≥ 0, got {}", self.digit_floor),
            });
        }
        let rule = LaminarityRule::new(self.eps, self.laminar_len)?;
        if self.oracle_digit_budget == 0 {
            return Err(Error::Config {
                field: "oracle-budget",
                reason: "must be at least 1 digit".into(),
            });
        }
        if self.output_dir.as_os_str().is_empty() {
            return Err(Error::Config {
                field: "out",
                reason: "output directory must not be empty".into(),
            });
        }
        Ok(ValidatedConfig {
            params,
            initials,
            iterations: self.iterations,
            digit_floor: self.digit_floor,
            rule,
            oracle_horizon: self.oracle_horizon.min(self.iterations),
            oracle_digit_budget: self.oracle_digit_budget,
            output_dir: self.output_dir.clone(),
            emit_svg: self.emit_svg,
        })
    }
}

fn field_error(field: &'static str, err: Error) -> Error {
    Error::Config {
        field,
        reason: err.to_string(),
    }
}

#[derive(Debug, Clone)]
pub struct ValidatedConfig {
    pub params: MapParams,
    pub initials: Vec<InitialCondition>,
    pub iterations: usize,
    pub digit_floor: f64,
    pub rule: LaminarityRule,
    /// Already clamped to `iterations`.
    pub oracle_horizon: usize,
    pub oracle_digit_budget: u64,
    pub output_dir: PathBuf,
    pub emit_svg: bool,
}

/// File-name-safe form of an initial-condition label: `"300/341"` becomes
/// `"300_341"`.
pub fn slug(label: &str) -> String {
    label
        .chars()
        .map(|c| match c {
            'a'..='z' | 'A'..='Z' | '0'..='9' | '.' | '-' => c,
            _ => '_',
        })
        .collect()
}
