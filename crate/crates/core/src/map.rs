//! The logistic map `x ↦ r·x·(1 − x)` and its two floating-point-distinct
//! evaluation forms.
//!
//! Both forms are the same polynomial over the reals. In binary64 they round
//! at different places, so iterating each from the same start produces two
//! different pseudo-orbits. Each form's operation order is fixed here: every
//! intermediate is bound to its own name and rounded on its own. Rust never
//! contracts `a * b + c` into a fused multiply-add and never reassociates
//! floating-point expressions unless asked to explicitly, so the order
//! written below is the order executed.

use crate::error::{Error, Result};
use crate::exact::{parse_decimal, parse_rational, rational_to_f64, Rounding};
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

/// Iterates may stray this far outside `[0, 1]` before a range fault is
/// raised: `4·ulp(1)` on either side.
pub const RANGE_SLACK: f64 = 4.0 * f64::EPSILON;

/// Map parameter `r`, kept both as the exact rational the user typed and as
/// its nearest binary64.
#[derive(Debug, Clone, PartialEq)]
pub struct MapParams {
    r: f64,
    r_exact: BigRational,
}

impl MapParams {
    /// Builds parameters from an exact rational in `(0, 4]`.
    pub fn from_exact(r_exact: BigRational) -> Result<Self> {
        let zero = BigRational::zero();
        let four = BigRational::from_integer(4.into());
        if r_exact <= zero || r_exact > four {
            return Err(Error::Range {
                what: "r",
                value: r_exact.to_string(),
                allowed: "(0, 4]",
            });
        }
        let r = rational_to_f64(&r_exact, Rounding::NearestEven);
        Ok(Self { r, r_exact })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn r_exact(&self) -> &BigRational {
        &self.r_exact
    }
}

/// Parses `r` from a decimal literal such as `"3.8283"`.
///
/// Only decimal text is accepted, so the exact rational meant by the user is
/// never ambiguous.
pub fn make_params(r_text: &str) -> Result<MapParams> {
    MapParams::from_exact(parse_decimal(r_text)?)
}

/// A starting point `x0 ∈ [0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct InitialCondition {
    exact: BigRational,
    float: f64,
    label: String,
}

impl InitialCondition {
    pub fn from_exact(exact: BigRational, label: impl Into<String>) -> Result<Self> {
        if exact < BigRational::zero() || exact > BigRational::one() {
            return Err(Error::Range {
                what: "x0",
                value: exact.to_string(),
                allowed: "[0, 1]",
            });
        }
        let float = rational_to_f64(&exact, Rounding::NearestEven);
        Ok(Self {
            exact,
            float,
            label: label.into(),
        })
    }

    pub fn exact(&self) -> &BigRational {
        &self.exact
    }

    /// Correctly rounded binary64 image of [`exact`](Self::exact).
    pub fn float(&self) -> f64 {
        self.float
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

/// Parses an initial condition: a decimal (`"0.3"`), a fraction
/// (`"300/341"`), or the token `"1/r"`, which resolves to the exact
/// reciprocal of `params.r_exact()`.
pub fn parse_initial_condition(text: &str, params: &MapParams) -> Result<InitialCondition> {
    let trimmed = text.trim();
    let exact = if trimmed == "1/r" {
        params.r_exact().recip()
    } else {
        parse_rational(trimmed)?
    };
    InitialCondition::from_exact(exact, trimmed)
}

/// One algebraic arrangement of the map update.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtensionForm {
    /// `r·x − r·x²`: multiply `r·x`, square `x`, scale the square by `r`,
    /// subtract.
    FormA,
    /// `r·x·(1 − x)`: multiply `r·x`, compute `1 − x`, multiply.
    FormB,
}

impl ExtensionForm {
    pub const ALL: [ExtensionForm; 2] = [ExtensionForm::FormA, ExtensionForm::FormB];

    pub fn description(self) -> &'static str {
        match self {
            ExtensionForm::FormA => "r*x - r*(x*x)",
            ExtensionForm::FormB => "(r*x)*(1 - x)",
        }
    }

    /// Short tag used in file headers and reports.
    pub fn tag(self) -> &'static str {
        match self {
            ExtensionForm::FormA => "a",
            ExtensionForm::FormB => "b",
        }
    }
}

impl fmt::Display for ExtensionForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtensionForm::FormA => write!(f, "form A ({})", self.description()),
            ExtensionForm::FormB => write!(f, "form B ({})", self.description()),
        }
    }
}

/// One map application under `form`'s evaluation order, each intermediate
/// rounded to nearest-even.
#[inline]
pub fn step(form: ExtensionForm, r: f64, x: f64) -> f64 {
    match form {
        ExtensionForm::FormA => {
            let rx = r * x;
            let x_sq = x * x;
            let r_x_sq = r * x_sq;
            rx - r_x_sq
        }
        ExtensionForm::FormB => {
            let rx = r * x;
            let one_minus_x = 1.0 - x;
            rx * one_minus_x
        }
    }
}

/// A finite binary64 orbit produced by one form from one initial condition.
#[derive(Debug, Clone, PartialEq)]
pub struct PseudoOrbit {
    form: ExtensionForm,
    params: MapParams,
    x0: InitialCondition,
    values: Vec<f64>,
}

impl PseudoOrbit {
    pub fn form(&self) -> ExtensionForm {
        self.form
    }

    pub fn params(&self) -> &MapParams {
        &self.params
    }

    pub fn initial(&self) -> &InitialCondition {
        &self.x0
    }

    /// Iterates `x_0 ..= x_N`; `values()[0]` is the rounded initial condition.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Number of map applications, `N`.
    pub fn iterations(&self) -> usize {
        self.values.len() - 1
    }
}

fn in_band(x: f64) -> bool {
    (-RANGE_SLACK..=1.0 + RANGE_SLACK).contains(&x)
}

/// Iterates `form` `n` times from `x0`.
///
/// Fails with [`Error::RangeFault`] at the first iterate outside
/// `[−4·ulp(1), 1 + 4·ulp(1)]`; values are never clamped.
pub fn iterate(
    form: ExtensionForm,
    params: &MapParams,
    x0: &InitialCondition,
    n: usize,
) -> Result<PseudoOrbit> {
    let r = params.r();
    iterate_with(form, params, x0, n, |x| step(form, r, x))
}

fn iterate_with(
    form: ExtensionForm,
    params: &MapParams,
    x0: &InitialCondition,
    n: usize,
    map: impl Fn(f64) -> f64,
) -> Result<PseudoOrbit> {
    let mut values = Vec::with_capacity(n + 1);
    let mut x = x0.float();
    values.push(x);
    for index in 1..=n {
        x = map(x);
        if !in_band(x) {
            return Err(Error::RangeFault {
                form,
                index,
                value: x,
            });
        }
        values.push(x);
    }
    Ok(PseudoOrbit {
        form,
        params: params.clone(),
        x0: x0.clone(),
        values,
    })
}

/// The two fixed points `(0, 1 − 1/r)` in binary64.
///
/// The nontrivial point lies in `(0, 1)` only when `r > 1`.
pub fn fixed_points(params: &MapParams) -> (f64, f64) {
    let inv = 1.0 / params.r();
    (0.0, 1.0 - inv)
}

/// Exact nontrivial fixed point `1 − 1/r`.
pub fn exact_fixed_point(params: &MapParams) -> BigRational {
    BigRational::one() - params.r_exact().recip()
}
