//! Exact orbits in arbitrary-precision rational arithmetic.
//!
//! The true orbit is what the pseudo-orbits are trying to follow, so it is
//! the ground truth for the lower bound error. Each step roughly doubles the
//! number of digits in the numerator and denominator. A few dozen iterations
//! are therefore the practical limit, and a digit budget guards against
//! runaway cost.
//!
//! Reduction to lowest terms uses only small gcds. Write `r = a/b` and
//! `x = p/q`, both in lowest terms. Then
//!
//! ```text
//! r·x·(1 − x) = a · p(q − p) / (b · q²)
//! ```
//!
//! and `gcd(p(q − p), q²) = 1`, so every common factor pairs `a` with `q²` or
//! `p(q − p)` with `b`. Two gcds against the small parameter terms are enough.

use crate::error::{Error, Result};
use crate::exact::{abs_diff_upward, decimal_digits_upper, rational_to_f64, Rounding};
use crate::lbe::DivergenceSeries;
use crate::map::{InitialCondition, MapParams, PseudoOrbit};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Default number of exact iterations.
pub const DEFAULT_HORIZON: usize = 20;

/// Default cap on the decimal digits of any exact iterate's denominator.
///
/// The 20th iterate for the stock initial conditions at `r = 3.8283` carries
/// 5–8 million digits, so the cap sits above that.
pub const DEFAULT_DIGIT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct ExactOrbit {
    params: MapParams,
    x0_exact: BigRational,
    values: Vec<BigRational>,
}

impl ExactOrbit {
    pub fn params(&self) -> &MapParams {
        &self.params
    }

    pub fn x0_exact(&self) -> &BigRational {
        &self.x0_exact
    }

    /// Exact iterates `x_0 ..= x_m`, each in lowest terms.
    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn horizon(&self) -> usize {
        self.values.len() - 1
    }

    /// Iterates rounded to nearest binary64.
    pub fn rounded(&self) -> Vec<f64> {
        self.values
            .iter()
            .map(|v| rational_to_f64(v, Rounding::NearestEven))
            .collect()
    }
}

/// Exact orbit of length `horizon + 1`, with the default digit budget.
pub fn exact_orbit(params: &MapParams, x0: &InitialCondition, horizon: usize) -> Result<ExactOrbit> {
    exact_orbit_with_budget(params, x0, horizon, DEFAULT_DIGIT_BUDGET)
}

/// Exact orbit, aborting with [`Error::BudgetExceeded`] as soon as an
/// iterate's denominator would exceed `digit_budget` decimal digits.
pub fn exact_orbit_with_budget(
    params: &MapParams,
    x0: &InitialCondition,
    horizon: usize,
    digit_budget: u64,
) -> Result<ExactOrbit> {
    let a = params.r_exact().numer();
    let b = params.r_exact().denom();
    let mut values = Vec::with_capacity(horizon + 1);
    values.push(x0.exact().clone());

    for n in 1..=horizon {
        let x = &values[n - 1];
        let next = exact_step(a, b, x.numer(), x.denom());
        let digits = decimal_digits_upper(next.denom().magnitude());
        if digits > digit_budget {
            return Err(Error::BudgetExceeded {
                last_index: n - 1,
                digits,
                budget: digit_budget,
            });
        }
        values.push(next);
    }

    Ok(ExactOrbit {
        params: params.clone(),
        x0_exact: x0.exact().clone(),
        values,
    })
}

/// `(a/b)·(p/q)·(1 − p/q)` in lowest terms, given both inputs in lowest
/// terms with positive denominators.
fn exact_step(a: &BigInt, b: &BigInt, p: &BigInt, q: &BigInt) -> BigRational {
    let mut num = p * (q - p);
    let mut den = q * q;

    let g_a = small_gcd(a, &den);
    let g_b = small_gcd(b, &num);
    let mut a_red = a.clone();
    let mut b_red = b.clone();
    if !g_a.is_one() {
        den /= &g_a;
        a_red /= &g_a;
    }
    if !g_b.is_one() {
        num /= &g_b;
        b_red /= &g_b;
    }
    BigRational::new_raw(num * a_red, den * b_red)
}

/// `gcd(small, big)` computed as `gcd(small, big mod small)` so that the
/// cost stays linear in the size of `big`.
fn small_gcd(small: &BigInt, big: &BigInt) -> BigInt {
    if small.is_zero() {
        return big.abs();
    }
    let rem = big.mod_floor(small);
    small.gcd(&rem)
}

/// Per-index true errors of two pseudo-orbits, each rounded upward.
#[derive(Debug, Clone, PartialEq)]
pub struct TrueErrorSeries {
    err_a: Vec<f64>,
    err_b: Vec<f64>,
}

impl TrueErrorSeries {
    pub fn err_a(&self) -> &[f64] {
        &self.err_a
    }

    pub fn err_b(&self) -> &[f64] {
        &self.err_b
    }

    pub fn horizon(&self) -> usize {
        self.err_a.len() - 1
    }
}

/// `|x_a[n] − x[n]|` and `|x_b[n] − x[n]|` for `n ≤ exact.horizon()`.
///
/// Each pseudo-orbit value is converted to its exact rational. The
/// subtraction is exact and only the final conversion rounds, toward +∞.
pub fn true_errors(
    orbit_a: &PseudoOrbit,
    orbit_b: &PseudoOrbit,
    exact: &ExactOrbit,
) -> Result<TrueErrorSeries> {
    for orbit in [orbit_a, orbit_b] {
        if orbit.params() != exact.params() {
            return Err(Error::Mismatch(format!(
                "{} uses different map parameters than the exact orbit",
                orbit.form()
            )));
        }
        if orbit.initial().exact() != exact.x0_exact() {
            return Err(Error::Mismatch(format!(
                "{} starts from a different x0 than the exact orbit",
                orbit.form()
            )));
        }
        if orbit.values().len() <= exact.horizon() {
            return Err(Error::Mismatch(format!(
                "{} has {} iterates, the exact horizon needs {}",
                orbit.form(),
                orbit.values().len(),
                exact.horizon() + 1
            )));
        }
    }
    let errors = |orbit: &PseudoOrbit| -> Vec<f64> {
        exact
            .values()
            .iter()
            .zip(orbit.values())
            .map(|(truth, &x)| abs_diff_upward(x, truth.numer(), truth.denom()))
            .collect()
    };
    Ok(TrueErrorSeries {
        err_a: errors(orbit_a),
        err_b: errors(orbit_b),
    })
}

/// Outcome of checking `max(err_a, err_b) ≥ δ` at one index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndexCheck {
    pub n: usize,
    pub delta: f64,
    pub err_a: f64,
    pub err_b: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LbeValidation {
    checks: Vec<IndexCheck>,
}

impl LbeValidation {
    pub fn checks(&self) -> &[IndexCheck] {
        &self.checks
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &IndexCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn first_failure(&self) -> Option<usize> {
        self.failures().next().map(|c| c.n)
    }

    /// Highest index checked.
    pub fn horizon(&self) -> Option<usize> {
        self.checks.last().map(|c| c.n)
    }
}

/// Checks the lower-bound property at every index both inputs cover.
pub fn validate_lbe(series: &DivergenceSeries, errors: &TrueErrorSeries) -> LbeValidation {
    let checks = series
        .delta()
        .iter()
        .zip(errors.err_a().iter().zip(errors.err_b()))
        .enumerate()
        .map(|(n, (&delta, (&err_a, &err_b)))| IndexCheck {
            n,
            delta,
            err_a,
            err_b,
            pass: err_a.max(err_b) >= delta,
        })
        .collect();
    LbeValidation { checks }
}
