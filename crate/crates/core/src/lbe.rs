//! Lower bound error between two pseudo-orbits.
//!
//! For two pseudo-orbits `a` and `b` of the same map from the same start,
//! `δ_n = |a_n − b_n| / 2`. Whatever the true orbit `x_n` is, the triangle
//! inequality gives `max(|a_n − x_n|, |b_n − x_n|) ≥ δ_n`, so at least one of
//! the simulations is wrong by at least `δ_n`.
//!
//! `δ_n` is turned into a count of trustworthy decimal digits with
//! `digits = −log₁₀(2·δ_n)`. `2·δ_n` is the full gap between the orbits,
//! so this counts digits of absolute accuracy for a signal on the unit
//! interval. A gap of 0.1 leaves one digit and a gap of 1 leaves none.

use crate::error::{Error, Result};
use crate::map::PseudoOrbit;

/// Default reliability threshold in decimal digits.
///
/// One digit: the simulation stops being trusted once the leading decimal
/// digit of the state is no longer shared by both pseudo-orbits.
pub const DEFAULT_DIGIT_FLOOR: f64 = 1.0;

#[derive(Debug, Clone, PartialEq)]
pub struct DivergenceSeries {
    delta: Vec<f64>,
    digits: Vec<f64>,
    n_max: Option<usize>,
    digit_floor: f64,
}

impl DivergenceSeries {
    /// Builds a series directly from `δ` values.
    pub fn from_deltas(delta: Vec<f64>, digit_floor: f64) -> Result<Self> {
        check_floor(digit_floor)?;
        let digits = delta
            .iter()
            .map(|&d| significant_digits(d))
            .collect::<Result<Vec<_>>>()?;
        let n_max = first_below(&digits, digit_floor);
        Ok(Self {
            delta,
            digits,
            n_max,
            digit_floor,
        })
    }

    pub fn delta(&self) -> &[f64] {
        &self.delta
    }

    pub fn digits(&self) -> &[f64] {
        &self.digits
    }

    /// First iteration with fewer than `digit_floor` trustworthy digits.
    pub fn n_max(&self) -> Option<usize> {
        self.n_max
    }

    pub fn digit_floor(&self) -> f64 {
        self.digit_floor
    }

    pub fn len(&self) -> usize {
        self.delta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.delta.is_empty()
    }

    /// Whether iteration `n` lies before the first unreliable iteration.
    pub fn is_reliable(&self, n: usize) -> bool {
        self.n_max.is_none_or(|m| n < m)
    }

    /// The same series judged against a different floor.
    pub fn with_digit_floor(mut self, digit_floor: f64) -> Result<Self> {
        check_floor(digit_floor)?;
        self.n_max = first_below(&self.digits, digit_floor);
        self.digit_floor = digit_floor;
        Ok(self)
    }

    /// First `n` with `δ_n ≥ threshold`.
    pub fn first_exceeding(&self, threshold: f64) -> Option<usize> {
        self.delta.iter().position(|&d| d >= threshold)
    }
}

fn check_floor(digit_floor: f64) -> Result<()> {
    if digit_floor.is_finite() && digit_floor >= 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "digit floor must be a finite number ≥ 0, got {digit_floor}"
        )))
    }
}

/// `δ_n = |a_n − b_n| / 2` for every `n`, judged against
/// [`DEFAULT_DIGIT_FLOOR`].
pub fn lower_bound_error(a: &PseudoOrbit, b: &PseudoOrbit) -> Result<DivergenceSeries> {
    lower_bound_error_with_floor(a, b, DEFAULT_DIGIT_FLOOR)
}

pub fn lower_bound_error_with_floor(
    a: &PseudoOrbit,
    b: &PseudoOrbit,
    digit_floor: f64,
) -> Result<DivergenceSeries> {
    if a.form() == b.form() {
        return Err(Error::SameForm(a.form()));
    }
    if a.values().len() != b.values().len() {
        return Err(Error::Mismatch(format!(
            "orbit lengths differ ({} vs {})",
            a.values().len(),
            b.values().len()
        )));
    }
    if a.params() != b.params() {
        return Err(Error::Mismatch("orbits use different map parameters".into()));
    }
    if a.initial().float().to_bits() != b.initial().float().to_bits() {
        return Err(Error::Mismatch("orbits start from different x0".into()));
    }
    DivergenceSeries::from_deltas(half_gaps(a.values(), b.values()), digit_floor)
}

/// Elementwise `|a − b| / 2`.
pub fn half_gaps(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(&x, &y)| (x - y).abs() / 2.0).collect()
}

/// `−log₁₀(2·δ)`; `+∞` for `δ = 0`; negative once the gap exceeds 1.
pub fn significant_digits(delta_n: f64) -> Result<f64> {
    if delta_n.is_nan() || delta_n < 0.0 {
        return Err(Error::Domain(format!(
            "lower bound error must be ≥ 0, got {delta_n}"
        )));
    }
    if delta_n == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(-(2.0 * delta_n).log10())
}

/// Smallest `n` whose `δ_n` leaves fewer than `digit_floor` digits.
///
/// Panics if `delta` holds a negative or NaN entry.
pub fn max_reliable_iteration(delta: &[f64], digit_floor: f64) -> Option<usize> {
    delta.iter().position(|&d| {
        significant_digits(d).expect("lower bound errors are non-negative") < digit_floor
    })
}

fn first_below(digits: &[f64], floor: f64) -> Option<usize> {
    digits.iter().position(|&d| d < floor)
}
