//! Exact rational helpers: decimal/fraction parsing, exact binary64 to
//! rational conversion, and correctly rounded rational to binary64
//! conversion (round-to-nearest-even or upward).
//!
//! Rounding never goes through an intermediate `f64` division: the quotient
//! is formed on big integers with enough guard bits plus a sticky bit, so the
//! result is correct for arbitrarily large numerators and denominators,
//! including subnormal results.

use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Largest decimal exponent accepted by the parsers.
const MAX_DECIMAL_EXPONENT: i64 = 4096;

/// Direction used when a rational is not exactly representable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rounding {
    /// IEEE-754 round-to-nearest, ties to even.
    NearestEven,
    /// Toward +∞.
    Upward,
}

/// Parses a finite decimal literal (`"3.8283"`, `".5"`, `"1e-3"`, `"-2"`)
/// into its exact rational value.
pub fn parse_decimal(text: &str) -> Result<BigRational> {
    let s = text.trim();
    let err = |reason: &str| Error::parse("decimal", text, reason);

    let (negative, body) = match s.as_bytes().first() {
        Some(b'-') => (true, &s[1..]),
        Some(b'+') => (false, &s[1..]),
        _ => (false, s),
    };
    let (mantissa, exponent) = match body.find(['e', 'E']) {
        Some(i) => {
            let exp: i64 = body[i + 1..]
                .parse()
                .map_err(|_| err("malformed exponent"))?;
            (&body[..i], exp)
        }
        None => (body, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err("no digits"));
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(err("unexpected character"));
    }
    if exponent.abs() > MAX_DECIMAL_EXPONENT {
        return Err(err("exponent too large"));
    }

    let digits = format!("{int_part}{frac_part}");
    let mut numer: BigInt = digits.parse().map_err(|_| err("no digits"))?;
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i64;
    let ten = BigInt::from(10u32);
    Ok(if scale >= 0 {
        BigRational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num_traits::pow(ten, (-scale) as usize))
    })
}

/// Parses either a decimal literal or a fraction `"p/q"` whose parts are
/// decimal literals.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    match text.split_once('/') {
        Some((num, den)) => {
            let num = parse_decimal(num).map_err(|_| Error::parse("fraction", text, "bad numerator"))?;
            let den =
                parse_decimal(den).map_err(|_| Error::parse("fraction", text, "bad denominator"))?;
            if den.is_zero() {
                return Err(Error::parse("fraction", text, "zero denominator"));
            }
            Ok(num / den)
        }
        None => parse_decimal(text),
    }
}

/// Exact rational value of a finite binary64.
pub fn f64_to_rational(x: f64) -> BigRational {
    assert!(x.is_finite(), "f64_to_rational needs a finite value, got {x}");
    let (numer, den_shift) = f64_parts(x);
    if den_shift == 0 {
        BigRational::from_integer(numer)
    } else {
        BigRational::new(numer, BigInt::one() << den_shift)
    }
}

/// Splits a finite `x` into `numer / 2^den_shift` (not reduced).
fn f64_parts(x: f64) -> (BigInt, usize) {
    let bits = x.to_bits();
    let negative = bits >> 63 == 1;
    let biased = ((bits >> 52) & 0x7ff) as i64;
    let fraction = bits & ((1u64 << 52) - 1);
    let (mantissa, exp) = if biased == 0 {
        (fraction, -1074)
    } else {
        (fraction | (1u64 << 52), biased - 1075)
    };
    let mut numer = BigInt::from(mantissa);
    if negative {
        numer = -numer;
    }
    if exp >= 0 {
        (numer << exp as usize, 0)
    } else {
        (numer, (-exp) as usize)
    }
}

/// Rounds an exact rational to binary64.
pub fn rational_to_f64(value: &BigRational, rounding: Rounding) -> f64 {
    ratio_to_f64(value.numer(), value.denom(), rounding)
}

/// Rounds `numer / denom` to binary64 without requiring lowest terms.
pub fn ratio_to_f64(numer: &BigInt, denom: &BigInt, rounding: Rounding) -> f64 {
    assert!(!denom.is_zero(), "zero denominator");
    let negative = numer.sign() * denom.sign() == Sign::Minus;
    let mode = match (rounding, negative) {
        (Rounding::NearestEven, _) => Magnitude::Nearest,
        (Rounding::Upward, false) => Magnitude::Up,
        (Rounding::Upward, true) => Magnitude::Down,
    };
    let mag = round_magnitude(numer.magnitude(), denom.magnitude(), mode);
    if negative {
        -mag
    } else {
        mag
    }
}

/// Upper bound on `|x - numer/denom|`, rounded upward to binary64.
///
/// `denom` must be positive. No gcd is taken, so this stays linear in the
/// size of the operands.
pub fn abs_diff_upward(x: f64, numer: &BigInt, denom: &BigInt) -> f64 {
    assert!(denom.is_positive(), "denominator must be positive");
    let (x_numer, shift) = f64_parts(x);
    // x - n/d = (x_numer * d - n * 2^shift) / (d * 2^shift)
    let diff = x_numer * denom - (numer << shift);
    let den = denom << shift;
    round_magnitude(diff.magnitude(), den.magnitude(), Magnitude::Up)
}

/// Upper estimate of the number of decimal digits of `n`.
pub fn decimal_digits_upper(n: &BigUint) -> u64 {
    if n.is_zero() {
        return 1;
    }
    (n.bits() as f64 * std::f64::consts::LOG10_2).floor() as u64 + 1
}

#[derive(Clone, Copy)]
enum Magnitude {
    Nearest,
    Up,
    Down,
}

fn round_magnitude(numer: &BigUint, denom: &BigUint, mode: Magnitude) -> f64 {
    if numer.is_zero() {
        return 0.0;
    }
    // Scale so the integer quotient carries 55 or 56 bits: 53 for the
    // significand plus guard bits, with the remainder as the sticky bit.
    let e = numer.bits() as i64 - denom.bits() as i64;
    let s = 55 - e;
    let (q, r) = if s >= 0 {
        (numer << s as usize).div_rem(denom)
    } else {
        numer.div_rem(&(denom << (-s) as usize))
    };
    let quotient = q.to_u64().expect("quotient has at most 56 bits") as u128;
    let sticky = !r.is_zero();

    let qbits = 128 - quotient.leading_zeros() as i64;
    let exponent = qbits - 1 - s;
    if exponent > 1023 {
        return match mode {
            Magnitude::Down => f64::MAX,
            _ => f64::INFINITY,
        };
    }
    let lsb_exp = (exponent - 52).max(-1074);
    let drop = lsb_exp + s;
    debug_assert!(drop >= 1);

    let (mut mantissa, low, half) = if drop >= 120 {
        (0u128, quotient, u128::MAX)
    } else {
        let mask = (1u128 << drop) - 1;
        (quotient >> drop, quotient & mask, 1u128 << (drop - 1))
    };
    let round_up = match mode {
        Magnitude::Nearest => low > half || (low == half && (sticky || mantissa & 1 == 1)),
        Magnitude::Up => low != 0 || sticky,
        Magnitude::Down => false,
    };
    if round_up {
        mantissa += 1;
    }
    mantissa as f64 * pow2(lsb_exp)
}

/// 2^e for -1074 ≤ e ≤ 1023, exactly.
fn pow2(e: i64) -> f64 {
    debug_assert!((-1074..=1023).contains(&e));
    if e >= -1022 {
        f64::from_bits(((e + 1023) as u64) << 52)
    } else {
        f64::from_bits(1u64 << (e + 1074))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parses_decimals() {
        assert_eq!(parse_decimal("3.8283").unwrap(), q(38283, 10000));
        assert_eq!(parse_decimal("4").unwrap(), q(4, 1));
        assert_eq!(parse_decimal(".5").unwrap(), q(1, 2));
        assert_eq!(parse_decimal("-0.25").unwrap(), q(-1, 4));
        assert_eq!(parse_decimal("1e-3").unwrap(), q(1, 1000));
        assert_eq!(parse_decimal("2.5E2").unwrap(), q(250, 1));
        for bad in ["", ".", "abc", "1.2.3", "1e", "0x10", "1/2", "--1", "1e99999"] {
            assert!(parse_decimal(bad).is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn parses_fractions() {
        assert_eq!(parse_rational("300/341").unwrap(), q(300, 341));
        assert_eq!(parse_rational("1904/6365").unwrap(), q(1904, 6365));
        assert_eq!(parse_rational("0.5/2").unwrap(), q(1, 4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1/").is_err());
        assert!(parse_rational("/3").is_err());
    }

    #[test]
    fn rounding_matches_hardware_division_on_small_fractions() {
        // IEEE division of exactly representable operands is correctly rounded.
        for (n, d) in [(300, 341), (1904, 6365), (10000, 38283), (1, 3), (2, 3), (28283, 38283)] {
            let r = q(n, d);
            assert_eq!(
                rational_to_f64(&r, Rounding::NearestEven),
                n as f64 / d as f64,
                "{n}/{d}"
            );
        }
    }

    #[test]
    fn upward_rounding_brackets_value() {
        let third = q(1, 3);
        let up = rational_to_f64(&third, Rounding::Upward);
        let near = rational_to_f64(&third, Rounding::NearestEven);
        assert!(f64_to_rational(up) >= third);
        assert!(up == near || up == f64::from_bits(near.to_bits() + 1));
        // exact values are not bumped
        assert_eq!(rational_to_f64(&q(3, 4), Rounding::Upward), 0.75);
        assert_eq!(rational_to_f64(&q(-1, 3), Rounding::Upward), -(1.0f64 / 3.0));
    }

    #[test]
    fn subnormal_and_extreme_results() {
        let tiny = BigRational::new(BigInt::one(), BigInt::one() << 1074usize);
        assert_eq!(rational_to_f64(&tiny, Rounding::NearestEven), f64::from_bits(1));
        let below = BigRational::new(BigInt::one(), BigInt::one() << 1080usize);
        assert_eq!(rational_to_f64(&below, Rounding::NearestEven), 0.0);
        assert_eq!(rational_to_f64(&below, Rounding::Upward), f64::from_bits(1));
        let huge = BigRational::from_integer(BigInt::one() << 1100usize);
        assert_eq!(rational_to_f64(&huge, Rounding::NearestEven), f64::INFINITY);
        // half-way between 0 and the smallest subnormal rounds to even (zero)
        let halfway = BigRational::new(BigInt::one(), BigInt::one() << 1075usize);
        assert_eq!(rational_to_f64(&halfway, Rounding::NearestEven), 0.0);
    }

    #[test]
    fn ties_go_to_even() {
        // 1 + 2^-53 is exactly between 1 and 1 + 2^-52.
        let tie = BigRational::new((BigInt::one() << 53usize) + 1, BigInt::one() << 53usize);
        assert_eq!(rational_to_f64(&tie, Rounding::NearestEven), 1.0);
        let tie_odd = BigRational::new((BigInt::one() << 53usize) + 3, BigInt::one() << 53usize);
        assert_eq!(
            rational_to_f64(&tie_odd, Rounding::NearestEven),
            1.0 + 2.0 * f64::EPSILON
        );
    }

    #[test]
    fn abs_diff_upward_is_exact_when_representable() {
        let d = abs_diff_upward(0.75, &BigInt::from(1), &BigInt::from(4));
        assert_eq!(d, 0.5);
        assert_eq!(abs_diff_upward(0.5, &BigInt::from(1), &BigInt::from(2)), 0.0);
        // |fl(0.3) - 3/10| is the representation error of 0.3: 2^-54 / 5
        let e = abs_diff_upward(0.3, &BigInt::from(3), &BigInt::from(10));
        let exact = (f64_to_rational(0.3) - q(3, 10)).abs();
        assert!(f64_to_rational(e) >= exact);
        assert_eq!(e, rational_to_f64(&exact, Rounding::Upward));
    }

    #[test]
    fn digit_estimate_is_an_upper_bound() {
        for s in ["1", "9", "10", "99999", "100000", "123456789012345678901234567890"] {
            let n: BigUint = s.parse().unwrap();
            let est = decimal_digits_upper(&n);
            assert!(est >= s.len() as u64 && est <= s.len() as u64 + 1, "{s}: {est}");
        }
    }

    proptest! {
        #[test]
        fn nearest_agrees_with_std_parse(int in 0u64..1_000_000, frac in 0u64..1_000_000_000_000, exp in -30i32..30) {
            let text = format!("{int}.{frac:012}e{exp}");
            let exact = parse_decimal(&text).unwrap();
            let ours = rational_to_f64(&exact, Rounding::NearestEven);
            let std: f64 = text.parse().unwrap();
            prop_assert_eq!(ours.to_bits(), std.to_bits());
        }

        #[test]
        fn f64_round_trips_through_rational(bits in any::<u64>()) {
            let x = f64::from_bits(bits);
            prop_assume!(x.is_finite());
            let r = f64_to_rational(x);
            prop_assert_eq!(rational_to_f64(&r, Rounding::NearestEven).to_bits(), x.to_bits());
            prop_assert_eq!(rational_to_f64(&r, Rounding::Upward).to_bits(), x.to_bits());
        }

        #[test]
        fn upward_is_smallest_upper_bound(n in 1i64..1_000_000_000_000, d in 1i64..1_000_000_000_000) {
            let r = q(n, d);
            let up = rational_to_f64(&r, Rounding::Upward);
            prop_assert!(f64_to_rational(up) >= r);
            let below = f64::from_bits(up.to_bits() - 1);
            prop_assert!(f64_to_rational(below) < r);
        }
    }
}
