//! Per-scenario CSV: one row per iteration.
//!
//! Floats carry 17 significant digits, enough to recover every binary64
//! bit-exactly. Zero prints as `0` and infinite digit counts as `inf`.

use crate::scenario::Analysis;
use std::fmt::Write as _;

pub const HEADER: &str = "n,x_a,x_b,delta,digits,phase_a,phase_b,within_n_max";

pub fn render(a: &Analysis) -> String {
    let xa = a.orbit_a.values();
    let xb = a.orbit_b.values();
    let kinds_a = a.report.segments_a.kinds();
    let kinds_b = a.report.segments_b.kinds();
    let mut out = String::with_capacity(xa.len() * 110);
    out.push_str(HEADER);
    out.push('\n');
    for n in 0..xa.len() {
        let _ = writeln!(
            out,
            "{n},{},{},{},{},{},{},{}",
            format_f64(xa[n]),
            format_f64(xb[n]),
            format_f64(a.series.delta()[n]),
            format_f64(a.series.digits()[n]),
            kinds_a[n],
            kinds_b[n],
            a.series.is_reliable(n),
        );
    }
    out
}

/// Renders `v` with 17 significant digits: positional notation for
/// exponents in `-5..17`, scientific otherwise.
pub fn format_f64(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return if v.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{v:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..17).contains(&exp) {
        return sci;
    }
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => ("-", m),
        None => ("", mantissa),
    };
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    if exp >= 0 {
        let split = exp as usize + 1;
        let (int, frac) = digits.split_at(split);
        if frac.is_empty() {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    } else {
        let zeros = "0".repeat((-exp - 1) as usize);
        format!("{sign}0.{zeros}{digits}")
    }
}

/// A parsed CSV row.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub n: usize,
    pub x_a: f64,
    pub x_b: f64,
    pub delta: f64,
    pub digits: f64,
    pub phase_a: String,
    pub phase_b: String,
    pub within_n_max: bool,
}

/// Parses text produced by [`render`].
pub fn parse(text: &str) -> Result<Vec<Row>, String> {
    let mut lines = text.lines();
    match lines.next() {
        Some(HEADER) => {}
        other => return Err(format!("unexpected header {other:?}")),
    }
    lines
        .enumerate()
        .map(|(i, line)| {
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 8 {
                return Err(format!("line {}: expected 8 fields, got {}", i + 2, f.len()));
            }
            let num = |s: &str| s.parse::<f64>().map_err(|e| format!("line {}: {s:?}: {e}", i + 2));
            Ok(Row {
                n: f[0].parse().map_err(|e| format!("line {}: {e}", i + 2))?,
                x_a: num(f[1])?,
                x_b: num(f[2])?,
                delta: num(f[3])?,
                digits: num(f[4])?,
                phase_a: f[5].to_string(),
                phase_b: f[6].to_string(),
                within_n_max: f[7].parse().map_err(|e| format!("line {}: {e}", i + 2))?,
            })
        })
        .collect()
}
