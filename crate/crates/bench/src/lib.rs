//! Shared fixtures for the criterion benches.

use pseudorbit::{make_params, parse_initial_condition, InitialCondition, MapParams};

/// Map parameter used by every bench.
pub const R: &str = "3.8283";

/// The four stock initial conditions.
pub const INITIAL_CONDITIONS: [&str; 4] = ["0.3", "1/r", "300/341", "1904/6365"];

pub fn scenario(x0: &str) -> (MapParams, InitialCondition) {
    let params = make_params(R).expect("valid r");
    let ic = parse_initial_condition(x0, &params).expect("valid x0");
    (params, ic)
}
