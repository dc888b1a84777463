//! Numerical reliability of logistic-map simulations.
//!
//! Two algebraically identical arrangements of `x ↦ r·x·(1 − x)` are iterated
//! in binary64. Half the gap between the resulting pseudo-orbits is a lower
//! bound on the error of at least one of them. That bound sets the last
//! iteration at which the simulation can be trusted, and it decides whether
//! laminar/chaotic alternation seen in the output is dynamics or rounding
//! noise. An exact rational oracle checks the bound for short horizons.
//!
//! ```
//! use pseudorbit::{iterate, lower_bound_error, make_params, parse_initial_condition, ExtensionForm};
//!
//! let params = make_params("3.8283").unwrap();
//! let x0 = parse_initial_condition("0.3", &params).unwrap();
//! let a = iterate(ExtensionForm::FormA, &params, &x0, 5000).unwrap();
//! let b = iterate(ExtensionForm::FormB, &params, &x0, 5000).unwrap();
//! let series = lower_bound_error(&a, &b).unwrap();
//! assert_eq!(series.delta()[0], 0.0);
//! assert!(series.n_max().is_some());
//! ```

pub mod error;
pub mod exact;
pub mod intermittency;
pub mod lbe;
pub mod map;
pub mod oracle;

pub use error::{Error, Result};
pub use intermittency::{
    build_report, classify_phases, classify_values, IntermittencyReport, LaminarityRule,
    PhaseKind, PhaseSegment, Segmentation, Verdict,
};
pub use lbe::{
    lower_bound_error, lower_bound_error_with_floor, max_reliable_iteration, significant_digits,
    DivergenceSeries, DEFAULT_DIGIT_FLOOR,
};
pub use map::{
    exact_fixed_point, fixed_points, iterate, make_params, parse_initial_condition, step,
    ExtensionForm, InitialCondition, MapParams, PseudoOrbit,
};
pub use oracle::{
    exact_orbit, exact_orbit_with_budget, true_errors, validate_lbe, ExactOrbit, LbeValidation,
    TrueErrorSeries,
};
