use crate::map::ExtensionForm;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cannot parse {what} from {text:?}: {reason}")]
    Parse {
        what: &'static str,
        text: String,
        reason: String,
    },

    #[error("{what} = {value} is outside {allowed}")]
    Range {
        what: &'static str,
        value: String,
        allowed: &'static str,
    },

    /// An iterate left the admissible band around the unit interval.
    #[error("{form} left the unit interval at iteration {index} (value {value:e})")]
    RangeFault {
        form: ExtensionForm,
        index: usize,
        value: f64,
    },

    #[error("inputs do not match: {0}")]
    Mismatch(String),

    #[error("both pseudo-orbits use {0}; the lower bound error needs two distinct forms")]
    SameForm(ExtensionForm),

    #[error("{0}")]
    Domain(String),

    /// The exact orbit outgrew its digit budget. `last_index` is the last
    /// iterate that was fully computed.
    #[error(
        "exact orbit exceeded the digit budget of {budget} digits \
         ({digits} digits at iteration {}); last completed index {last_index}",
        last_index + 1
    )]
    BudgetExceeded {
        last_index: usize,
        digits: u64,
        budget: u64,
    },

    #[error("invalid {field}: {reason}")]
    Config { field: &'static str, reason: String },
}

impl Error {
    pub(crate) fn parse(what: &'static str, text: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            what,
            text: text.to_owned(),
            reason: reason.into(),
        }
    }
}
