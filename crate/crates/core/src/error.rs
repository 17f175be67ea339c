use thiserror::Error;

/// Library-wide error type.
///
/// The CLI maps these onto its exit codes: anything input-shaped is exit 1,
/// [`Error::BudgetExceeded`] is exit 2, [`Error::CrossCheckFailed`] is exit 3.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed textual input (arrangement files, polynomials, rationals).
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Structurally invalid data or argument (dimension mismatches,
    /// duplicate hyperplanes, out-of-range parameters, ...).
    #[error("invalid input: {0}")]
    Invalid(String),

    /// Operation requires a central arrangement.
    #[error("arrangement is not central: {0}; localize at a point first (`--at x1,..,xn`)")]
    NonCentral(String),

    /// A configured resource budget was exhausted mid-computation.
    #[error("resource budget exceeded during {what}: {detail} (limit {limit}); retry with a larger budget profile")]
    BudgetExceeded {
        what: &'static str,
        detail: String,
        limit: usize,
    },

    /// Two independent routes to the same value disagreed. Always a bug,
    /// never user error.
    #[error("internal cross-check failed in {what}: {detail}")]
    CrossCheckFailed { what: &'static str, detail: String },
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
