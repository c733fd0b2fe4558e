use thiserror::Error;

/// Errors raised by the arithmetic, bound, cut-set and graph routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An input lies outside the domain of the operation (for example `n < 2`,
    /// or a bound that needs more distinct primes than `n` has).
    #[error("domain error: {0}")]
    Domain(String),

    /// A 1-based prime index outside `1..=r`.
    #[error("prime index {index} out of range 1..={r}")]
    IndexOutOfRange { index: usize, r: usize },

    /// A level `s` outside the range allowed for prime index `index`.
    #[error("level {level} for prime index {index} out of range {min}..={max}")]
    LevelOutOfRange {
        index: usize,
        level: u32,
        min: u32,
        max: u32,
    },

    #[error("parse error: {0}")]
    Parse(String),

    /// A size guard tripped (element expansion, explicit graph, brute-force search).
    #[error("{what}: size {size} exceeds limit {limit}")]
    LimitExceeded {
        what: &'static str,
        size: String,
        limit: String,
    },

    /// A closed form that must be an integer evaluated to a proper fraction.
    #[error("closed form for {0} is not integral")]
    NotIntegral(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn limit(what: &'static str, size: impl ToString, limit: impl ToString) -> Self {
        Error::LimitExceeded {
            what,
            size: size.to_string(),
            limit: limit.to_string(),
        }
    }
}
