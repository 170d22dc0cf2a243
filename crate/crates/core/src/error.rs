use thiserror::Error;

/// Errors produced by the workbench.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (defect {defect:e})")]
    NotHermitian { defect: f64 },

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown generator a{index} at line {line}, column {column} (presentation has {count} generators)")]
    UnknownGenerator {
        index: usize,
        count: usize,
        line: usize,
        column: usize,
    },

    #[error("{name} must lie in {range}, got {value}")]
    ParamOutOfRange {
        name: String,
        range: String,
        value: f64,
    },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("|z| = {modulus} exceeds 1/2")]
    InvalidModulus { modulus: f64 },

    #[error("no unitary intertwiner: {0}")]
    NoIntertwiner(String),

    #[error("grid outside the domain: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn closed(name: &str, lo: f64, hi: f64, value: f64) -> Self {
        Error::ParamOutOfRange {
            name: name.to_string(),
            range: format!("[{lo}, {hi}]"),
            value,
        }
    }

    pub(crate) fn open(name: &str, lo: f64, hi: f64, value: f64) -> Self {
        Error::ParamOutOfRange {
            name: name.to_string(),
            range: format!("({lo}, {hi})"),
            value,
        }
    }
}

/// Checks `lo <= value <= hi`, allowing `slack` past either end.
pub(crate) fn check_closed(name: &str, value: f64, lo: f64, hi: f64, slack: f64) -> Result<()> {
    if value.is_finite() && value >= lo - slack && value <= hi + slack {
        Ok(())
    } else {
        Err(Error::closed(name, lo, hi, value))
    }
}

pub(crate) fn check_open(name: &str, value: f64, lo: f64, hi: f64) -> Result<()> {
    if value.is_finite() && value > lo && value < hi {
        Ok(())
    } else {
        Err(Error::open(name, lo, hi, value))
    }
}
