use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian (deviation {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("Bessel argument {x} overflows f64")]
    Overflow { x: f64 },
    #[error("{what}: truncation insufficient (doubling shifted the value by {shift:e})")]
    TruncationInsufficient { what: &'static str, shift: f64 },
    #[error("{what}: no convergence after {iterations} refinements")]
    NonConvergence { what: &'static str, iterations: usize },
    #[error("bracket ({lo}, {hi}) does not enclose a descent")]
    BracketInvalid { lo: f64, hi: f64 },
    #[error("layout mismatch: {0}")]
    LayoutMismatch(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("projection has vanishing probability {probability:e}")]
    ProjectionFailed { probability: f64 },
    #[error("unknown gate `{0}`")]
    UnknownGate(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for failures of a numerical procedure, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::TruncationInsufficient { .. }
                | Error::NonConvergence { .. }
                | Error::ProjectionFailed { .. }
                | Error::Overflow { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
