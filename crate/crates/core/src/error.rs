use thiserror::Error;

/// Errors raised by the evaluator, the oracles and the inequality checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("x must be strictly positive, got {0}")]
    NonPositive(f64),

    #[error("x must be a finite number, got {0}")]
    NotFinite(f64),

    #[error("decrement must be a finite number greater than -1, got {0}")]
    DecrementDomain(f64),

    #[error("series index k must be at least 1")]
    ZeroIndex,

    #[error("ratio is degenerate at x = 1: every term of the series vanishes")]
    DegenerateRatio,

    #[error("invalid evaluation config: {0}")]
    InvalidConfig(&'static str),

    #[error("panel count must be even and at least 2, got {0}")]
    InvalidPanels(usize),

    #[error("lambda must lie in [0, 1], got {0}")]
    LambdaOutOfRange(f64),

    #[error("at least one value is required")]
    EmptyInput,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
