//! Natural logarithm through the positive-term series
//! `x - 1 - ln x = sum_{k >= 1} 2^(k-1) (x^(2^-k) - 1)^2`.
//!
//! - [`series`]: the cancellation-safe evaluator and its diagnostics.
//! - [`oracles`]: nested-quadrature and platform-`ln` cross-checks.
//! - [`inequalities`]: tangent-line, concavity and AM-GM verifiers.
//! - [`sampling`]: seeded log-uniform inputs for randomized checks.

pub mod error;
pub mod inequalities;
pub mod oracles;
pub mod sampling;
pub mod series;

pub use error::{Error, Result};
pub use inequalities::{amgm_check, concavity_check, tangent_at, tangent_line_gap, AmgmReport};
pub use oracles::{double_integral_residual, reference_log, simpson, QuadratureConfig};
pub use series::{
    decrement_step, difference_quotient, eval_log, iterate_decrements, partial_sum, tail_ratio,
    term, term_ratio, trace, DecrementState, Decrements, EvalConfig, LogApproxResult,
    PositiveInput, TermRatio, TraceRow,
};
