//! Numerical checks of the consequences of `ln x <= x - 1`: the tangent-line
//! bound at an arbitrary point, concavity along a chord, and AM-GM.
//!
//! Every logarithm here comes from [`eval_log`] at the default config.

use crate::error::{Error, Result};
use crate::series::{eval_log, EvalConfig, PositiveInput};

/// Lower bound accepted for `tangent_line_gap`.
pub const TANGENT_GAP_TOL: f64 = 1e-12;
/// Lower bound accepted for `tangent_at` and `concavity_check`.
pub const CHORD_TOL: f64 = 1e-11;
/// Slack allowed when deciding `GM <= AM`.
pub const AMGM_HOLD_TOL: f64 = 1e-11;
/// Relative agreement that counts as equality of the means.
pub const AMGM_EQUALITY_TOL: f64 = 1e-12;

fn ln(x: PositiveInput) -> f64 {
    eval_log(x, &EvalConfig::default()).log_value
}

/// `x - 1 - ln x`; non-negative, zero only at `x = 1`.
pub fn tangent_line_gap(x: PositiveInput) -> f64 {
    x.get() - 1.0 - ln(x)
}

/// Height of the tangent line at `(a, ln a)` above the graph at `x`.
pub fn tangent_at(a: PositiveInput, x: PositiveInput) -> f64 {
    ln(a) + (x.get() - a.get()) / a.get() - ln(x)
}

/// `ln(lambda x + (1 - lambda) y) - (lambda ln x + (1 - lambda) ln y)`.
pub fn concavity_check(x: PositiveInput, y: PositiveInput, lambda: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::LambdaOutOfRange(lambda));
    }
    let mu = 1.0 - lambda;
    let mix = PositiveInput::new(lambda * x.get() + mu * y.get())?;
    Ok(ln(mix) - (lambda * ln(x) + mu * ln(y)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmgmReport {
    pub arithmetic_mean: f64,
    pub geometric_mean: f64,
    pub holds: bool,
    pub equality: bool,
}

/// Compares the arithmetic mean with `exp(mean(ln v_i))`.
///
/// `equality` requires both that the means agree to `AMGM_EQUALITY_TOL`
/// relative and that every value lies within that relative distance of the
/// largest one. The first condition alone would admit spreads of order
/// `sqrt(tol)`.
pub fn amgm_check(values: &[PositiveInput]) -> Result<AmgmReport> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    let n = values.len() as f64;
    let arithmetic_mean = values.iter().map(|v| v.get()).sum::<f64>() / n;
    let mean_log = values.iter().map(|&v| ln(v)).sum::<f64>() / n;
    let geometric_mean = mean_log.exp();

    let holds = geometric_mean <= arithmetic_mean + AMGM_HOLD_TOL * arithmetic_mean.max(1.0);
    let means_agree =
        (arithmetic_mean - geometric_mean).abs() <= AMGM_EQUALITY_TOL * arithmetic_mean;
    let largest = values.iter().map(|v| v.get()).fold(0.0, f64::max);
    let all_equal = values
        .iter()
        .all(|v| largest - v.get() <= AMGM_EQUALITY_TOL * largest);

    Ok(AmgmReport {
        arithmetic_mean,
        geometric_mean,
        holds,
        equality: means_agree && all_equal,
    })
}
