//! Independent cross-checks for the series evaluator.
//!
//! Neither oracle shares code with [`crate::series`]: the residual is computed
//! as an iterated integral of `u^-2` by nested composite Simpson quadrature,
//! and the logarithm is taken from the platform's `ln`.

use crate::error::{Error, Result};
use crate::series::PositiveInput;

/// Number of composite-rule subintervals used on each axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadratureConfig {
    panels: usize,
}

impl QuadratureConfig {
    pub const DEFAULT_PANELS: usize = 1024;

    pub fn new(panels: usize) -> Result<Self> {
        if panels < 2 || !panels.is_multiple_of(2) {
            return Err(Error::InvalidPanels(panels));
        }
        Ok(Self { panels })
    }

    pub fn panels(&self) -> usize {
        self.panels
    }
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            panels: Self::DEFAULT_PANELS,
        }
    }
}

/// Composite Simpson rule over `[a, b]` with an even number of panels.
///
/// The step is `(b - a) / panels`, so `b < a` yields the signed integral
/// `-int_b^a f`.
pub fn simpson<F>(f: F, a: f64, b: f64, panels: usize) -> f64
where
    F: Fn(f64) -> f64,
{
    debug_assert!(panels >= 2 && panels.is_multiple_of(2));
    if a == b {
        return 0.0;
    }
    let h = (b - a) / panels as f64;
    let mut odd = 0.0;
    let mut even = 0.0;
    for i in 1..panels {
        let v = f(a + i as f64 * h);
        if i % 2 == 1 {
            odd += v;
        } else {
            even += v;
        }
    }
    (f(a) + f(b) + 4.0 * odd + 2.0 * even) * h / 3.0
}

/// `int_1^x int_1^t u^-2 du dt`, which equals `x - 1 - ln x`.
///
/// Both levels are integrated numerically. Accuracy degrades as `x -> 0`
/// because of the `u^-2` singularity; results are only meaningful for
/// `x >= 0.1` at the default panel count.
pub fn double_integral_residual(x: PositiveInput, cfg: &QuadratureConfig) -> f64 {
    let n = cfg.panels();
    let inner = |t: f64| simpson(|u| 1.0 / (u * u), 1.0, t, n);
    simpson(inner, 1.0, x.get(), n)
}

/// The platform natural logarithm.
pub fn reference_log(x: PositiveInput) -> f64 {
    x.get().ln()
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;

    fn px(x: f64) -> PositiveInput {
        PositiveInput::new(x).unwrap()
    }

    #[test]
    fn panel_validation() {
        assert_eq!(QuadratureConfig::new(0), Err(Error::InvalidPanels(0)));
        assert_eq!(QuadratureConfig::new(3), Err(Error::InvalidPanels(3)));
        assert!(QuadratureConfig::new(2).is_ok());
        assert_eq!(QuadratureConfig::default().panels(), 1024);
    }

    #[test]
    fn simpson_is_exact_on_cubics() {
        let f = |t: f64| 2.0 * t * t * t - t + 1.0;
        // antiderivative t^4/2 - t^2/2 + t
        let exact = |t: f64| 0.5 * t.powi(4) - 0.5 * t * t + t;
        let v = simpson(f, -1.0, 3.0, 2);
        assert!((v - (exact(3.0) - exact(-1.0))).abs() < 1e-12);
        let rev = simpson(f, 3.0, -1.0, 4);
        assert!((rev + v).abs() < 1e-12);
    }

    #[test]
    fn residual_examples() {
        let cfg = QuadratureConfig::default();
        assert_eq!(double_integral_residual(px(1.0), &cfg), 0.0);
        // 1 - ln 2 and ln 2 - 1/2
        assert!((double_integral_residual(px(2.0), &cfg) - 0.30685281944005469).abs() <= 1e-9);
        assert!((double_integral_residual(px(0.5), &cfg) - 0.19314718055994531).abs() <= 1e-9);
    }

    #[test]
    fn residual_is_positive() {
        let cfg = QuadratureConfig::default();
        for x in [0.1, 0.3, 0.9, 0.999, 1.001, 1.5, 3.0, 20.0, 50.0] {
            assert!(double_integral_residual(px(x), &cfg) >= -1e-12, "x = {x}");
        }
    }

    #[test]
    fn reference_log_examples() {
        assert_eq!(reference_log(px(1.0)), 0.0);
        assert!((reference_log(px(std::f64::consts::E)) - 1.0).abs() <= f64::EPSILON);
        assert_eq!(reference_log(px(4.0)), 1.3862943611198906);
    }
}
