//! Positive-term series for `x - 1 - ln x`.
//!
//! For `x > 0` the identity
//!
//! ```text
//! x - 1 - ln x = sum_{k >= 1} 2^(k-1) * (x^(2^-k) - 1)^2
//! ```
//!
//! follows by telescoping the difference quotients `D_k = 2^k (x^(2^-k) - 1)`,
//! which tend to `ln x`. Every term is a weighted square, so the partial sums
//! `S_n` increase monotonically and `S_n + D_n = x - 1` holds at every depth.
//!
//! The decrement `u_k = x^(2^-k) - 1` is never formed by subtracting 1 from a
//! root close to 1. It is carried through the chain
//! `u_{k+1} = u_k / (r_{k+1} + 1)` with `r_{k+1} = sqrt(r_k)`, so the relative
//! error of `u_k` grows only like `O(k * eps)`.

use crate::error::{Error, Result};

/// A validated series argument: finite and strictly positive.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct PositiveInput(f64);

impl PositiveInput {
    pub fn new(x: f64) -> Result<Self> {
        if !x.is_finite() {
            return Err(Error::NotFinite(x));
        }
        if x <= 0.0 {
            return Err(Error::NonPositive(x));
        }
        Ok(Self(x))
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for PositiveInput {
    type Error = Error;

    fn try_from(x: f64) -> Result<Self> {
        Self::new(x)
    }
}

impl From<PositiveInput> for f64 {
    fn from(x: PositiveInput) -> f64 {
        x.0
    }
}

/// Depth `k` together with the decrement `u = x^(2^-k) - 1` and the root
/// `x^(2^-k)` it was derived from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecrementState {
    pub k: u32,
    pub u: f64,
    pub root: f64,
}

/// Stopping parameters for [`eval_log`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalConfig {
    tol: f64,
    max_terms: u32,
    safety_factor: f64,
}

impl EvalConfig {
    pub const DEFAULT_TOL: f64 = 1e-14;
    pub const DEFAULT_MAX_TERMS: u32 = 96;
    pub const DEFAULT_SAFETY_FACTOR: f64 = 2.0;

    pub fn new(tol: f64, max_terms: u32, safety_factor: f64) -> Result<Self> {
        if tol.is_nan() || tol <= 0.0 || tol.is_infinite() {
            return Err(Error::InvalidConfig("tol must be positive and finite"));
        }
        if max_terms == 0 {
            return Err(Error::InvalidConfig("max_terms must be at least 1"));
        }
        if safety_factor.is_nan() || safety_factor < 1.0 || safety_factor.is_infinite() {
            return Err(Error::InvalidConfig(
                "safety_factor must be finite and at least 1",
            ));
        }
        Ok(Self {
            tol,
            max_terms,
            safety_factor,
        })
    }

    pub fn with_tol(tol: f64) -> Result<Self> {
        Self::new(tol, Self::DEFAULT_MAX_TERMS, Self::DEFAULT_SAFETY_FACTOR)
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn max_terms(&self) -> u32 {
        self.max_terms
    }

    pub fn safety_factor(&self) -> f64 {
        self.safety_factor
    }
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            tol: Self::DEFAULT_TOL,
            max_terms: Self::DEFAULT_MAX_TERMS,
            safety_factor: Self::DEFAULT_SAFETY_FACTOR,
        }
    }
}

/// Outcome of [`eval_log`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogApproxResult {
    /// `D_n = 2^n u_n`, the approximation of `ln x`.
    pub log_value: f64,
    /// `S_n`, the partial sum approximating `x - 1 - ln x`.
    pub residual: f64,
    pub terms_used: u32,
    /// `safety_factor * term_n`.
    pub tail_estimate: f64,
    pub converged: bool,
}

/// One depth of the derivation, as emitted by [`trace`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow {
    pub k: u32,
    pub u_k: f64,
    pub term_k: f64,
    pub partial_sum_k: f64,
    pub diff_quotient_k: f64,
}

/// Consecutive term ratio `term_{k+1} / term_k`.
///
/// `deficit` is `1/2 - term_{k+1}/term_k`, evaluated in the cancellation-free
/// form `v (v + 4) / (2 (v + 2)^2)` with `v = u_{k+1}`. Past depth ~50 the
/// ratio itself rounds to exactly 0.5 in binary64; the deficit keeps its sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TermRatio {
    pub ratio: f64,
    pub deficit: f64,
}

#[inline]
fn pow2(k: u32) -> f64 {
    debug_assert!(k <= 1023);
    f64::from_bits(u64::from(1023 + k) << 52)
}

/// `v * 2^k` by exact binary scaling (barring overflow or underflow).
pub(crate) fn scale_pow2(mut v: f64, mut k: u32) -> f64 {
    while k > 1000 {
        v *= pow2(1000);
        k -= 1000;
    }
    v * pow2(k)
}

/// One square-root step on a decrement: `sqrt(1 + u) - 1`, evaluated as
/// `u / (sqrt(1 + u) + 1)`.
pub fn decrement_step(u: f64) -> Result<f64> {
    if !u.is_finite() || u <= -1.0 {
        return Err(Error::DecrementDomain(u));
    }
    Ok(u / ((1.0 + u).sqrt() + 1.0))
}

/// Streams `DecrementState`s for `k = 0, 1, 2, ...`.
///
/// The root `x^(2^-k)` is taken from `x` by repeated square roots rather than
/// rebuilt as `1 + u`, which would discard the low bits of `x` when `x` is
/// small.
#[derive(Debug, Clone)]
pub struct Decrements {
    state: DecrementState,
}

impl Decrements {
    pub fn new(x: PositiveInput) -> Self {
        let x = x.get();
        Self {
            state: DecrementState {
                k: 0,
                u: x - 1.0,
                root: x,
            },
        }
    }

    pub fn state(&self) -> DecrementState {
        self.state
    }

    pub fn advance(&mut self) {
        let root = self.state.root.sqrt();
        self.state = DecrementState {
            k: self.state.k + 1,
            u: self.state.u / (root + 1.0),
            root,
        };
    }
}

impl Iterator for Decrements {
    type Item = DecrementState;

    fn next(&mut self) -> Option<DecrementState> {
        let current = self.state;
        self.advance();
        Some(current)
    }
}

/// States `(0, x - 1), (1, u_1), ..., (n, u_n)`.
pub fn iterate_decrements(x: PositiveInput, n: u32) -> Vec<DecrementState> {
    Decrements::new(x).take(n as usize + 1).collect()
}

#[inline]
fn term_unchecked(k: u32, u: f64) -> f64 {
    // (2^k u) * u / 2 rounds identically to 2^(k-1) * u^2, but the product
    // only underflows once u itself does.
    0.5 * (scale_pow2(u, k) * u)
}

/// `2^(k-1) * u_k^2`, the k-th term of the series.
pub fn term(k: u32, u_k: f64) -> Result<f64> {
    if k == 0 {
        return Err(Error::ZeroIndex);
    }
    if !u_k.is_finite() || u_k <= -1.0 {
        return Err(Error::DecrementDomain(u_k));
    }
    Ok(term_unchecked(k, u_k))
}

/// `S_n`, summed in increasing `k`.
pub fn partial_sum(x: PositiveInput, n: u32) -> f64 {
    Decrements::new(x)
        .skip(1)
        .take(n as usize)
        .map(|s| term_unchecked(s.k, s.u))
        .sum()
}

/// `D_n = 2^n (x^(2^-n) - 1)`.
pub fn difference_quotient(x: PositiveInput, n: u32) -> f64 {
    let mut chain = Decrements::new(x);
    for _ in 0..n {
        chain.advance();
    }
    scale_pow2(chain.state().u, n)
}

/// Evaluates `ln x` by streaming the series until
/// `safety_factor * term_n <= tol` or `max_terms` is reached.
///
/// The returned `log_value` is `D_n`, which equals `x - 1 - S_n` up to
/// rounding but does not suffer the cancellation of that difference when
/// `ln x` is small.
pub fn eval_log(x: PositiveInput, cfg: &EvalConfig) -> LogApproxResult {
    let mut chain = Decrements::new(x);
    let mut sum = 0.0;
    loop {
        chain.advance();
        let DecrementState { k, u, .. } = chain.state();
        let t = term_unchecked(k, u);
        sum += t;
        let tail = cfg.safety_factor * t;
        if tail <= cfg.tol || k >= cfg.max_terms {
            return LogApproxResult {
                log_value: scale_pow2(u, k),
                residual: sum,
                terms_used: k,
                tail_estimate: tail,
                converged: tail <= cfg.tol,
            };
        }
    }
}

/// `term_k * 2^k`, which tends to `(ln x)^2 / 2`.
pub fn tail_ratio(x: PositiveInput, k: u32) -> Result<f64> {
    if k == 0 {
        return Err(Error::ZeroIndex);
    }
    if x.get() == 1.0 {
        return Err(Error::DegenerateRatio);
    }
    // term_k * 2^k = 2^(2k-1) u_k^2 = D_k^2 / 2
    let d = difference_quotient(x, k);
    Ok(0.5 * (d * d))
}

/// `term_{k+1} / term_k` together with its distance below 1/2.
pub fn term_ratio(x: PositiveInput, k: u32) -> Result<TermRatio> {
    if k == 0 {
        return Err(Error::ZeroIndex);
    }
    if x.get() == 1.0 {
        return Err(Error::DegenerateRatio);
    }
    let mut chain = Decrements::new(x);
    for _ in 0..k {
        chain.advance();
    }
    let current = chain.state();
    chain.advance();
    let next = chain.state();

    let ratio = term_unchecked(next.k, next.u) / term_unchecked(current.k, current.u);
    let v = next.u;
    let w = v + 2.0;
    let deficit = v * (v + 4.0) / (2.0 * w * w);
    Ok(TermRatio { ratio, deficit })
}

/// Rows `k = 0..=n`; row 0 carries `term_0 = 0`, `S_0 = 0`, `D_0 = x - 1`.
pub fn trace(x: PositiveInput, n: u32) -> Vec<TraceRow> {
    let mut rows = Vec::with_capacity(n as usize + 1);
    let mut sum = 0.0;
    for DecrementState { k, u, .. } in Decrements::new(x).take(n as usize + 1) {
        let term_k = if k == 0 { 0.0 } else { term_unchecked(k, u) };
        sum += term_k;
        rows.push(TraceRow {
            k,
            u_k: u,
            term_k,
            partial_sum_k: sum,
            diff_quotient_k: scale_pow2(u, k),
        });
    }
    rows
}
