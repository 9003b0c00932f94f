use std::hint::black_box;
use std::time::Instant;

use logseries::inequalities::{AMGM_HOLD_TOL, CHORD_TOL, TANGENT_GAP_TOL};
use logseries::sampling::{log_grid, seeded_rng, LogUniform};
use logseries::{
    amgm_check, concavity_check, double_integral_residual, eval_log, reference_log, tangent_at,
    tangent_line_gap, trace, EvalConfig, PositiveInput, QuadratureConfig,
};
use rand::Rng;

use crate::table::{key_values, Cell, OutputFormat, Table};

/// Largest |quadrature - series| accepted by `check integral`.
pub const INTEGRAL_AGREEMENT_TOL: f64 = 1e-8;

/// Range sampled by the randomized checks.
const SAMPLE_LO: f64 = 1e-8;
const SAMPLE_HI: f64 = 100.0;

const TIMING_BATCHES: usize = 5;
const TIMING_REPS: usize = 1000;

/// A usage or domain problem; maps to exit status 1.
#[derive(Debug)]
pub struct UsageError(pub String);

impl From<logseries::Error> for UsageError {
    fn from(e: logseries::Error) -> Self {
        UsageError(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug)]
pub struct Report {
    pub stdout: String,
    pub status: Status,
    /// First violation or the reason for non-convergence.
    pub failure: Option<String>,
}

impl Report {
    fn pass(stdout: String) -> Self {
        Self {
            stdout,
            status: Status::Pass,
            failure: None,
        }
    }

    fn from_failure(stdout: String, failure: Option<String>) -> Self {
        let status = if failure.is_some() {
            Status::Fail
        } else {
            Status::Pass
        };
        Self {
            stdout,
            status,
            failure,
        }
    }
}

pub type CmdResult = Result<Report, UsageError>;

fn positive(x: f64) -> Result<PositiveInput, UsageError> {
    Ok(PositiveInput::new(x)?)
}

pub fn eval(x: f64, cfg: &EvalConfig, format: OutputFormat) -> CmdResult {
    let r = eval_log(positive(x)?, cfg);
    let out = key_values(
        &[
            ("x", x.into()),
            ("log_value", r.log_value.into()),
            ("residual", r.residual.into()),
            ("terms_used", r.terms_used.into()),
            ("tail_estimate", r.tail_estimate.into()),
            ("converged", r.converged.into()),
        ],
        format,
    );
    let failure = (!r.converged).then(|| {
        format!(
            "not converged after {} terms: tail estimate {:e} > tol {:e}",
            r.terms_used,
            r.tail_estimate,
            cfg.tol()
        )
    });
    Ok(Report::from_failure(out, failure))
}

pub fn trace_table(x: f64, n: u32, format: OutputFormat) -> CmdResult {
    let xm1 = positive(x)?.get() - 1.0;
    let mut t = Table::new(&[
        "k",
        "u_k",
        "term_k",
        "partial_sum_k",
        "diff_quotient_k",
        "telescope_defect",
    ]);
    for row in trace(positive(x)?, n) {
        t.push(vec![
            row.k.into(),
            row.u_k.into(),
            row.term_k.into(),
            row.partial_sum_k.into(),
            row.diff_quotient_k.into(),
            (row.partial_sum_k + row.diff_quotient_k - xm1).into(),
        ]);
    }
    Ok(Report::pass(t.render(format)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum CheckKind {
    Tangent,
    Concavity,
    Amgm,
    Integral,
}

#[derive(Debug, Clone, Default)]
pub struct CheckInputs {
    pub x: Option<f64>,
    pub a: Option<f64>,
    pub y: Option<f64>,
    pub lambda: Option<f64>,
    pub values: Option<Vec<f64>>,
    pub panels: usize,
    pub seed: u64,
    pub count: Option<usize>,
}

pub fn check(kind: CheckKind, inp: &CheckInputs, format: OutputFormat) -> CmdResult {
    match kind {
        CheckKind::Tangent => check_tangent(inp, format),
        CheckKind::Concavity => check_concavity(inp, format),
        CheckKind::Amgm => check_amgm(inp, format),
        CheckKind::Integral => check_integral(inp, format),
    }
}

fn pass_cell(ok: bool) -> Cell {
    Cell::from(if ok { "PASS" } else { "FAIL" })
}

/// Summary of a randomized sweep: the worst (smallest) value and the first
/// value that fell below the bound.
struct Sweep {
    evaluations: usize,
    worst: f64,
    worst_at: String,
    first_violation: Option<String>,
}

impl Sweep {
    fn new() -> Self {
        Self {
            evaluations: 0,
            worst: f64::INFINITY,
            worst_at: String::new(),
            first_violation: None,
        }
    }

    fn record(&mut self, value: f64, bound: f64, at: impl Fn() -> String) {
        self.evaluations += 1;
        if value < self.worst {
            self.worst = value;
            self.worst_at = at();
        }
        if value < bound && self.first_violation.is_none() {
            self.first_violation = Some(format!("{} = {value:e} < {bound:e}", at()));
        }
    }

    fn report(self, check: &str, seed: u64, format: OutputFormat) -> Report {
        let out = key_values(
            &[
                ("check", check.into()),
                ("evaluations", self.evaluations.into()),
                ("seed", Cell::Int(seed)),
                ("min_value", self.worst.into()),
                ("min_at", Cell::Text(self.worst_at)),
                ("pass", pass_cell(self.first_violation.is_none())),
            ],
            format,
        );
        Report::from_failure(out, self.first_violation)
    }
}

fn check_tangent(inp: &CheckInputs, format: OutputFormat) -> CmdResult {
    match (inp.a, inp.x) {
        (Some(a), Some(x)) => {
            let gap = tangent_at(positive(a)?, positive(x)?);
            let ok = gap >= -CHORD_TOL;
            let out = key_values(
                &[
                    ("a", a.into()),
                    ("x", x.into()),
                    ("gap", gap.into()),
                    ("pass", pass_cell(ok)),
                ],
                format,
            );
            let failure = (!ok).then(|| format!("tangent gap at a={a}, x={x} is {gap:e}"));
            Ok(Report::from_failure(out, failure))
        }
        (Some(_), None) => Err(UsageError("check tangent: --a requires --x".into())),
        (None, Some(x)) => {
            let gap = tangent_line_gap(positive(x)?);
            let ok = gap >= -TANGENT_GAP_TOL;
            let out = key_values(
                &[
                    ("x", x.into()),
                    ("gap", gap.into()),
                    ("equality", (gap.abs() <= TANGENT_GAP_TOL).into()),
                    ("pass", pass_cell(ok)),
                ],
                format,
            );
            let failure = (!ok).then(|| format!("tangent-line gap at x={x} is {gap:e}"));
            Ok(Report::from_failure(out, failure))
        }
        (None, None) => {
            let mut rng = seeded_rng(inp.seed);
            let dist = LogUniform::new(SAMPLE_LO, SAMPLE_HI);
            let mut sweep = Sweep::new();
            for _ in 0..inp.count.unwrap_or(10_000) {
                let x = dist.sample(&mut rng);
                let a = dist.sample(&mut rng);
                let gap = tangent_line_gap(positive(x)?);
                sweep.record(gap, -TANGENT_GAP_TOL, || format!("x={x}"));
                let gap = tangent_at(positive(a)?, positive(x)?);
                sweep.record(gap, -CHORD_TOL, || format!("a={a} x={x}"));
            }
            Ok(sweep.report("tangent", inp.seed, format))
        }
    }
}

fn check_concavity(inp: &CheckInputs, format: OutputFormat) -> CmdResult {
    match (inp.x, inp.y, inp.lambda) {
        (Some(x), Some(y), Some(lambda)) => {
            let gap = concavity_check(positive(x)?, positive(y)?, lambda)?;
            let ok = gap >= -CHORD_TOL;
            let out = key_values(
                &[
                    ("x", x.into()),
                    ("y", y.into()),
                    ("lambda", lambda.into()),
                    ("gap", gap.into()),
                    ("pass", pass_cell(ok)),
                ],
                format,
            );
            let failure =
                (!ok).then(|| format!("chord gap at x={x}, y={y}, lambda={lambda} is {gap:e}"));
            Ok(Report::from_failure(out, failure))
        }
        (None, None, None) => {
            let mut rng = seeded_rng(inp.seed);
            let dist = LogUniform::new(SAMPLE_LO, SAMPLE_HI);
            let mut sweep = Sweep::new();
            for _ in 0..inp.count.unwrap_or(10_000) {
                let x = dist.sample(&mut rng);
                let y = dist.sample(&mut rng);
                let lambda: f64 = rng.random();
                let gap = concavity_check(positive(x)?, positive(y)?, lambda)?;
                sweep.record(gap, -CHORD_TOL, || format!("x={x} y={y} lambda={lambda}"));
            }
            Ok(sweep.report("concavity", inp.seed, format))
        }
        _ => Err(UsageError(
            "check concavity: give all of --x, --y, --lambda or none of them".into(),
        )),
    }
}

fn check_amgm(inp: &CheckInputs, format: OutputFormat) -> CmdResult {
    if let Some(values) = &inp.values {
        let values = values
            .iter()
            .map(|&v| positive(v))
            .collect::<Result<Vec<_>, _>>()?;
        let r = amgm_check(&values)?;
        let out = key_values(
            &[
                ("n", values.len().into()),
                ("arithmetic_mean", r.arithmetic_mean.into()),
                ("geometric_mean", r.geometric_mean.into()),
                ("holds", r.holds.into()),
                ("equality", r.equality.into()),
                ("pass", pass_cell(r.holds)),
            ],
            format,
        );
        let failure = (!r.holds).then(|| {
            format!(
                "geometric mean {} exceeds arithmetic mean {}",
                r.geometric_mean, r.arithmetic_mean
            )
        });
        return Ok(Report::from_failure(out, failure));
    }

    let mut rng = seeded_rng(inp.seed);
    let dist = LogUniform::new(SAMPLE_LO, SAMPLE_HI);
    let mut sweep = Sweep::new();
    for i in 0..inp.count.unwrap_or(1_000) {
        let len = rng.random_range(1..=16);
        // every tenth vector is constant and must report equality
        let values: Vec<f64> = if i % 10 == 0 {
            vec![dist.sample(&mut rng); len]
        } else {
            (0..len).map(|_| dist.sample(&mut rng)).collect()
        };
        let inputs = values
            .iter()
            .map(|&v| positive(v))
            .collect::<Result<Vec<_>, _>>()?;
        let r = amgm_check(&inputs)?;
        // margin is AM - GM relative to the slack scale; negative margin
        // beyond the slack is a violation
        let margin = (r.arithmetic_mean - r.geometric_mean) / r.arithmetic_mean.max(1.0);
        let listed = || {
            let v: Vec<String> = values.iter().map(f64::to_string).collect();
            format!("values={}", v.join(";"))
        };
        sweep.record(margin, -AMGM_HOLD_TOL, listed);
        if i % 10 == 0 && !r.equality && sweep.first_violation.is_none() {
            sweep.first_violation = Some(format!("constant vector missed equality: {}", listed()));
        }
    }
    Ok(sweep.report("amgm", inp.seed, format))
}

fn check_integral(inp: &CheckInputs, format: OutputFormat) -> CmdResult {
    let cfg = QuadratureConfig::new(inp.panels)?;
    let xs = match inp.x {
        Some(x) => vec![x],
        None => vec![0.25, 0.5, 2.0, 5.0, 10.0],
    };
    let mut t = Table::new(&["x", "quadrature", "series_residual", "difference", "pass"]);
    let mut failure = None;
    for x in xs {
        let px = positive(x)?;
        let quad = double_integral_residual(px, &cfg);
        let series = x - 1.0 - eval_log(px, &EvalConfig::default()).log_value;
        let diff = quad - series;
        let ok = diff.abs() <= INTEGRAL_AGREEMENT_TOL;
        if !ok && failure.is_none() {
            failure = Some(format!(
                "x={x}: quadrature and series differ by {diff:e} (> {INTEGRAL_AGREEMENT_TOL:e}) at {} panels",
                cfg.panels()
            ));
        }
        t.push(vec![
            x.into(),
            quad.into(),
            series.into(),
            diff.into(),
            pass_cell(ok),
        ]);
    }
    Ok(Report::from_failure(t.render(format), failure))
}

/// Parses `lo:hi:count` into a log-spaced inclusive grid.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>, UsageError> {
    let bad = || {
        UsageError(format!(
            "invalid grid '{spec}': expected lo:hi:count with 0 < lo <= hi, count >= 1"
        ))
    };
    let parts: Vec<&str> = spec.split(':').collect();
    let [lo, hi, count] = parts.as_slice() else {
        return Err(bad());
    };
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    let count: usize = count.trim().parse().map_err(|_| bad())?;
    if !(lo > 0.0 && lo.is_finite() && hi.is_finite() && lo <= hi && count >= 1) {
        return Err(bad());
    }
    Ok(log_grid(lo, hi, count))
}

fn median(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}

fn time_per_eval(x: PositiveInput, cfg: &EvalConfig) -> f64 {
    let batch = || {
        let start = Instant::now();
        for _ in 0..TIMING_REPS {
            black_box(eval_log(black_box(x), cfg));
        }
        start.elapsed().as_nanos() as f64 / TIMING_REPS as f64
    };
    batch(); // warm-up
    let mut batches: Vec<f64> = (0..TIMING_BATCHES).map(|_| batch()).collect();
    batches.sort_by(f64::total_cmp);
    median(&batches)
}

pub fn bench(grid: &[f64], cfg: &EvalConfig, format: OutputFormat) -> CmdResult {
    let mut t = Table::new(&[
        "kind",
        "x",
        "terms_used",
        "log_value",
        "reference_log",
        "abs_error",
        "rel_error",
        "converged",
        "ns_per_eval",
    ]);
    t.comment(format!(
        "timing: monotonic clock, 1 warm-up batch, median of {TIMING_BATCHES} batches x {TIMING_REPS} evaluations; ns_per_eval columns are not deterministic"
    ));
    t.comment("rel_error = abs_error / max(1, |reference_log|)");

    let mut terms = Vec::with_capacity(grid.len());
    let mut times = Vec::with_capacity(grid.len());
    let (mut max_abs, mut max_rel) = (0.0f64, 0.0f64);
    let mut not_converged = None;
    for &x in grid {
        let px = positive(x)?;
        let r = eval_log(px, cfg);
        let reference = reference_log(px);
        let abs = (r.log_value - reference).abs();
        let rel = abs / reference.abs().max(1.0);
        let ns = time_per_eval(px, cfg);
        max_abs = max_abs.max(abs);
        max_rel = max_rel.max(rel);
        terms.push(f64::from(r.terms_used));
        times.push(ns);
        if !r.converged && not_converged.is_none() {
            not_converged = Some(format!("x={x}: not converged after {} terms", r.terms_used));
        }
        t.push(vec![
            "point".into(),
            x.into(),
            r.terms_used.into(),
            r.log_value.into(),
            reference.into(),
            abs.into(),
            rel.into(),
            r.converged.into(),
            ns.into(),
        ]);
    }
    terms.sort_by(f64::total_cmp);
    times.sort_by(f64::total_cmp);
    t.push(vec![
        "summary".into(),
        Cell::Empty,
        median(&terms).into(),
        Cell::Empty,
        Cell::Empty,
        max_abs.into(),
        max_rel.into(),
        not_converged.is_none().into(),
        median(&times).into(),
    ]);
    Ok(Report::from_failure(t.render(format), not_converged))
}
