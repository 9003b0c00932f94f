use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use logseries::{double_integral_residual, eval_log, EvalConfig, PositiveInput, QuadratureConfig};
use logseries_bench::grid_inputs;

fn bench_eval_log(c: &mut Criterion) {
    let inputs = grid_inputs(64);
    let cfg = EvalConfig::default();

    let mut group = c.benchmark_group("eval_log/grid64");
    group.bench_function("series", |b| {
        b.iter(|| {
            for &x in &inputs {
                black_box(eval_log(black_box(x), &cfg));
            }
        })
    });
    group.bench_function("std_ln", |b| {
        b.iter(|| {
            for &x in &inputs {
                black_box(black_box(x.get()).ln());
            }
        })
    });
    group.finish();

    let mut group = c.benchmark_group("eval_log/tol");
    let x = PositiveInput::new(10.0).unwrap();
    for tol in [1e-6, 1e-10, 1e-14] {
        let cfg = EvalConfig::with_tol(tol).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(tol), &cfg, |b, cfg| {
            b.iter(|| eval_log(black_box(x), cfg))
        });
    }
    group.finish();
}

fn bench_quadrature(c: &mut Criterion) {
    let x = PositiveInput::new(2.0).unwrap();
    let mut group = c.benchmark_group("double_integral_residual");
    group.sample_size(20);
    for panels in [64, 256, 1024] {
        let cfg = QuadratureConfig::new(panels).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(panels), &cfg, |b, cfg| {
            b.iter(|| double_integral_residual(black_box(x), cfg))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_eval_log, bench_quadrature);
criterion_main!(benches);
