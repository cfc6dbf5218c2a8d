use criterion::{criterion_group, criterion_main, Criterion};
use qubitfit_core::{
    closed_form_expectation, cubic_coefficients, fhat, make_grid, optimize, performance_index,
    CircuitParams, OptimizerConfig, TargetFunction,
};
use std::hint::black_box;

fn params() -> CircuitParams {
    CircuitParams::new(1.373, 1.770, [-0.081, 2.260, 2.272, 4.954]).unwrap()
}

fn expectation(c: &mut Criterion) {
    let p = params();
    c.bench_function("fhat_simulator", |b| {
        b.iter(|| fhat(black_box(&p), black_box(0.37)))
    });
    c.bench_function("fhat_closed_form", |b| {
        b.iter(|| closed_form_expectation(black_box(&p), black_box(0.37)))
    });
    c.bench_function("cubic_coefficients", |b| {
        b.iter(|| cubic_coefficients(black_box(&p)))
    });
}

fn objective(c: &mut Criterion) {
    let p = params();
    let grid = make_grid(30, 1.5).unwrap();
    c.bench_function("performance_index_n30", |b| {
        b.iter(|| performance_index(black_box(&p), &TargetFunction::Quadratic, &grid))
    });
}

fn training(c: &mut Criterion) {
    let grid = make_grid(30, 1.5).unwrap();
    let cfg = OptimizerConfig::default();
    let mut group = c.benchmark_group("chemotaxis");
    group.sample_size(10);
    group.bench_function("single_run_5000", |b| {
        b.iter(|| optimize(&TargetFunction::Sigmoid, &grid, black_box(&cfg)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, expectation, objective, training);
criterion_main!(benches);
