use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use numrad_bench::{ginibre, DIMS};
use numrad_core::bounds::{BoundInputs, SingleOperator};
use numrad_core::eigen::{hermitian_eigen, hermitian_eigenvalues};
use numrad_core::harness::{run_suite, Ensemble, EnsembleConfig, SuiteOptions};
use numrad_core::radius::{numerical_radius, DEFAULT_TOL};
use numrad_core::{BoundId, BoundParams};

fn radius(c: &mut Criterion) {
    let mut group = c.benchmark_group("numerical_radius");
    for dim in DIMS {
        let m = ginibre(dim);
        group.bench_with_input(BenchmarkId::from_parameter(dim), &m, |b, m| {
            b.iter(|| numerical_radius(black_box(m), DEFAULT_TOL).unwrap())
        });
    }
    group.finish();
}

fn eigen(c: &mut Criterion) {
    let mut group = c.benchmark_group("hermitian_eigen");
    for dim in DIMS {
        let h = ginibre(dim).hermitian_part();
        group.bench_with_input(BenchmarkId::new("jacobi", dim), &h, |b, h| {
            b.iter(|| hermitian_eigen(black_box(h)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("ql", dim), &h, |b, h| {
            b.iter(|| hermitian_eigenvalues(black_box(h)).unwrap())
        });
    }
    group.finish();
}

fn bounds(c: &mut Criterion) {
    let m = ginibre(4);
    c.bench_function("all_bounds_dim4", |b| {
        b.iter(|| {
            let t = SingleOperator::new(black_box(m.clone())).unwrap();
            let inputs = BoundInputs::single(&t);
            for id in BoundId::ALL {
                inputs.form(id, &BoundParams::default()).unwrap().evaluate(1.0).unwrap();
            }
        })
    });
}

fn suite(c: &mut Criterion) {
    let config = EnsembleConfig::new(Ensemble::Ginibre, 4, 10, 42).unwrap();
    let opts = SuiteOptions::default();
    let mut group = c.benchmark_group("suite");
    group.sample_size(10);
    group.bench_function("ginibre_dim4_10_trials", |b| {
        b.iter(|| run_suite(&config, &opts).unwrap())
    });
    group.finish();
}

criterion_group!(benches, radius, eigen, bounds, suite);
criterion_main!(benches);
