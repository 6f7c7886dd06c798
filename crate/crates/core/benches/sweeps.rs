use std::hint::black_box;
use std::time::Duration;

use chainvol::classify::{self, ChainLinkId};
use chainvol::numerics::lobachevsky_interval;
use chainvol::reference::{self, ReferenceSet};
use chainvol::{roots, Context, Execution, Interval};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn lambda_series(c: &mut Criterion) {
    let mut group = c.benchmark_group("lambda");
    let theta = Interval::point(0.3);
    for tol in [1e-10, 1e-12] {
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, tol), &tol, |b, &tol| {
                b.iter(|| lobachevsky_interval(black_box(theta), tol, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn classification_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify_sweep");
    let ids: Vec<ChainLinkId> = (5..=400)
        .flat_map(|n| (-16..=16).map(move |r| ChainLinkId::new(n, r)))
        .collect();
    for (name, exec) in MODES {
        let ctx = Context::new(1e-12).unwrap().with_execution(exec);
        group.bench_function(name, |b| b.iter(|| classify::classify_many(&ctx, black_box(&ids))));
    }
    group.finish();
}

fn r_scan(c: &mut Criterion) {
    let mut group = c.benchmark_group("r_scan");
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| roots::r_max_scan(29.0, 30.5, 1e-4, exec).unwrap()));
    }
    group.finish();
}

fn reference_check(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_reference");
    let set = ReferenceSet::bundled();
    for (name, exec) in MODES {
        let ctx = Context::new(1e-12).unwrap().with_execution(exec);
        group.bench_function(name, |b| b.iter(|| reference::verify_reference(&ctx, set)));
    }
    group.finish();
}

fn config() -> Criterion {
    Criterion::default()
        .sample_size(10)
        .warm_up_time(Duration::from_millis(500))
        .measurement_time(Duration::from_secs(3))
}

criterion_group! {
    name = sweeps;
    config = config();
    targets = lambda_series, classification_sweep, r_scan, reference_check
}
criterion_main!(sweeps);
