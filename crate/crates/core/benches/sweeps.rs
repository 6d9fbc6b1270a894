//! Sequential against data-parallel execution of the batch workloads.
//!
//! Without the `parallel` feature both arms run sequentially, which makes the
//! fallback's overhead visible as well.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use modcat::catalog::build_so_n2;
use modcat::metric::brute_force_cyclic_classes;
use modcat::par::Exec;
use modcat::sweep::{count_sweep, gauge_catalog_sweep, so_n2_sweep};

const STRATEGIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn so_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("so_n2_sweep_2_40");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        group.bench_function(name, |b| b.iter(|| so_n2_sweep(black_box(2..=40), exec).unwrap()));
    }
    group.finish();
}

fn round_trip(c: &mut Criterion) {
    let mut group = c.benchmark_group("gauge_catalog_sweep_2_24");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        group.bench_function(name, |b| b.iter(|| gauge_catalog_sweep(black_box(2..=24), exec).unwrap()));
    }
    group.finish();
}

fn counts(c: &mut Criterion) {
    let mut group = c.benchmark_group("count_sweep_2_100");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        group.bench_function(name, |b| b.iter(|| count_sweep(black_box(2..=100), exec).unwrap()));
    }
    group.finish();
}

fn form_classes(c: &mut Criterion) {
    let mut group = c.benchmark_group("brute_force_cyclic_classes");
    for n in [12u64, 16] {
        for (name, exec) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
                b.iter(|| brute_force_cyclic_classes(n, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn axioms(c: &mut Criterion) {
    let ring = build_so_n2(64).unwrap();
    let mut group = c.benchmark_group("verify_axioms_so64");
    for (name, exec) in STRATEGIES {
        group.bench_function(name, |b| b.iter(|| ring.verify_axioms_with(exec)));
    }
    group.finish();
}

criterion_group!(benches, so_sweep, round_trip, counts, form_classes, axioms);
criterion_main!(benches);
