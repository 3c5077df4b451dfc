use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sigflow::sweep::{cycle_tree_family, run_sweep, run_tree_checks, ExecutionMode, SweepConfig};

const MODES: [ExecutionMode; 2] = [ExecutionMode::Sequential, ExecutionMode::Parallel];

fn graph_sweep(c: &mut Criterion) {
    let config = SweepConfig { max_vertices: 3, max_edges: 4, bound: 2 };
    let mut group = c.benchmark_group("graph_sweep");
    group.sample_size(10);
    for mode in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{mode:?}")), &mode, |b, &mode| {
            b.iter(|| black_box(run_sweep(config, mode).1.flows))
        });
    }
    group.finish();
}

fn tree_checks(c: &mut Criterion) {
    let family = cycle_tree_family(SweepConfig { max_vertices: 2, max_edges: 3, bound: 1 }, 400, 8, 1);
    let mut group = c.benchmark_group("tree_checks");
    group.sample_size(10);
    for mode in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{mode:?}")), &mode, |b, &mode| {
            b.iter(|| black_box(run_tree_checks(&family, mode).trees))
        });
    }
    group.finish();
}

criterion_group!(benches, graph_sweep, tree_checks);
criterion_main!(benches);
