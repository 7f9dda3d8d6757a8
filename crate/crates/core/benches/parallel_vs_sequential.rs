use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fracdiff::analysis::properties::{alpha_grid, check_coefficient_bounds};
use fracdiff::analysis::{run_experiment, ExperimentSpec, PublishedTable};
use fracdiff::kernel::AlphaParam;
use fracdiff::problem::{build_grid, manufactured_case, Variant};
use fracdiff::solver::{solve_with, SchemeKind};
use fracdiff::Execution;

const STRATEGIES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn ladder(c: &mut Criterion) {
    let spec = ExperimentSpec::published(PublishedTable::One, 0.5, 4).unwrap();
    let mut g = c.benchmark_group("table1_ladder");
    g.sample_size(10);
    for (name, exec) in STRATEGIES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| run_experiment(&spec, exec).unwrap()));
    }
    g.finish();
}

fn coefficient_sweep(c: &mut Criterion) {
    let alphas = alpha_grid();
    let mut g = c.benchmark_group("coefficient_sweep");
    g.sample_size(10);
    for (name, exec) in STRATEGIES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| check_coefficient_bounds(&alphas, 10_000, exec))
        });
    }
    g.finish();
}

fn large_grid(c: &mut Criterion) {
    let alpha = AlphaParam::new(0.5).unwrap();
    let case = manufactured_case(alpha, Variant::TimeOnly);
    let grid = build_grid(20_000, 40, 1.0, 1.0).unwrap();
    let mut g = c.benchmark_group("large_grid_solve");
    g.sample_size(10);
    for (name, exec) in STRATEGIES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| solve_with(&case.problem, &grid, alpha, SchemeKind::Order2, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, ladder, coefficient_sweep, large_grid);
criterion_main!(benches);
