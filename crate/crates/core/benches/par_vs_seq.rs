//! Parallel vs sequential benchmarks for the three batch-heavy paths:
//! pairwise orthogonality verification, density box counting, and weight
//! grid evaluation.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use orthopoly::constructions::build_greedy_set;
use orthopoly::density::{density_estimate, density_estimate_seq, lattice_points};
use orthopoly::fixtures::{hexagon_spec, trapezoid};
use orthopoly::verify::{orthogonality_report, orthogonality_report_seq};
use orthopoly::weighted::{weight_grid, weight_grid_seq, WeightEvaluator, WeightMethod};

fn bench_orthogonality(c: &mut Criterion) {
    let p = trapezoid();
    let set = build_greedy_set(&p, 40, 128).expect("greedy set");
    let mut group = c.benchmark_group("orthogonality_report");
    group.bench_with_input(BenchmarkId::new("parallel", 40), &set, |b, set| {
        b.iter(|| orthogonality_report(&p, set, 1e-8))
    });
    group.bench_with_input(BenchmarkId::new("sequential", 40), &set, |b, set| {
        b.iter(|| orthogonality_report_seq(&p, set, 1e-8))
    });
    group.finish();
}

fn bench_density(c: &mut Criterion) {
    let tau = 2.0 * std::f64::consts::PI;
    let basis = vec![vec![tau, 0.0], vec![0.0, tau]];
    let rho = 60.0 * std::f64::consts::PI;
    let points = lattice_points(&basis, 2.0 * rho * 1.01).expect("lattice points");
    let rhos = [rho];
    let mut group = c.benchmark_group("density_estimate");
    group.bench_function("parallel", |b| {
        b.iter(|| density_estimate(&points, 2, 2.0 * rho * 1.01, &rhos))
    });
    group.bench_function("sequential", |b| {
        b.iter(|| density_estimate_seq(&points, 2, 2.0 * rho * 1.01, &rhos))
    });
    group.finish();
}

fn bench_weight_grid(c: &mut Criterion) {
    let spec = hexagon_spec(1, 1);
    let w = WeightEvaluator::new(&spec, WeightMethod::SlicePolytope).expect("evaluator");
    let n = 64;
    let grid: Vec<Vec<f64>> = (0..n * n)
        .map(|i| {
            let x = -0.7 + 1.4 * (i / n) as f64 / (n - 1) as f64;
            let y = -1.2 + 2.4 * (i % n) as f64 / (n - 1) as f64;
            vec![x, y]
        })
        .collect();
    let mut group = c.benchmark_group("weight_grid");
    group.bench_function("parallel", |b| b.iter(|| weight_grid(&w, &grid)));
    group.bench_function("sequential", |b| b.iter(|| weight_grid_seq(&w, &grid)));
    group.finish();
}

criterion_group!(benches, bench_orthogonality, bench_density, bench_weight_grid);
criterion_main!(benches);
