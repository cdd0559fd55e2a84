//! Independent verification of orthogonality: every pairwise difference of
//! an orthogonal set must be a zero of the polytope's Fourier transform,
//! which is checked against the triangulation oracle (never against the
//! construction's own arithmetic).

use crate::constructions::OrthoSet;
use crate::fourier::FourierEvaluator;
use crate::geometry::Polytope;
use crate::scalar::Scalar;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub pair_count: usize,
    /// Max over pairs of `|F_P(lambda - lambda')| / |P|`.
    pub max_residual: f64,
    pub failing_pairs: Vec<(usize, usize)>,
    pub tolerance: f64,
    /// True when residuals were taken against a weighted inner product
    /// rather than the plain indicator transform.
    pub weighted: bool,
}

impl VerificationReport {
    pub fn pass(&self) -> bool {
        self.max_residual <= self.tolerance
    }
}

/// Evaluates `F_P` at all pairwise differences of `set` and reports
/// residuals relative to `|P|`. Parallel over pairs when the `parallel`
/// feature is enabled.
pub fn orthogonality_report<S: Scalar>(
    p: &Polytope<S>,
    set: &OrthoSet,
    tol: f64,
) -> VerificationReport {
    let ev = FourierEvaluator::new(p);
    let volume = ev.volume();
    let pairs = all_pairs(set.points.len());

    #[cfg(feature = "parallel")]
    let residuals: Vec<f64> = pairs
        .par_iter()
        .map(|&(i, j)| pair_residual(&ev, set, i, j, volume))
        .collect();
    #[cfg(not(feature = "parallel"))]
    let residuals: Vec<f64> = pairs
        .iter()
        .map(|&(i, j)| pair_residual(&ev, set, i, j, volume))
        .collect();

    assemble(pairs, residuals, tol)
}

/// Sequential twin of `orthogonality_report`, kept callable regardless of
/// features so the benchmark suite can compare both paths.
pub fn orthogonality_report_seq<S: Scalar>(
    p: &Polytope<S>,
    set: &OrthoSet,
    tol: f64,
) -> VerificationReport {
    let ev = FourierEvaluator::new(p);
    let volume = ev.volume();
    let pairs = all_pairs(set.points.len());
    let residuals: Vec<f64> = pairs
        .iter()
        .map(|&(i, j)| pair_residual(&ev, set, i, j, volume))
        .collect();
    assemble(pairs, residuals, tol)
}

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in 0..i {
            pairs.push((i, j));
        }
    }
    pairs
}

fn pair_residual(
    ev: &FourierEvaluator,
    set: &OrthoSet,
    i: usize,
    j: usize,
    volume: f64,
) -> f64 {
    let diff: Vec<f64> = set.points[i]
        .iter()
        .zip(&set.points[j])
        .map(|(a, b)| a - b)
        .collect();
    ev.eval(&diff).norm() / volume
}

fn assemble(
    pairs: Vec<(usize, usize)>,
    residuals: Vec<f64>,
    tol: f64,
) -> VerificationReport {
    let max_residual = residuals.iter().cloned().fold(0.0, f64::max);
    let failing_pairs = pairs
        .iter()
        .zip(&residuals)
        .filter(|(_, &r)| r > tol)
        .map(|(&p, _)| p)
        .collect();
    VerificationReport {
        pair_count: pairs.len(),
        max_residual,
        failing_pairs,
        tolerance: tol,
        weighted: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_greedy_set, Provenance};
    use crate::geometry::hull_from_vertices;
    use crate::rat::rat_i64;
    use crate::scalar::Rat;

    fn trapezoid() -> Polytope<Rat> {
        let pts: Vec<Vec<Rat>> = [[1, 0], [-1, 0], [2, 1], [-2, 1]]
            .iter()
            .map(|p| p.iter().map(|&c| rat_i64(c)).collect())
            .collect();
        hull_from_vertices(&pts, 2).unwrap()
    }

    #[test]
    fn greedy_set_passes_and_corrupted_set_fails() {
        let p = trapezoid();
        let set = build_greedy_set(&p, 10, 16).unwrap();
        let report = orthogonality_report(&p, &set, 1e-8);
        assert_eq!(report.pair_count, 45);
        assert!(report.pass(), "max residual {}", report.max_residual);

        let mut bad = set.clone();
        bad.points[3][0] += 0.1;
        let report = orthogonality_report(&p, &bad, 1e-8);
        assert!(!report.pass());
        assert!(!report.failing_pairs.is_empty());
    }

    #[test]
    fn singleton_set_passes_vacuously() {
        let p = trapezoid();
        let set = OrthoSet {
            dim: 2,
            points: vec![vec![0.0, 0.0]],
            provenance: Provenance::GreedyLattice,
            scale: 1.0,
            integer_coords: None,
        };
        let report = orthogonality_report(&p, &set, 1e-8);
        assert_eq!(report.pair_count, 0);
        assert!(report.pass());
    }

    #[test]
    fn sequential_path_matches_parallel_path() {
        let p = trapezoid();
        let set = build_greedy_set(&p, 8, 16).unwrap();
        let a = orthogonality_report(&p, &set, 1e-8);
        let b = orthogonality_report_seq(&p, &set, 1e-8);
        assert_eq!(a.pair_count, b.pair_count);
        assert_eq!(a.max_residual, b.max_residual);
    }
}
