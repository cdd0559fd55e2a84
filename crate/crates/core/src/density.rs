//! Empirical upper/lower density of a point set: counts of points in
//! translated half-open boxes `x + [0, rho)^d`, with the sup/inf over the
//! translation x approximated on an anchor grid.

use crate::error::{Error, Result};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Anchor-grid pitch is `rho / ANCHOR_DIVISIONS`; anchors range over
/// `[-rho, rho]^d`, so the source must cover sup-norm radius `2 rho`.
pub const ANCHOR_DIVISIONS: usize = 8;

#[derive(Debug, Clone)]
pub struct DensityEstimate {
    pub rhos: Vec<f64>,
    pub sup_counts: Vec<usize>,
    pub inf_counts: Vec<usize>,
    /// `sup_counts[i] / rhos[i]^d`
    pub sup_ratios: Vec<f64>,
    pub inf_ratios: Vec<f64>,
    /// Anchor-averaged `count / rho^d` — boundary effects average out, so
    /// this converges to the density much faster than sup/inf do.
    pub mean_ratios: Vec<f64>,
}

/// Counts `|points ∩ (x + [0, rho)^d)|` over anchors `x` on a grid of pitch
/// `rho/8` in `[-rho, rho]^d`, for each requested `rho`.
///
/// `covered_radius` is the caller's guarantee that every point of the
/// underlying set with sup-norm at most that radius is present in `points`;
/// anchored boxes reach out to `2 rho`, so each `rho` must satisfy
/// `2 rho <= covered_radius`.
pub fn density_estimate(
    points: &[Vec<f64>],
    dim: usize,
    covered_radius: f64,
    rhos: &[f64],
) -> Result<DensityEstimate> {
    estimate_impl(points, dim, covered_radius, rhos, true)
}

/// Single-threaded twin of `density_estimate`; same results, used as the
/// baseline in the parallel-speedup benches.
pub fn density_estimate_seq(
    points: &[Vec<f64>],
    dim: usize,
    covered_radius: f64,
    rhos: &[f64],
) -> Result<DensityEstimate> {
    estimate_impl(points, dim, covered_radius, rhos, false)
}

fn anchor_counts(points: &[Vec<f64>], anchors: &[Vec<f64>], rho: f64, parallel: bool) -> Vec<usize> {
    #[cfg(feature = "parallel")]
    if parallel {
        return anchors
            .par_iter()
            .map(|x| count_in_box(points, x, rho))
            .collect();
    }
    let _ = parallel;
    anchors
        .iter()
        .map(|x| count_in_box(points, x, rho))
        .collect()
}

fn estimate_impl(
    points: &[Vec<f64>],
    dim: usize,
    covered_radius: f64,
    rhos: &[f64],
    parallel: bool,
) -> Result<DensityEstimate> {
    if points.is_empty() || rhos.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut sup_counts = Vec::with_capacity(rhos.len());
    let mut inf_counts = Vec::with_capacity(rhos.len());
    let mut mean_ratios = Vec::with_capacity(rhos.len());
    for &rho in rhos {
        if 2.0 * rho > covered_radius * (1.0 + 1e-12) {
            return Err(Error::SourceTooSmall {
                covered: covered_radius,
                needed: 2.0 * rho,
            });
        }
        let anchors = anchor_grid(dim, rho);
        let counts = anchor_counts(points, &anchors, rho, parallel);

        sup_counts.push(counts.iter().copied().max().unwrap_or(0));
        inf_counts.push(counts.iter().copied().min().unwrap_or(0));
        let mean = counts.iter().sum::<usize>() as f64 / counts.len() as f64;
        mean_ratios.push(mean / rho.powi(dim as i32));
    }
    let norm = |counts: &[usize]| {
        counts
            .iter()
            .zip(rhos)
            .map(|(&c, &rho)| c as f64 / rho.powi(dim as i32))
            .collect()
    };
    Ok(DensityEstimate {
        rhos: rhos.to_vec(),
        sup_ratios: norm(&sup_counts),
        inf_ratios: norm(&inf_counts),
        mean_ratios,
        sup_counts,
        inf_counts,
    })
}

/// All integer combinations of the basis rows with sup-norm at most
/// `radius` — an exhaustive point source for `density_estimate`.
pub fn lattice_points(basis: &[Vec<f64>], radius: f64) -> Result<Vec<Vec<f64>>> {
    let m = basis.len();
    let dim = basis.first().map(Vec::len).ok_or(Error::EmptyInput)?;
    if m != dim {
        return Err(Error::DegenerateInput { rank: m, dim });
    }
    let inv = crate::linalg::invert(&basis.to_vec(), 1e-12)?;
    // x = alpha B and alpha = x B^{-1}; |alpha_i| <= radius * colsum_i(B^{-1})
    let bounds: Vec<i64> = (0..m)
        .map(|i| {
            let colsum: f64 = (0..m).map(|j| inv[j][i].abs()).sum();
            (radius * colsum).floor() as i64 + 1
        })
        .collect();
    let mut out = Vec::new();
    let mut alpha: Vec<i64> = bounds.iter().map(|b| -b).collect();
    loop {
        let x: Vec<f64> = (0..dim)
            .map(|j| {
                alpha
                    .iter()
                    .zip(basis)
                    .map(|(&a, row)| a as f64 * row[j])
                    .sum()
            })
            .collect();
        if x.iter().all(|c| c.abs() <= radius) {
            out.push(x);
        }
        let mut i = m;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if alpha[i] < bounds[i] {
                alpha[i] += 1;
                for (a, b) in alpha.iter_mut().zip(&bounds).skip(i + 1) {
                    *a = -b;
                }
                break;
            }
        }
    }
}

fn anchor_grid(dim: usize, rho: f64) -> Vec<Vec<f64>> {
    let pitch = rho / ANCHOR_DIVISIONS as f64;
    let steps = 2 * ANCHOR_DIVISIONS; // covers [-rho, rho]
    let mut anchors = vec![Vec::new()];
    for _ in 0..dim {
        let mut next = Vec::with_capacity(anchors.len() * (steps + 1));
        for a in &anchors {
            for s in 0..=steps {
                let mut b = a.clone();
                b.push(-rho + pitch * s as f64);
                next.push(b);
            }
        }
        anchors = next;
    }
    anchors
}

fn count_in_box(points: &[Vec<f64>], anchor: &[f64], rho: f64) -> usize {
    points
        .iter()
        .filter(|p| {
            p.iter()
                .zip(anchor)
                .all(|(&c, &a)| c >= a && c < a + rho)
        })
        .count()
}
