//! Integer kernels of the trailing inverse columns, the resulting frequency
//! lattice, and its density.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::constructions::{shell_points, OrthoSet, Provenance};
use crate::error::{Error, Result};
use crate::intlat::rational_kernel_basis;
use crate::linalg::{self, Mat};
use crate::rat::rat;
use crate::scalar::{Rat, Scalar};

use super::{
    MatrixData, ZonotopeSpec, MAX_RECONSTRUCTION_DENOMINATOR, RECONSTRUCTION_ACCEPT,
    RECONSTRUCTION_REJECT,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelSource {
    /// Kernel of exact rational constraint columns.
    Exact,
    /// Constraint rows rationalized from floating-point data by
    /// continued-fraction reconstruction before taking the kernel.
    Reconstructed,
    /// Supplied by the caller and validated against the constraints.
    User,
}

/// A saturated basis of the integer vectors `kbar` with
/// `<kbar, M^{-1} e_i> = 0` for `i = m+1, ..., d`.
#[derive(Debug, Clone)]
pub struct KernelBasis {
    pub rows: Vec<Vec<BigInt>>,
    pub source: KernelSource,
}

impl KernelBasis {
    pub fn rows_i64(&self) -> Result<Vec<Vec<i64>>> {
        self.rows
            .iter()
            .map(|row| row.iter().map(crate::rat::bigint_to_i64).collect())
            .collect()
    }
}

/// The frequency lattice `Lambda = {pi kbar M^{-1} restricted to the first m
/// coordinates}` assembled from a kernel basis.
#[derive(Debug, Clone)]
pub struct LambdaBuild {
    /// `sigma_i = (<kbar_i, M^{-1}e_1>, ..., <kbar_i, M^{-1}e_m>)`.
    pub sigmas: Vec<Vec<f64>>,
    /// Rows are the `sigma_i`; `Lambda = pi Z^m A`.
    pub a: Mat<f64>,
    /// Rows are the kernel vectors followed by the trailing rows of `M`.
    pub u: Mat<f64>,
    pub det_a: f64,
    pub set: OrthoSet,
}

/// Density of the frequency lattice and the closed-form bound certifying it.
#[derive(Debug, Clone)]
pub struct DensityBound {
    /// Exact lattice density `1 / |det(pi A)| = 1 / (pi^m |det A|)`.
    pub lattice_density: f64,
    /// `pi^{-m} |det M| / |det U|`; equals the lattice density by the
    /// determinant identity `det A = det U / det M`.
    pub bound: f64,
    /// The same quantity with exponent `d` instead of `m`, kept for
    /// comparison; it understates the density whenever `m < d`.
    pub bound_full_exponent: f64,
    /// `|det A - det U / det M|`.
    pub det_identity_residual: f64,
    pub det_a: f64,
    pub det_u: f64,
    pub det_m: f64,
}

/// Computes a saturated integer kernel basis for the spec, or validates the
/// user-supplied one.
pub fn integer_kernel(spec: &ZonotopeSpec) -> Result<KernelBasis> {
    let d = spec.dim();
    let m = spec.m;
    if let Some(user) = &spec.kernel {
        return validate_user_kernel(spec, user);
    }
    match &spec.matrix {
        MatrixData::Exact(mat) => {
            let inv = linalg::invert(mat, 0.0)?;
            // Constraint row i is the (m+i)-th column of M^{-1}.
            let constraints: Vec<Vec<Rat>> = (m..d)
                .map(|col| (0..d).map(|row| inv[row][col].clone()).collect())
                .collect();
            let rows = rational_kernel_basis(&constraints, d);
            if rows.len() != m {
                return Err(Error::NoIntegerKernel);
            }
            Ok(KernelBasis {
                rows,
                source: KernelSource::Exact,
            })
        }
        MatrixData::Numeric(_) => reconstruct_kernel(spec),
    }
}

fn validate_user_kernel(spec: &ZonotopeSpec, user: &[Vec<i64>]) -> Result<KernelBasis> {
    let d = spec.dim();
    let m = spec.m;
    if user.len() != m || user.iter().any(|row| row.len() != d) {
        return Err(Error::NoIntegerKernel);
    }
    let inv = spec.inverse_f64();
    let scale = inv.iter().flatten().fold(1.0_f64, |a, &x| a.max(x.abs()));
    for row in user {
        for col in m..d {
            let dot: f64 = (0..d).map(|j| row[j] as f64 * inv[j][col]).sum();
            if dot.abs() > 1e-9 * scale {
                return Err(Error::NoIntegerKernel);
            }
        }
    }
    let rows_f64: Mat<f64> = user
        .iter()
        .map(|row| row.iter().map(|&x| x as f64).collect())
        .collect();
    if linalg::rank(&rows_f64, 1e-9) != m {
        return Err(Error::NoIntegerKernel);
    }
    Ok(KernelBasis {
        rows: user
            .iter()
            .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
            .collect(),
        source: KernelSource::User,
    })
}

/// Numeric path: find `d - m` coordinates whose constraint block is
/// invertible, express the remaining columns as (hopefully rational) ratios,
/// and take the integer kernel of the rationalized rows.
fn reconstruct_kernel(spec: &ZonotopeSpec) -> Result<KernelBasis> {
    let d = spec.dim();
    let m = spec.m;
    let k = d - m;
    let inv = spec.inverse_f64();
    // v[r][j] = <e_j, M^{-1} e_{m+r}>: row r is the r-th trailing column.
    let v: Mat<f64> = (0..k)
        .map(|r| (0..d).map(|j| inv[j][m + r]).collect())
        .collect();
    let pivots = pivot_columns(&v, k)?;
    let block: Mat<f64> = (0..k)
        .map(|r| pivots.iter().map(|&c| v[r][c]).collect())
        .collect();
    let block_inv = linalg::invert(&block, 1e-12).map_err(|_| Error::NoIntegerKernel)?;
    let reduced = linalg::mat_mul(&block_inv, &v);

    let mut worst = 0.0_f64;
    let mut rational_rows: Vec<Vec<Rat>> = vec![vec![<Rat as Scalar>::zero(); d]; k];
    for r in 0..k {
        for j in 0..d {
            if let Some(pos) = pivots.iter().position(|&c| c == j) {
                rational_rows[r][j] = if pos == r {
                    <Rat as Scalar>::one()
                } else {
                    <Rat as Scalar>::zero()
                };
                continue;
            }
            let x = reduced[r][j];
            let (p, q) = rationalize(x, MAX_RECONSTRUCTION_DENOMINATOR);
            let residual = (x - p as f64 / q as f64).abs() / x.abs().max(1.0);
            worst = worst.max(residual);
            rational_rows[r][j] = rat(p, q);
        }
    }
    if worst > RECONSTRUCTION_REJECT {
        return Err(Error::NoIntegerKernel);
    }
    if worst > RECONSTRUCTION_ACCEPT {
        return Err(Error::AmbiguousReconstruction(worst));
    }
    let rows = rational_kernel_basis(&rational_rows, d);
    if rows.len() != m {
        return Err(Error::NoIntegerKernel);
    }
    Ok(KernelBasis {
        rows,
        source: KernelSource::Reconstructed,
    })
}

/// Greedy column selection by partial-pivot Gaussian elimination; returns
/// `k` column indices whose square block is invertible.
fn pivot_columns(v: &Mat<f64>, k: usize) -> Result<Vec<usize>> {
    let d = v[0].len();
    let mut work = v.to_vec();
    let mut pivots = Vec::with_capacity(k);
    for row in 0..k {
        let mut best = (0usize, 0.0_f64);
        for col in 0..d {
            if pivots.contains(&col) {
                continue;
            }
            let mag = work[row][col].abs();
            if mag > best.1 {
                best = (col, mag);
            }
        }
        if best.1 < 1e-12 {
            return Err(Error::NoIntegerKernel);
        }
        let col = best.0;
        pivots.push(col);
        for other in 0..k {
            if other == row {
                continue;
            }
            let factor = work[other][col] / work[row][col];
            for j in 0..d {
                work[other][j] -= factor * work[row][j];
            }
        }
    }
    pivots.sort_unstable();
    Ok(pivots)
}

/// Best rational approximation `p/q` with `q <= max_den`, by continued
/// fractions.
pub(crate) fn rationalize(x: f64, max_den: i64) -> (i64, i64) {
    let neg = x < 0.0;
    let mut rem = x.abs();
    let (mut h0, mut h1) = (1_i64, rem.floor() as i64);
    let (mut k0, mut k1) = (0_i64, 1_i64);
    rem -= rem.floor();
    for _ in 0..64 {
        if rem < 1e-15 {
            break;
        }
        rem = 1.0 / rem;
        let a = rem.floor();
        if a > i64::MAX as f64 {
            break;
        }
        let a = a as i64;
        let (h2, overflow_h) = {
            let prod = (a as i128) * (h1 as i128) + h0 as i128;
            (prod as i64, prod > i64::MAX as i128)
        };
        let (k2, overflow_k) = {
            let prod = (a as i128) * (k1 as i128) + k0 as i128;
            (prod as i64, prod > i64::MAX as i128)
        };
        if overflow_h || overflow_k || k2 > max_den {
            break;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        rem -= a as f64;
    }
    (if neg { -h1 } else { h1 }, k1)
}

/// Assembles the frequency lattice `Lambda = pi Z^m A` from a kernel basis
/// and samples its first `count` points by increasing sup-norm shell of the
/// integer coordinates.
pub fn build_lambda(spec: &ZonotopeSpec, kb: &KernelBasis, count: usize) -> Result<LambdaBuild> {
    let d = spec.dim();
    let m = spec.m;
    let inv = spec.inverse_f64();
    let mf = spec.matrix_f64();
    let sigmas: Vec<Vec<f64>> = kb
        .rows
        .iter()
        .map(|row| {
            (0..m)
                .map(|c| {
                    (0..d)
                        .map(|j| bigint_f64(&row[j]) * inv[j][c])
                        .sum::<f64>()
                })
                .collect()
        })
        .collect();
    let a = sigmas.clone();
    let det_a = linalg::det(&a, 0.0);
    let scale = a.iter().flatten().fold(1.0_f64, |acc, &x| acc.max(x.abs()));
    if det_a.abs() < 1e-12 * scale.powi(m as i32) {
        return Err(Error::DependentSigmas);
    }
    let mut u: Mat<f64> = kb
        .rows
        .iter()
        .map(|row| row.iter().map(bigint_f64).collect())
        .collect();
    for i in m..d {
        u.push(mf[i].clone());
    }

    let mut alphas: Vec<Vec<i64>> = Vec::with_capacity(count);
    let mut radius = 0_i64;
    while alphas.len() < count {
        for alpha in shell_points(m, radius) {
            alphas.push(alpha);
            if alphas.len() == count {
                break;
            }
        }
        radius += 1;
    }
    let points: Vec<Vec<f64>> = alphas
        .iter()
        .map(|alpha| {
            (0..m)
                .map(|c| {
                    std::f64::consts::PI
                        * (0..m).map(|i| alpha[i] as f64 * a[i][c]).sum::<f64>()
                })
                .collect()
        })
        .collect();
    let set = OrthoSet {
        dim: m,
        points,
        provenance: Provenance::Zonotope,
        scale: std::f64::consts::PI,
        integer_coords: Some(alphas),
    };
    Ok(LambdaBuild {
        sigmas,
        a,
        u,
        det_a,
        set,
    })
}

/// Lattice density together with the determinant-identity certificate.
pub fn density_bound(spec: &ZonotopeSpec, kb: &KernelBasis) -> Result<DensityBound> {
    let d = spec.dim();
    let m = spec.m;
    let build = build_lambda(spec, kb, 1)?;
    let det_m = linalg::det(&spec.matrix_f64(), 0.0);
    let det_u = linalg::det(&build.u, 0.0);
    if det_u.abs() < 1e-300 {
        return Err(Error::SingularU);
    }
    let det_a = build.det_a;
    let pi = std::f64::consts::PI;
    Ok(DensityBound {
        lattice_density: 1.0 / (pi.powi(m as i32) * det_a.abs()),
        bound: det_m.abs() / (pi.powi(m as i32) * det_u.abs()),
        bound_full_exponent: det_m.abs() / (pi.powi(d as i32) * det_u.abs()),
        det_identity_residual: (det_a - det_u / det_m).abs(),
        det_a,
        det_u,
        det_m,
    })
}

pub(crate) fn bigint_f64(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        if x.is_negative() {
            f64::NEG_INFINITY
        } else if x.is_zero() {
            0.0
        } else {
            f64::INFINITY
        }
    })
}
