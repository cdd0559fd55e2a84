//! Weighted orthogonal exponentials for cube shadows.
//!
//! A zonotope here is the orthogonal projection onto the first `m`
//! coordinates of `M C_d`, the image of the cube `[-1,1]^d` under a
//! nondegenerate matrix `M`. Exponentials `exp(i <lambda, x*>)` indexed by
//! `lambda = pi (<kbar, M^{-1}e_1>, ..., <kbar, M^{-1}e_m>)` over integer
//! vectors `kbar` annihilating the last `d - m` columns of `M^{-1}` are
//! orthogonal with respect to the fiber-volume weight `W(x*)`.

mod kernel;
mod weight;
mod check;

pub use check::{weighted_orthogonality_check, WeightedCheck};
pub use kernel::{
    build_lambda, density_bound, integer_kernel, DensityBound, KernelBasis, KernelSource,
    LambdaBuild,
};
pub use weight::{
    interior_param, line_cube_length, weight_grid, weight_grid_seq, WeightEvaluator,
    WeightMethod,
};

use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::scalar::{Rat, Scalar};

/// Continued-fraction reconstruction accepts a rational with denominator at
/// most this bound.
pub const MAX_RECONSTRUCTION_DENOMINATOR: i64 = 1_000_000;
/// Residual at or below this is accepted as an exact rational.
pub const RECONSTRUCTION_ACCEPT: f64 = 1e-8;
/// Residuals between the accept bound and this are refused as ambiguous
/// rather than silently rounded.
pub const RECONSTRUCTION_REJECT: f64 = 1e-4;

#[derive(Debug, Clone)]
pub enum MatrixData {
    Exact(Mat<Rat>),
    Numeric(Mat<f64>),
}

impl MatrixData {
    pub fn dim(&self) -> usize {
        match self {
            MatrixData::Exact(m) => m.len(),
            MatrixData::Numeric(m) => m.len(),
        }
    }

    pub fn to_f64(&self) -> Mat<f64> {
        match self {
            MatrixData::Exact(m) => m
                .iter()
                .map(|row| row.iter().map(Scalar::to_f64).collect())
                .collect(),
            MatrixData::Numeric(m) => m.clone(),
        }
    }

    pub fn exact(&self) -> Option<&Mat<Rat>> {
        match self {
            MatrixData::Exact(m) => Some(m),
            MatrixData::Numeric(_) => None,
        }
    }
}

/// A projection problem: matrix `M`, target dimension `m`, and an optional
/// user-supplied integer kernel basis.
#[derive(Debug, Clone)]
pub struct ZonotopeSpec {
    pub matrix: MatrixData,
    pub m: usize,
    pub kernel: Option<Vec<Vec<i64>>>,
}

impl ZonotopeSpec {
    pub fn new(matrix: MatrixData, m: usize) -> Result<Self> {
        let d = matrix.dim();
        if m == 0 || m >= d {
            return Err(Error::AxisOutOfRange(m, d));
        }
        let mf = matrix.to_f64();
        let scale = mf
            .iter()
            .flatten()
            .fold(1.0_f64, |acc, &x| acc.max(x.abs()));
        if linalg::det(&mf, 0.0).abs() < 1e-12 * scale.powi(d as i32) {
            return Err(Error::SingularMatrix);
        }
        Ok(ZonotopeSpec {
            matrix,
            m,
            kernel: None,
        })
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix_f64(&self) -> Mat<f64> {
        self.matrix.to_f64()
    }

    pub fn inverse_f64(&self) -> Mat<f64> {
        linalg::invert(&self.matrix_f64(), 1e-12)
            .expect("spec construction rejects singular matrices")
    }

    /// True when `M^T M = I` to 1e-9 — enables the line-length and
    /// Fourier-slice weight methods.
    pub fn is_orthogonal(&self) -> bool {
        let m = self.matrix_f64();
        let d = m.len();
        let mt = linalg::transpose(&m);
        let prod = linalg::mat_mul(&mt, &m);
        (0..d).all(|i| {
            (0..d).all(|j| {
                let expected = if i == j { 1.0 } else { 0.0 };
                (prod[i][j] - expected).abs() <= 1e-9
            })
        })
    }

    /// Total mass of the weight function: `int W dx* = |M C_d| = 2^d |det M|`.
    pub fn weight_mass(&self) -> f64 {
        let d = self.dim();
        2.0_f64.powi(d as i32) * linalg::det(&self.matrix_f64(), 0.0).abs()
    }
}
