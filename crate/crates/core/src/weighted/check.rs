//! Verifies weighted orthogonality of a lattice frequency against the
//! closed-form sinc product and an independent integral.

use num_bigint::BigInt;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fourier::FourierEvaluator;
use crate::geometry::cube;
use crate::intlat::lattice_contains;
use crate::linalg;

use super::weight::{adaptive_simpson_complex, WeightEvaluator, WeightMethod};
use super::{KernelBasis, ZonotopeSpec};

/// Both sides of one weighted orthogonality test
/// `int exp(i <lambda, x*>) W(x*) dx* = 0` for `lambda = pi kbar M^{-1}|_m`.
#[derive(Debug, Clone)]
pub struct WeightedCheck {
    pub kbar: Vec<i64>,
    pub lambda: Vec<f64>,
    /// Closed form `|det M| prod_k |2 sin(pi kbar_k) / (pi kbar_k)|`.
    pub product_value: f64,
    /// Magnitude of the independently computed weighted integral.
    pub integral_value: f64,
    /// Total weight mass `2^d |det M|`, the natural normalizer.
    pub mass: f64,
    /// How the integral was computed.
    pub integral_route: &'static str,
}

/// Checks one nonzero lattice frequency of the weighted system. The integral
/// side never reuses the sinc product: for `m <= 2` it is direct quadrature
/// of the weight, for larger `m` the cube-image Fourier transform at the
/// lifted frequency `(lambda, 0)`.
pub fn weighted_orthogonality_check(
    spec: &ZonotopeSpec,
    kb: &KernelBasis,
    kbar: &[i64],
) -> Result<WeightedCheck> {
    let d = spec.dim();
    let m = spec.m;
    if kbar.len() != d {
        return Err(Error::LambdaNotInSet);
    }
    let kbar_big: Vec<BigInt> = kbar.iter().map(|&x| BigInt::from(x)).collect();
    if kbar.iter().all(|&x| x == 0) || !lattice_contains(&kb.rows, &kbar_big)? {
        return Err(Error::LambdaNotInSet);
    }

    let det_m = linalg::det(&spec.matrix_f64(), 0.0).abs();
    let mass = spec.weight_mass();
    let mut product = det_m;
    for &k in kbar {
        let t = std::f64::consts::PI * k as f64;
        product *= if k == 0 { 2.0 } else { (2.0 * t.sin() / t).abs() };
    }

    let inv = spec.inverse_f64();
    let lambda: Vec<f64> = (0..m)
        .map(|c| {
            std::f64::consts::PI
                * (0..d).map(|j| kbar[j] as f64 * inv[j][c]).sum::<f64>()
        })
        .collect();

    let (integral_value, route) = if m <= 2 {
        (quadrature_integral(spec, &lambda)?, "quadrature")
    } else {
        (lifted_integral(spec, &lambda)?, "cube-lift")
    };

    Ok(WeightedCheck {
        kbar: kbar.to_vec(),
        lambda,
        product_value: product.abs(),
        integral_value,
        mass,
        integral_route: route,
    })
}

/// Direct quadrature of `int exp(i <lambda, x*>) W(x*) dx*` over the
/// projection support box, for `m <= 2`.
fn quadrature_integral(spec: &ZonotopeSpec, lambda: &[f64]) -> Result<f64> {
    let m = spec.m;
    let evaluator = if spec.m == spec.dim() - 1 && spec.is_orthogonal() {
        WeightEvaluator::new(spec, WeightMethod::LineLength)?
    } else {
        WeightEvaluator::new(spec, WeightMethod::SlicePolytope)?
    };
    let radius = evaluator.support_radius();
    let tol = 1e-8 * spec.weight_mass().max(1.0);
    let value = match m {
        1 => {
            let f = |x: f64| Complex64::from_polar(evaluator.eval(&[x]), lambda[0] * x);
            adaptive_simpson_complex(&f, -radius[0], radius[0], tol, 24)
        }
        2 => {
            let inner_tol = tol / (4.0 * radius[0]);
            let outer = |x: f64| {
                let g = |y: f64| {
                    Complex64::from_polar(
                        evaluator.eval(&[x, y]),
                        lambda[0] * x + lambda[1] * y,
                    )
                };
                adaptive_simpson_complex(&g, -radius[1], radius[1], inner_tol, 20)
            };
            adaptive_simpson_complex(&outer, -radius[0], radius[0], tol, 20)
        }
        _ => return Err(Error::MethodUnavailable("direct quadrature needs m <= 2")),
    };
    Ok(value.norm())
}

/// For larger `m`, integrate over the full cube image instead: by Fubini the
/// weighted integral equals `int_{M C_d} exp(i <(lambda, 0), x>) dx`, the
/// polytope Fourier transform at `-(lambda, 0)`.
fn lifted_integral(spec: &ZonotopeSpec, lambda: &[f64]) -> Result<f64> {
    let d = spec.dim();
    let mf = spec.matrix_f64();
    let image = cube::<f64>(d).affine_map(&mf, &vec![0.0; d])?;
    let evaluator = FourierEvaluator::new(&image);
    let mut omega: Vec<f64> = lambda.iter().map(|&x| -x).collect();
    omega.resize(d, 0.0);
    Ok(evaluator.eval(&omega).norm())
}
