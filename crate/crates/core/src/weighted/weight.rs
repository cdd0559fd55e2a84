//! The fiber-volume weight `W(x*) = vol{ y : M^{-1}(x*, y) in [-1,1]^d }`
//! and three independent ways to evaluate it.

use num_complex::Complex64;
#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::hull_from_vertices;
use crate::linalg::{self, Mat};

use super::ZonotopeSpec;

/// Truncation radius for the Fourier-slice integral.
const FOURIER_SLICE_CUTOFF: f64 = 1000.0;
const FOURIER_SLICE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightMethod {
    /// Volume of the slice polytope by vertex enumeration; always available.
    SlicePolytope,
    /// Chord length of a line through the cube; requires `m = d - 1` and an
    /// orthogonal matrix.
    LineLength,
    /// One-dimensional inverse Fourier integral of the sinc product;
    /// requires `m = 1` and an orthogonal matrix.
    FourierSlice,
}

/// Parameter interval `[lo, hi]` of `{s : u + s v in [-1,1]^d}`, or `None`
/// when the line misses the cube.
fn cube_line_interval(u: &[f64], v: &[f64]) -> Option<(f64, f64)> {
    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::INFINITY;
    for (uj, vj) in u.iter().zip(v) {
        if vj.abs() < 1e-14 {
            if uj.abs() > 1.0 {
                return None;
            }
            continue;
        }
        let a = (-1.0 - uj) / vj;
        let b = (1.0 - uj) / vj;
        lo = lo.max(a.min(b));
        hi = hi.min(a.max(b));
    }
    if lo <= hi {
        Some((lo, hi))
    } else {
        None
    }
}

/// Midpoint of the parameter interval where `u + s v` lies inside the cube.
pub fn interior_param(u: &[f64], v: &[f64]) -> Result<f64> {
    match cube_line_interval(u, v) {
        Some((lo, hi)) if hi > lo => Ok(0.5 * (lo + hi)),
        _ => Err(Error::NoIntersection),
    }
}

/// Length (in the line parameter) of the cube chord through an interior
/// point `u` with direction `v`.
pub fn line_cube_length(u: &[f64], v: &[f64]) -> Result<f64> {
    if u.iter().any(|x| x.abs() > 1.0 + 1e-12) {
        return Err(Error::NotInterior);
    }
    Ok(cube_line_interval(u, v).map_or(0.0, |(lo, hi)| hi - lo))
}

#[derive(Debug, Clone)]
pub struct WeightEvaluator {
    d: usize,
    m: usize,
    mat: Mat<f64>,
    inv: Mat<f64>,
    method: WeightMethod,
}

impl WeightEvaluator {
    pub fn new(spec: &ZonotopeSpec, method: WeightMethod) -> Result<Self> {
        let d = spec.dim();
        let m = spec.m;
        match method {
            WeightMethod::SlicePolytope => {}
            WeightMethod::LineLength => {
                if m != d - 1 || !spec.is_orthogonal() {
                    return Err(Error::MethodUnavailable("line-length"));
                }
            }
            WeightMethod::FourierSlice => {
                if m != 1 || !spec.is_orthogonal() {
                    return Err(Error::MethodUnavailable("fourier-slice"));
                }
            }
        }
        Ok(WeightEvaluator {
            d,
            m,
            mat: spec.matrix_f64(),
            inv: spec.inverse_f64(),
            method,
        })
    }

    pub fn method(&self) -> WeightMethod {
        self.method
    }

    /// Half-widths of the projection support box: the weight vanishes
    /// outside `|x*_c| <= support_radius()[c]`.
    pub fn support_radius(&self) -> Vec<f64> {
        (0..self.m)
            .map(|c| (0..self.d).map(|k| self.mat[c][k].abs()).sum())
            .collect()
    }

    pub fn eval(&self, xstar: &[f64]) -> f64 {
        debug_assert_eq!(xstar.len(), self.m);
        match self.method {
            WeightMethod::SlicePolytope => self.eval_slice(xstar),
            WeightMethod::LineLength => self.eval_line(xstar),
            WeightMethod::FourierSlice => self.eval_fourier_slice(xstar[0]),
        }
    }

    /// Constraint `i` of the slice polytope: `|b_i + <c_i, y>| <= 1` with
    /// `b_i = sum_j inv[i][j] x*_j` and `c_i[j] = inv[i][m+j]`.
    fn slice_constraints(&self, xstar: &[f64]) -> (Vec<f64>, Mat<f64>) {
        let k = self.d - self.m;
        let b: Vec<f64> = (0..self.d)
            .map(|i| (0..self.m).map(|j| self.inv[i][j] * xstar[j]).sum())
            .collect();
        let c: Mat<f64> = (0..self.d)
            .map(|i| (0..k).map(|j| self.inv[i][self.m + j]).collect())
            .collect();
        (b, c)
    }

    fn eval_slice(&self, xstar: &[f64]) -> f64 {
        let k = self.d - self.m;
        let (b, c) = self.slice_constraints(xstar);
        if k == 1 {
            let mut lo = f64::NEG_INFINITY;
            let mut hi = f64::INFINITY;
            for i in 0..self.d {
                let ci = c[i][0];
                if ci.abs() < 1e-14 {
                    if b[i].abs() > 1.0 {
                        return 0.0;
                    }
                    continue;
                }
                let p = (-1.0 - b[i]) / ci;
                let q = (1.0 - b[i]) / ci;
                lo = lo.max(p.min(q));
                hi = hi.min(p.max(q));
            }
            return (hi - lo).max(0.0);
        }
        // Vertex enumeration over k-subsets of the 2d bounding planes.
        let mut vertices: Vec<Vec<f64>> = Vec::new();
        let planes: Vec<(Vec<f64>, f64)> = (0..self.d)
            .flat_map(|i| {
                [1.0, -1.0]
                    .into_iter()
                    .map(move |s| (i, s))
                    .collect::<Vec<_>>()
            })
            .map(|(i, s)| (c[i].clone(), s - b[i]))
            .collect();
        let mut stack = vec![(Vec::<usize>::new(), 0usize)];
        while let Some((chosen, start)) = stack.pop() {
            if chosen.len() == k {
                let mat: Mat<f64> = chosen.iter().map(|&p| planes[p].0.clone()).collect();
                let rhs: Vec<f64> = chosen.iter().map(|&p| planes[p].1).collect();
                if let Ok(y) = linalg::solve(&mat, &rhs, 1e-10) {
                    let feasible = (0..self.d).all(|i| {
                        let val: f64 =
                            b[i] + (0..k).map(|j| c[i][j] * y[j]).sum::<f64>();
                        val.abs() <= 1.0 + 1e-9
                    });
                    if feasible
                        && !vertices
                            .iter()
                            .any(|w| w.iter().zip(&y).all(|(a, b)| (a - b).abs() < 1e-9))
                    {
                        vertices.push(y);
                    }
                }
                continue;
            }
            for p in start..planes.len() {
                let mut next = chosen.clone();
                next.push(p);
                stack.push((next, p + 1));
            }
        }
        if vertices.len() < k + 1 {
            return 0.0;
        }
        hull_from_vertices(&vertices, k).map_or(0.0, |p| p.volume())
    }

    fn eval_line(&self, xstar: &[f64]) -> f64 {
        // Orthogonal M: the fiber over x* is {u + y v}, parametrized by the
        // free coordinate y itself, so the weight is the parameter length.
        let u: Vec<f64> = (0..self.d)
            .map(|j| (0..self.m).map(|kk| self.mat[kk][j] * xstar[kk]).sum())
            .collect();
        let v: Vec<f64> = (0..self.d).map(|j| self.mat[self.d - 1][j]).collect();
        cube_line_interval(&u, &v).map_or(0.0, |(lo, hi)| (hi - lo).max(0.0))
    }

    /// `W(x1) = int prod_k 2 sin(2 pi lam g_k)/(2 pi lam g_k) e^{2 pi i lam x1} dlam`
    /// with `g = M^T e_1`; the integrand is even, so integrate twice the real
    /// part over `[0, cutoff]` in unit panels.
    fn eval_fourier_slice(&self, x1: f64) -> f64 {
        let g: Vec<f64> = (0..self.d).map(|k| self.mat[0][k]).collect();
        let f = |lam: f64| -> f64 {
            let mut prod = 1.0;
            for &gk in &g {
                let t = 2.0 * std::f64::consts::PI * lam * gk;
                prod *= if t.abs() < 1e-6 {
                    2.0 * (1.0 - t * t / 6.0)
                } else {
                    2.0 * t.sin() / t
                };
            }
            prod * (2.0 * std::f64::consts::PI * lam * x1).cos()
        };
        let panels = FOURIER_SLICE_CUTOFF as usize;
        let per_panel_tol = FOURIER_SLICE_TOL / panels as f64;
        let mut total = 0.0;
        for p in 0..panels {
            total += adaptive_simpson(&f, p as f64, (p + 1) as f64, per_panel_tol, 20);
        }
        2.0 * total
    }
}

/// Evaluates the weight at every point of a batch; parallel over points
/// when the `parallel` feature is on.
pub fn weight_grid(w: &WeightEvaluator, points: &[Vec<f64>]) -> Vec<f64> {
    #[cfg(feature = "parallel")]
    {
        points.par_iter().map(|x| w.eval(x)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        weight_grid_seq(w, points)
    }
}

/// Single-threaded twin of `weight_grid`, the baseline for the benches.
pub fn weight_grid_seq(w: &WeightEvaluator, points: &[Vec<f64>]) -> Vec<f64> {
    points.iter().map(|x| w.eval(x)).collect()
}

/// Adaptive Simpson quadrature for real integrands.
pub(crate) fn adaptive_simpson<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    depth: usize,
) -> f64 {
    fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, m: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b))
    }
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        b: f64,
        whole: f64,
        tol: f64,
        depth: usize,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let left = simpson(f, a, 0.5 * (a + m), m);
        let right = simpson(f, m, 0.5 * (m + b), b);
        let err = left + right - whole;
        if depth == 0 || err.abs() <= 15.0 * tol {
            left + right + err / 15.0
        } else {
            recurse(f, a, m, left, 0.5 * tol, depth - 1)
                + recurse(f, m, b, right, 0.5 * tol, depth - 1)
        }
    }
    let m = 0.5 * (a + b);
    recurse(f, a, b, simpson(f, a, m, b), tol, depth)
}

/// Adaptive Simpson quadrature for complex integrands.
pub(crate) fn adaptive_simpson_complex<F: Fn(f64) -> Complex64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    depth: usize,
) -> Complex64 {
    fn simpson<F: Fn(f64) -> Complex64>(f: &F, a: f64, m: f64, b: f64) -> Complex64 {
        (f(a) + f(m) * 4.0 + f(b)) * ((b - a) / 6.0)
    }
    fn recurse<F: Fn(f64) -> Complex64>(
        f: &F,
        a: f64,
        b: f64,
        whole: Complex64,
        tol: f64,
        depth: usize,
    ) -> Complex64 {
        let m = 0.5 * (a + b);
        let left = simpson(f, a, 0.5 * (a + m), m);
        let right = simpson(f, m, 0.5 * (m + b), b);
        let err = left + right - whole;
        if depth == 0 || err.norm() <= 15.0 * tol {
            left + right + err / 15.0
        } else {
            recurse(f, a, m, left, 0.5 * tol, depth - 1)
                + recurse(f, m, b, right, 0.5 * tol, depth - 1)
        }
    }
    let m = 0.5 * (a + b);
    recurse(f, a, b, simpson(f, a, m, b), tol, depth)
}
