//! The Fourier transform of a polytope indicator, two ways.
//!
//! `fourier_lawrence` evaluates the vertex formula
//! `F_P(w) = i^{-d} sum_v D_v(w) exp(-i<v, w>)`, which is valid for simple
//! polytopes at frequencies not orthogonal to any edge. `fourier_oracle` is
//! an independent check: it triangulates P into simplices and integrates the
//! exponential over each simplex in closed form (divided differences of exp
//! at the vertex phases, Hermite-Genocchi). The two paths share no code
//! beyond the triangulation, so agreement is meaningful evidence.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{triangulate, Polytope};
use crate::linalg::{self, Mat};
use crate::scalar::{sub_vec, to_f64_vec, Scalar};

/// Relative threshold below which `<edge, w>` counts as zero (the Lawrence
/// formula is refused rather than regularized there).
pub const SINGULAR_EPS: f64 = 1e-12;

/// Node gap below which divided differences switch to the shifted series.
const CONFLUENCE_SPREAD: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FourierMethod {
    Lawrence,
    Oracle,
}

#[derive(Debug, Clone, Copy)]
pub struct FourierValue {
    pub value: Complex64,
    pub method: FourierMethod,
    /// True iff `w` is orthogonal to some edge of the polytope.
    pub singular_flag: bool,
}

/// The vertex weight `|det(xi_1..xi_d)| / prod <xi_i, w>`, homogeneous of
/// degree -d in `w`.
pub fn d_v<S: Scalar>(p: &Polytope<S>, v: usize, omega: &[f64]) -> Result<f64> {
    let fan = p.edge_fan(v)?;
    let omega_norm = norm(omega);
    let mut det_rows: Mat<f64> = Vec::with_capacity(p.dim());
    let mut denom = 1.0;
    for (i, xi) in fan.edge_vectors.iter().enumerate() {
        let xi: Vec<f64> = to_f64_vec(xi);
        let s = dot_f64(&xi, omega);
        if s.abs() < SINGULAR_EPS * norm(&xi) * omega_norm {
            return Err(Error::SingularFrequency {
                vertex: v,
                edge: (v, p.adjacency()[v][i]),
            });
        }
        denom *= s;
        det_rows.push(xi);
    }
    Ok(linalg::det(&det_rows, 0.0).abs() / denom)
}

/// True iff `w` is orthogonal to some edge of `p` (relative threshold).
pub fn is_singular<S: Scalar>(p: &Polytope<S>, omega: &[f64]) -> bool {
    let omega_norm = norm(omega);
    p.edges().iter().any(|&(a, b)| {
        let xi = to_f64_vec(&sub_vec(&p.vertices()[a], &p.vertices()[b]));
        dot_f64(&xi, omega).abs() < SINGULAR_EPS * norm(&xi) * omega_norm
    })
}

/// Vertex formula for `F_P(w)`. Requires a simple polytope and a frequency
/// off the singular set.
pub fn fourier_lawrence<S: Scalar>(p: &Polytope<S>, omega: &[f64]) -> Result<FourierValue> {
    if !p.is_simple() {
        return Err(Error::NotSimple);
    }
    let d = p.dim();
    let mut sum = Complex64::new(0.0, 0.0);
    for v in 0..p.vertices().len() {
        let weight = d_v(p, v, omega)?;
        let phase = -dot_f64(&to_f64_vec(&p.vertices()[v]), omega);
        sum += weight * Complex64::new(0.0, phase).exp();
    }
    // i^{-d} = (-i)^d
    let factor = Complex64::new(0.0, -1.0).powu(d as u32);
    Ok(FourierValue {
        value: factor * sum,
        method: FourierMethod::Lawrence,
        singular_flag: false,
    })
}

/// Triangulation oracle for `F_P(w)`: defined for every convex polytope and
/// every frequency, including the singular set and `w = 0` (volume).
pub fn fourier_oracle<S: Scalar>(p: &Polytope<S>, omega: &[f64]) -> FourierValue {
    let ev = FourierEvaluator::new(p);
    FourierValue {
        value: ev.eval(omega),
        method: FourierMethod::Oracle,
        singular_flag: is_singular(p, omega),
    }
}

/// `|F_P(w)| <= tol * |P|`, by the oracle.
pub fn is_fourier_zero<S: Scalar>(p: &Polytope<S>, omega: &[f64], tol: f64) -> bool {
    let ev = FourierEvaluator::new(p);
    ev.eval(omega).norm() <= tol * ev.volume()
}

/// Both sides of the moment identity
/// `int_P <x,w>^j dx = (j! (-1)^d / (j+d)!) sum_v <v,w>^{j+d} D_v(w)`.
/// The left side is exact simplex quadrature, the right side the vertex sum.
pub fn moment<S: Scalar>(p: &Polytope<S>, omega: &[f64], j: usize) -> Result<(f64, f64)> {
    let d = p.dim();
    // lhs: per simplex, int <x,w>^j dx = |det| * j!/(j+d)! * h_j(t_0..t_d)
    // with t_l the vertex values of <x,w> (Hermite-Genocchi for x^j).
    let ev = FourierEvaluator::new(p);
    let mut lhs = 0.0;
    for (simplex, absdet) in &ev.simplices {
        let t: Vec<f64> = simplex.iter().map(|&i| dot_f64(&ev.vertices[i], omega)).collect();
        lhs += absdet * factorial_ratio(j, j + d) * complete_homogeneous(&t, j);
    }
    let mut rhs = 0.0;
    for v in 0..p.vertices().len() {
        let weight = d_v(p, v, omega)?;
        let t = dot_f64(&to_f64_vec(&p.vertices()[v]), omega);
        rhs += t.powi((j + d) as i32) * weight;
    }
    let sign = if d % 2 == 0 { 1.0 } else { -1.0 };
    rhs *= sign * factorial_ratio(j, j + d);
    Ok((lhs, rhs))
}

/// The companion identity `sum_v <v,w>^j D_v(w) = 0` for `0 <= j <= d-1`.
/// Returns `(value, mass)` where `mass = sum_v |<v,w>|^j |D_v(w)|` is the
/// natural scale for a relative zero test.
pub fn companion_sum<S: Scalar>(p: &Polytope<S>, omega: &[f64], j: usize) -> Result<(f64, f64)> {
    let mut value = 0.0;
    let mut mass = 0.0;
    for v in 0..p.vertices().len() {
        let weight = d_v(p, v, omega)?;
        let t = dot_f64(&to_f64_vec(&p.vertices()[v]), omega);
        let term = t.powi(j as i32) * weight;
        value += term;
        mass += term.abs();
    }
    Ok((value, mass))
}

/// Precomputed triangulation for repeated oracle evaluations at many
/// frequencies (verification sweeps evaluate thousands of differences).
pub struct FourierEvaluator {
    dim: usize,
    vertices: Vec<Vec<f64>>,
    /// (vertex indices, |det of edge matrix|) per simplex
    simplices: Vec<(Vec<usize>, f64)>,
}

impl FourierEvaluator {
    pub fn new<S: Scalar>(p: &Polytope<S>) -> Self {
        let vertices: Vec<Vec<f64>> = p.vertices().iter().map(|v| to_f64_vec(v)).collect();
        let simplices = triangulate(p)
            .into_iter()
            .map(|simplex| {
                let base = &vertices[simplex[0]];
                let edges: Mat<f64> = simplex[1..]
                    .iter()
                    .map(|&i| sub_vec(&vertices[i], base))
                    .collect();
                let absdet = linalg::det(&edges, 0.0).abs();
                (simplex, absdet)
            })
            .collect();
        FourierEvaluator {
            dim: p.dim(),
            vertices,
            simplices,
        }
    }

    pub fn volume(&self) -> f64 {
        let fact: f64 = (1..=self.dim).map(|k| k as f64).product();
        self.simplices.iter().map(|(_, a)| a).sum::<f64>() / fact
    }

    /// `F_P(w) = sum_S |det_S| * [theta_0, ..., theta_d] exp` with
    /// `theta_l = -i <w_l, w>` over the vertices of each simplex.
    pub fn eval(&self, omega: &[f64]) -> Complex64 {
        self.simplices
            .iter()
            .map(|(simplex, absdet)| {
                let phases: Vec<f64> = simplex
                    .iter()
                    .map(|&i| -dot_f64(&self.vertices[i], omega))
                    .collect();
                absdet * dd_exp_imag(&phases)
            })
            .sum()
    }
}

/// Divided difference of `exp` at the purely imaginary nodes `i * t_l`.
///
/// Nodes are sorted; short node ranges (spread <= 4) use the shifted
/// complete-homogeneous series, which has no cancellation, and longer ranges
/// use the two-term recursion whose divisor is then bounded away from zero.
fn dd_exp_imag(t: &[f64]) -> Complex64 {
    let mut t = t.to_vec();
    t.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = t.len();
    // table[i][j - i] = [i t_i, ..., i t_j] exp
    let mut table: Vec<Vec<Complex64>> = vec![Vec::new(); n];
    for (i, row) in table.iter_mut().enumerate() {
        row.push(Complex64::new(0.0, t[i]).exp());
    }
    for len in 1..n {
        for i in 0..n - len {
            let j = i + len;
            let value = if t[j] - t[i] <= CONFLUENCE_SPREAD {
                dd_exp_series(&t[i..=j])
            } else {
                let hi = table[i + 1][len - 1];
                let lo = table[i][len - 1];
                (hi - lo) / Complex64::new(0.0, t[j] - t[i])
            };
            table[i].push(value);
        }
    }
    table[0][n - 1]
}

/// Shifted series for `[i t_0, ..., i t_k] exp`:
/// `e^{i mu} sum_{n>=0} h_n(y) / (k+n)!` with `y_l = i (t_l - mu)` and `h_n`
/// the complete homogeneous symmetric polynomials.
fn dd_exp_series(t: &[f64]) -> Complex64 {
    let k = t.len() - 1;
    let mu = t.iter().sum::<f64>() / t.len() as f64;
    let y: Vec<Complex64> = t.iter().map(|&x| Complex64::new(0.0, x - mu)).collect();
    // prev[l] = h_n(y_0..y_l) for the current order n
    let mut prev = vec![Complex64::new(1.0, 0.0); y.len()];
    let mut sum = Complex64::new(1.0, 0.0) / factorial(k);
    let mut fact = factorial(k);
    let mut small_streak = 0;
    for order in 1..200 {
        let mut cur = vec![Complex64::new(0.0, 0.0); y.len()];
        cur[0] = y[0] * prev[0];
        for l in 1..y.len() {
            cur[l] = cur[l - 1] + y[l] * prev[l];
        }
        fact *= (k + order) as f64;
        let term = cur[y.len() - 1] / fact;
        sum += term;
        // odd-order terms can vanish by symmetry alone; stop only after two
        // consecutive negligible terms
        if term.norm() < 1e-20 * sum.norm().max(1e-300) && order > 2 {
            small_streak += 1;
            if small_streak >= 2 {
                break;
            }
        } else {
            small_streak = 0;
        }
        prev = cur;
    }
    Complex64::new(0.0, mu).exp() * sum
}

/// `h_j(t)`, the complete homogeneous symmetric polynomial of degree `j`.
fn complete_homogeneous(t: &[f64], j: usize) -> f64 {
    let mut prev = vec![1.0; t.len()];
    for _ in 1..=j {
        let mut cur = vec![0.0; t.len()];
        cur[0] = t[0] * prev[0];
        for l in 1..t.len() {
            cur[l] = cur[l - 1] + t[l] * prev[l];
        }
        prev = cur;
    }
    prev[t.len() - 1]
}

/// `a! / b!` for `a <= b`.
fn factorial_ratio(a: usize, b: usize) -> f64 {
    let mut r = 1.0;
    for k in a + 1..=b {
        r /= k as f64;
    }
    r
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|x| x as f64).product()
}

pub(crate) fn dot_f64(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(v: &[f64]) -> f64 {
    dot_f64(v, v).sqrt()
}
