//! Shared worked examples used by tests, benches and the CLI demo command.

use num_bigint::BigInt;

use crate::geometry::{hull_from_vertices, Polytope};
use crate::rat::{rat, rat_i64};
use crate::scalar::Rat;
use crate::weighted::{MatrixData, ZonotopeSpec};

/// Symmetric trapezoid `Conv{(1,0), (-1,0), (2,1), (-2,1)}`: simple,
/// integral, with three pairwise nonparallel edge directions.
pub fn trapezoid() -> Polytope<Rat> {
    let pts: Vec<Vec<Rat>> = [[1, 0], [-1, 0], [2, 1], [-2, 1]]
        .iter()
        .map(|p| p.iter().map(|&c| rat_i64(c)).collect())
        .collect();
    hull_from_vertices(&pts, 2).expect("trapezoid hull")
}

/// Unit right triangle `Conv{(0,0), (1,0), (0,1)}`.
pub fn triangle() -> Polytope<Rat> {
    let pts: Vec<Vec<Rat>> = [[0, 0], [1, 0], [0, 1]]
        .iter()
        .map(|p| p.iter().map(|&c| rat_i64(c)).collect())
        .collect();
    hull_from_vertices(&pts, 2).expect("triangle hull")
}

/// Orthogonal 3x3 matrix, parametrized by positive integers `p`, `q`, whose
/// cube shadow onto the first two coordinates is a hexagon. Irrational
/// entries, so kernels must be reconstructed numerically.
pub fn hexagon_spec(p: i64, q: i64) -> ZonotopeSpec {
    let pf = p as f64;
    let qf = q as f64;
    let delta = (qf * qf + 2.0 * pf * pf).sqrt();
    let s = 2.0_f64.sqrt();
    let matrix = vec![
        vec![qf / (s * delta), qf / (s * delta), s * pf / delta],
        vec![-1.0 / s, 1.0 / s, 0.0],
        vec![-pf / delta, -pf / delta, qf / delta],
    ];
    ZonotopeSpec::new(MatrixData::Numeric(matrix), 2).expect("hexagon spec")
}

/// The hexagon `sqrt(2) * Conv{(+-(p+q)/D, 0), (+-p/D, +-1)}` with
/// `D = sqrt(q^2 + 2p^2)`: the shadow of the cube under `hexagon_spec`.
pub fn hexagon_vertices(p: i64, q: i64) -> Vec<Vec<f64>> {
    let pf = p as f64;
    let qf = q as f64;
    let delta = (qf * qf + 2.0 * pf * pf).sqrt();
    let s = 2.0_f64.sqrt();
    vec![
        vec![s * (pf + qf) / delta, 0.0],
        vec![-s * (pf + qf) / delta, 0.0],
        vec![s * pf / delta, s],
        vec![s * pf / delta, -s],
        vec![-s * pf / delta, s],
        vec![-s * pf / delta, -s],
    ]
}

/// Exact lattice density of the hexagon-spec frequency lattice:
/// `1 / (pi^2 sqrt(q^2 + 2 p^2))`.
pub fn hexagon_lattice_density(p: i64, q: i64) -> f64 {
    let pf = p as f64;
    let qf = q as f64;
    1.0 / (std::f64::consts::PI.powi(2) * (qf * qf + 2.0 * pf * pf).sqrt())
}

/// Exact rational 5x5 matrix whose inverse transpose is the Vandermonde
/// matrix on nodes `0, 1, -1, 2, -2`; used with `m = 3`. Its trailing
/// inverse columns are annihilated by the coefficient rows of
/// `p(x) = x^2 - 4` shifted across three positions.
pub fn quintic_spec() -> ZonotopeSpec {
    let matrix: Vec<Vec<Rat>> = vec![
        vec![rat_i64(1), rat_i64(0), rat(-5, 4), rat_i64(0), rat(1, 4)],
        vec![rat_i64(0), rat(2, 3), rat(2, 3), rat(-1, 6), rat(-1, 6)],
        vec![rat_i64(0), rat(-2, 3), rat(2, 3), rat(1, 6), rat(-1, 6)],
        vec![
            rat_i64(0),
            rat(-1, 12),
            rat(-1, 24),
            rat(1, 12),
            rat(1, 24),
        ],
        vec![
            rat_i64(0),
            rat(1, 12),
            rat(-1, 24),
            rat(-1, 12),
            rat(1, 24),
        ],
    ];
    ZonotopeSpec::new(MatrixData::Exact(matrix), 3).expect("quintic spec")
}

/// The expected kernel rows for `quintic_spec`.
pub fn quintic_kernel_rows() -> Vec<Vec<BigInt>> {
    [
        [-4_i64, 0, 1, 0, 0],
        [0, -4, 0, 1, 0],
        [0, 0, -4, 0, 1],
    ]
    .iter()
    .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
    .collect()
}

/// Integer generators of `Lambda / pi` for `quintic_spec`: the computed
/// `sigma_i` rows span the same lattice as these (compare as lattices, not
/// elementwise — sign and basis choice are free).
pub fn quintic_sigma_rows() -> Vec<Vec<f64>> {
    vec![
        vec![4.0, 3.0, 3.0],
        vec![0.0, 3.0, -3.0],
        vec![0.0, 3.0, 3.0],
    ]
}

/// The twelve vertices of the shadow of the cube under `quintic_spec`.
pub fn quintic_shadow_vertices() -> Vec<Vec<f64>> {
    let halves: [[f64; 3]; 6] = [
        [0.5, -5.0 / 3.0, 0.0],
        [-2.5, 0.0, 5.0 / 3.0],
        [-2.0, -1.0 / 3.0, 4.0 / 3.0],
        [0.5, 0.0, -5.0 / 3.0],
        [-2.5, 5.0 / 3.0, 0.0],
        [-2.0, 4.0 / 3.0, -1.0 / 3.0],
    ];
    let mut out = Vec::with_capacity(12);
    for h in halves {
        out.push(h.to_vec());
        out.push(h.iter().map(|&x| -x).collect());
    }
    out
}
