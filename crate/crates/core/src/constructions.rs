//! Constructions of infinite orthogonal-exponential sets.
//!
//! For a simple rational polytope, frequencies `w` with `F_P(w) = 0` are
//! exactly the points of the lattice `L = 2 pi n Z^d` avoiding the finitely
//! many hyperplanes through the origin on which some vertex denominator
//! `<xi, w>` vanishes. A greedy selection keeps every pairwise difference off
//! those hyperplanes (`build_greedy_set`). Alternatively, if no edge is
//! contained in a hyperplane `x_k = c` and the k-th vertex components are
//! rational, the rank-one lattice `2 pi Z e_k` works for the
//! denominator-cleared polytope (`build_axis_set`).

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::Polytope;
use crate::linalg::identity;
use crate::rat::primitive_integer;
use crate::scalar::{sub_vec, to_f64_vec, Rat, Scalar};

pub const TAU: f64 = 2.0 * std::f64::consts::PI;

/// A hyperplane through the origin, `{w : <normal, w> = 0}`, with a
/// primitive integer normal (gcd 1, first nonzero entry positive).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperplane0 {
    pub normal: Vec<BigInt>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    GreedyLattice,
    AxisLattice,
    Zonotope,
    /// Loaded from user input rather than constructed.
    External,
}

/// An ordered orthogonal-exponential frequency set; the first point is
/// always the origin.
#[derive(Debug, Clone)]
pub struct OrthoSet {
    pub dim: usize,
    /// `points[i] = scale * integer_coords[i]` when integer coordinates
    /// underlie the set.
    pub points: Vec<Vec<f64>>,
    pub provenance: Provenance,
    /// Common scalar factor (`2 pi n` for lattice constructions, `pi` for
    /// zonotope sets).
    pub scale: f64,
    pub integer_coords: Option<Vec<Vec<i64>>>,
}

/// One checked point of `check_necessary_condition`.
#[derive(Debug, Clone)]
pub struct Witness {
    pub point_index: usize,
    pub vertex_pair: (usize, usize),
    pub m: i64,
    /// `|<w0, v - v'>/2pi - m|`
    pub residual: f64,
}

#[derive(Debug, Clone)]
pub struct NecessaryConditionReport {
    pub witnesses: Vec<Witness>,
    /// Indices of nonzero points with no vertex-pair witness — each one
    /// falsifies the claim that the set is orthogonal and lattice-contained.
    pub violations: Vec<usize>,
}

impl NecessaryConditionReport {
    pub fn all_witnessed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Distinct edge directions of `p`, each as a primitive integer normal of
/// the hyperplane `<xi, w> = 0` it induces.
pub fn edge_hyperplanes(p: &Polytope<Rat>) -> Result<Vec<Hyperplane0>> {
    if !p.is_simple() {
        return Err(Error::NotSimple);
    }
    let mut out: Vec<Hyperplane0> = Vec::new();
    for &(a, b) in p.edges() {
        let dir = sub_vec(&p.vertices()[a], &p.vertices()[b]);
        let normal = primitive_integer(&dir)?;
        let h = Hyperplane0 { normal };
        if !out.contains(&h) {
            out.push(h);
        }
    }
    Ok(out)
}

/// Greedy lattice construction: starting from the origin, walk the points of
/// `Z^d` by increasing sup-norm (lexicographic within a shell) and keep `k`
/// whenever `k - k_l` avoids every edge hyperplane for all points `k_l`
/// already kept. The result, scaled by `2 pi n`, has all pairwise
/// differences in the zero set of `F_P`.
pub fn build_greedy_set(p: &Polytope<Rat>, count: usize, enum_bound: i64) -> Result<OrthoSet> {
    let hyperplanes = edge_hyperplanes(p)?;
    let n = p
        .rationality()
        .common_denominator
        .expect("exact polytopes always have a common denominator");
    let d = p.dim();
    let scale = TAU * bigint_to_f64(&n);

    let mut chosen: Vec<Vec<i64>> = vec![vec![0; d]];
    'shells: for radius in 1..=enum_bound {
        for k in shell_points(d, radius) {
            let admissible = chosen.iter().all(|prev| {
                let diff: Vec<BigInt> = k
                    .iter()
                    .zip(prev)
                    .map(|(a, b)| BigInt::from(a - b))
                    .collect();
                hyperplanes.iter().all(|h| !dot_bigint(&h.normal, &diff).is_zero())
            });
            if admissible {
                chosen.push(k);
                if chosen.len() == count {
                    break 'shells;
                }
            }
        }
    }
    if chosen.len() < count {
        return Err(Error::EnumerationExhausted(enum_bound));
    }
    let points = chosen
        .iter()
        .map(|k| k.iter().map(|&c| scale * c as f64).collect())
        .collect();
    Ok(OrthoSet {
        dim: d,
        points,
        provenance: Provenance::GreedyLattice,
        scale,
        integer_coords: Some(chosen),
    })
}

/// Exhaustive variant of `build_greedy_set`: keeps every admissible integer
/// point with sup-norm at most `radius`, so the result is the full greedy
/// set restricted to the box `[-radius, radius]^d` (useful for counting
/// density against a growing box).
pub fn build_greedy_box(p: &Polytope<Rat>, radius: i64) -> Result<OrthoSet> {
    let hyperplanes = edge_hyperplanes(p)?;
    let normals: Vec<Vec<i64>> = hyperplanes
        .iter()
        .map(|h| h.normal.iter().map(crate::rat::bigint_to_i64).collect())
        .collect::<Result<_>>()?;
    let n = p
        .rationality()
        .common_denominator
        .expect("exact polytopes always have a common denominator");
    let d = p.dim();
    let scale = TAU * bigint_to_f64(&n);

    let mut chosen: Vec<Vec<i64>> = vec![vec![0; d]];
    for shell in 1..=radius {
        for k in shell_points(d, shell) {
            let admissible = chosen.iter().all(|prev| {
                normals.iter().all(|h| {
                    h.iter()
                        .zip(k.iter().zip(prev))
                        .map(|(&c, (a, b))| c * (a - b))
                        .sum::<i64>()
                        != 0
                })
            });
            if admissible {
                chosen.push(k);
            }
        }
    }
    let points = chosen
        .iter()
        .map(|k| k.iter().map(|&c| scale * c as f64).collect())
        .collect();
    Ok(OrthoSet {
        dim: d,
        points,
        provenance: Provenance::GreedyLattice,
        scale,
        integer_coords: Some(chosen),
    })
}

/// Result of the rank-one (axis) construction: the set is orthogonal for
/// the scaled polytope `N P`, whose k-th vertex components are integers.
#[derive(Debug, Clone)]
pub struct AxisConstruction {
    pub set: OrthoSet,
    /// `N P`, the polytope the orthogonality claim is exact for.
    pub scaled_polytope: Polytope<Rat>,
    /// The denominator-clearing factor applied to the polytope.
    pub n_scale: BigInt,
}

/// Rank-one lattice construction along coordinate axis `k`.
pub fn build_axis_set(p: &Polytope<Rat>, k: usize, count: usize) -> Result<AxisConstruction> {
    if !p.axis_edge_condition(k)? {
        return Err(Error::AxisEdgeViolation(k));
    }
    let d = p.dim();
    let n = crate::rat::lcm_denominators(p.vertices().iter().map(|v| &v[k]));
    let n_rat = Rat::new(n.clone(), BigInt::from(1));
    let mut scaling = identity::<Rat>(d);
    for row in scaling.iter_mut().enumerate() {
        row.1[row.0] = n_rat.clone();
    }
    let scaled_polytope = p.affine_map(&scaling, &vec![<Rat as Scalar>::zero(); d])?;

    let mut integer_coords = Vec::with_capacity(count);
    let mut points = Vec::with_capacity(count);
    for j in 0..count as i64 {
        let mut ik = vec![0i64; d];
        ik[k] = j;
        let mut pt = vec![0.0; d];
        pt[k] = TAU * j as f64;
        integer_coords.push(ik);
        points.push(pt);
    }
    Ok(AxisConstruction {
        set: OrthoSet {
            dim: d,
            points,
            provenance: Provenance::AxisLattice,
            scale: TAU,
            integer_coords: Some(integer_coords),
        },
        scaled_polytope,
        n_scale: n,
    })
}

/// Necessary-condition check: every nonzero point `w0` of an orthogonal set
/// contained in a lattice must satisfy `<w0, v - v'> = 2 pi m` for some
/// vertex pair and integer `m`. Reports the first witness per point and
/// flags violations.
pub fn check_necessary_condition<S: Scalar>(
    p: &Polytope<S>,
    set: &OrthoSet,
    tol: f64,
) -> Result<NecessaryConditionReport> {
    if !p.is_simple() {
        return Err(Error::NotSimple);
    }
    let verts: Vec<Vec<f64>> = p.vertices().iter().map(|v| to_f64_vec(v)).collect();
    let mut witnesses = Vec::new();
    let mut violations = Vec::new();
    for (idx, w0) in set.points.iter().enumerate() {
        if w0.iter().all(|&c| c == 0.0) {
            continue;
        }
        let mut found = false;
        'pairs: for a in 0..verts.len() {
            for b in 0..verts.len() {
                if a == b {
                    continue;
                }
                let t: f64 = w0
                    .iter()
                    .zip(sub_vec(&verts[a], &verts[b]))
                    .map(|(x, y)| x * y)
                    .sum::<f64>()
                    / TAU;
                let m = t.round();
                if (t - m).abs() <= tol {
                    witnesses.push(Witness {
                        point_index: idx,
                        vertex_pair: (a, b),
                        m: m as i64,
                        residual: (t - m).abs(),
                    });
                    found = true;
                    break 'pairs;
                }
            }
        }
        if !found {
            violations.push(idx);
        }
    }
    Ok(NecessaryConditionReport {
        witnesses,
        violations,
    })
}

/// Integer points with sup-norm exactly `radius`, in lexicographic order.
pub(crate) fn shell_points(d: usize, radius: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut current = vec![-radius; d];
    loop {
        if current.iter().any(|c| c.abs() == radius) {
            out.push(current.clone());
        }
        // lexicographic increment over [-radius, radius]^d
        let mut i = d;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] < radius {
                current[i] += 1;
                for c in current.iter_mut().skip(i + 1) {
                    *c = -radius;
                }
                break;
            }
        }
    }
}

fn dot_bigint(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn bigint_to_f64(n: &BigInt) -> f64 {
    let s = n.to_string();
    s.parse::<f64>().expect("decimal BigInt parses as f64")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::is_fourier_zero;
    use crate::geometry::hull_from_vertices;
    use crate::rat::{rat, rat_i64};

    fn poly(coords: &[&[i64]], dim: usize) -> Polytope<Rat> {
        let pts: Vec<Vec<Rat>> = coords
            .iter()
            .map(|p| p.iter().map(|&c| rat_i64(c)).collect())
            .collect();
        hull_from_vertices(&pts, dim).unwrap()
    }

    fn trapezoid() -> Polytope<Rat> {
        poly(&[&[1, 0], &[-1, 0], &[2, 1], &[-2, 1]], 2)
    }

    #[test]
    fn trapezoid_has_three_edge_hyperplanes() {
        let hs = edge_hyperplanes(&trapezoid()).unwrap();
        let mut normals: Vec<Vec<i64>> = hs
            .iter()
            .map(|h| h.normal.iter().map(|n| i64::try_from(n).unwrap()).collect())
            .collect();
        normals.sort();
        assert_eq!(normals, vec![vec![1, -1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn square_has_two_edge_hyperplanes() {
        let p = poly(&[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]], 2);
        assert_eq!(edge_hyperplanes(&p).unwrap().len(), 2);
    }

    #[test]
    fn greedy_points_replay_the_enumeration_rule() {
        // independent brute-force replay of the greedy rule for the
        // trapezoid's three hyperplanes w1 = 0, w1 = w2, w1 = -w2
        let avoid =
            |d: (i64, i64)| d.0 != 0 && d.0 != d.1 && d.0 != -d.1;
        let mut expected: Vec<(i64, i64)> = vec![(0, 0)];
        'outer: for r in 1..10i64 {
            for x in -r..=r {
                for y in -r..=r {
                    if x.abs().max(y.abs()) != r {
                        continue;
                    }
                    if expected.iter().all(|&(a, b)| avoid((x - a, y - b))) {
                        expected.push((x, y));
                        if expected.len() == 5 {
                            break 'outer;
                        }
                    }
                }
            }
        }
        let set = build_greedy_set(&trapezoid(), 5, 16).unwrap();
        let got: Vec<(i64, i64)> = set
            .integer_coords
            .as_ref()
            .unwrap()
            .iter()
            .map(|k| (k[0], k[1]))
            .collect();
        assert_eq!(got, expected);
        assert!((set.scale - TAU).abs() < 1e-15); // integer vertices: n = 1
    }

    #[test]
    fn greedy_differences_avoid_every_hyperplane_and_the_oracle_zero_set() {
        let p = trapezoid();
        let set = build_greedy_set(&p, 8, 16).unwrap();
        let ks = set.integer_coords.as_ref().unwrap();
        for i in 0..ks.len() {
            for j in 0..i {
                let d = (ks[i][0] - ks[j][0], ks[i][1] - ks[j][1]);
                assert!(d.0 != 0 && d.0 != d.1 && d.0 != -d.1);
                let w = [set.scale * d.0 as f64, set.scale * d.1 as f64];
                assert!(is_fourier_zero(&p, &w, 1e-8));
            }
        }
    }

    #[test]
    fn greedy_respects_fractional_vertices_via_the_denominator() {
        let p = hull_from_vertices(
            &[
                vec![rat(1, 2), rat_i64(0)],
                vec![rat(-1, 2), rat_i64(0)],
                vec![rat_i64(1), rat_i64(1)],
                vec![rat_i64(-1), rat_i64(1)],
            ],
            2,
        )
        .unwrap();
        let set = build_greedy_set(&p, 4, 16).unwrap();
        assert!((set.scale - 2.0 * TAU).abs() < 1e-12);
        for pair in set.points.iter().skip(1) {
            assert!(is_fourier_zero(&p, pair, 1e-8));
        }
    }

    #[test]
    fn enumeration_exhaustion_is_reported() {
        assert!(matches!(
            build_greedy_set(&trapezoid(), 1000, 2),
            Err(Error::EnumerationExhausted(2))
        ));
    }

    #[test]
    fn axis_construction_zeroes_the_transform() {
        let p = poly(&[&[0, 0], &[1, 0], &[2, 1]], 2);
        let c = build_axis_set(&p, 0, 5).unwrap();
        assert_eq!(c.n_scale, BigInt::from(1));
        let vol = c.scaled_polytope.volume();
        for pt in c.set.points.iter().skip(1) {
            let v = crate::fourier::fourier_oracle(&c.scaled_polytope, pt).value;
            assert!(v.norm() <= 1e-10 * vol, "residual {} at {pt:?}", v.norm());
        }
    }

    #[test]
    fn axis_construction_rejects_axis_parallel_edges() {
        let p = poly(&[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]], 2);
        assert!(matches!(
            build_axis_set(&p, 0, 3),
            Err(Error::AxisEdgeViolation(0))
        ));
    }

    #[test]
    fn axis_construction_clears_denominators() {
        let p = hull_from_vertices(
            &[
                vec![rat_i64(0), rat_i64(0)],
                vec![rat(1, 3), rat_i64(0)],
                vec![rat(2, 3), rat(1, 2)],
            ],
            2,
        )
        .unwrap();
        let c = build_axis_set(&p, 0, 4).unwrap();
        assert_eq!(c.n_scale, BigInt::from(3));
        // scaled polytope has integer first components
        for v in c.scaled_polytope.vertices() {
            assert!(v[0].is_integer());
        }
        let vol = c.scaled_polytope.volume();
        for pt in c.set.points.iter().skip(1) {
            let v = crate::fourier::fourier_oracle(&c.scaled_polytope, pt).value;
            assert!(v.norm() <= 1e-8 * vol);
        }
    }

    #[test]
    fn necessary_condition_finds_witnesses() {
        let square = poly(&[&[1, 1], &[1, -1], &[-1, 1], &[-1, -1]], 2);
        let set = OrthoSet {
            dim: 2,
            points: vec![vec![0.0, 0.0], vec![std::f64::consts::PI, 0.0]],
            provenance: Provenance::GreedyLattice,
            scale: 1.0,
            integer_coords: None,
        };
        let report = check_necessary_condition(&square, &set, 1e-9).unwrap();
        assert!(report.all_witnessed());
        // (pi, 0) is orthogonal to the vertical edges (witness with m = 0)
        // and pairs across the square give <w0, (2, *)> = 2 pi (m = 1)
        let w = &report.witnesses[0];
        assert!(w.m.abs() <= 1);
        assert!(w.residual <= 1e-12);

        // a generic non-lattice point has no witness
        let bad = OrthoSet {
            points: vec![vec![0.0, 0.0], vec![1.0, 0.3]],
            ..set
        };
        let report = check_necessary_condition(&square, &bad, 1e-9).unwrap();
        assert_eq!(report.violations, vec![1]);
    }

    #[test]
    fn greedy_output_passes_the_necessary_condition() {
        let p = trapezoid();
        let set = build_greedy_set(&p, 10, 16).unwrap();
        let report = check_necessary_condition(&p, &set, 1e-9).unwrap();
        assert!(report.all_witnessed());
    }

    #[test]
    fn greedy_box_is_a_prefix_closed_superset_of_the_counted_greedy_set() {
        let p = trapezoid();
        let boxed = build_greedy_box(&p, 12).unwrap();
        let counted = build_greedy_set(&p, 10, 12).unwrap();
        let box_coords = boxed.integer_coords.as_ref().unwrap();
        let counted_coords = counted.integer_coords.as_ref().unwrap();
        assert!(box_coords.len() >= counted_coords.len());
        assert_eq!(&box_coords[..counted_coords.len()], &counted_coords[..]);
        assert!(box_coords
            .iter()
            .all(|k| k.iter().all(|c| c.abs() <= 12)));
    }
}
