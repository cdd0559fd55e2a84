//! Orthogonal projection of a transformed cube M*[-1,1]^d onto the first m
//! coordinates: a Minkowski sum of the projected segments [-g_i, g_i] with
//! g_i = Proj(M e_i). Vertex candidates are taken per facet direction (each
//! facet normal is orthogonal to an (m-1)-subset of generators), then the
//! final combinatorics come from the general hull code.

use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::scalar::{dot, Scalar};

use super::hull::hull_from_vertices;
use super::polytope::{matrix_scale, Polytope};
use super::{MAX_ZONOTOPE_DIM, PLANE_EPS, VERTEX_MERGE_EPS};

pub fn project_zonotope<S: Scalar>(matrix: &Mat<S>, m: usize) -> Result<Polytope<S>> {
    let d = matrix.len();
    if d > MAX_ZONOTOPE_DIM {
        return Err(Error::DimensionTooLarge(d, MAX_ZONOTOPE_DIM));
    }
    if m == 0 || m >= d {
        return Err(Error::AxisOutOfRange(m, d));
    }
    let eps = PLANE_EPS * matrix_scale(matrix);
    if linalg::det(matrix, eps).is_negligible(eps) {
        return Err(Error::SingularMatrix);
    }
    // g_i = first m coordinates of the i-th column of M
    let generators: Vec<Vec<S>> = (0..d)
        .map(|i| (0..m).map(|r| matrix[r][i].clone()).collect())
        .collect();

    if m == 1 {
        let half = generators
            .iter()
            .fold(S::zero(), |acc, g| {
                let x = g[0].clone();
                if x.to_f64() < 0.0 {
                    acc - x
                } else {
                    acc + x
                }
            });
        return hull_from_vertices(&[vec![-half.clone()], vec![half]], 1);
    }

    let mut candidates: Vec<Vec<S>> = Vec::new();
    for subset in combinations(d, m - 1) {
        let rows: Mat<S> = subset.iter().map(|&i| generators[i].clone()).collect();
        let ns = linalg::nullspace(&rows, eps);
        if ns.len() != 1 {
            continue; // subset does not span a facet direction
        }
        let normal = ns.into_iter().next().unwrap();
        // split generators by the sign of <normal, g>; the ones orthogonal
        // to the normal stay free and get both signs
        let mut fixed: Vec<Vec<S>> = vec![vec![S::zero(); m]];
        let mut free: Vec<&Vec<S>> = Vec::new();
        for g in &generators {
            let s = dot(&normal, g);
            if s.is_negligible(eps) {
                free.push(g);
            } else {
                let sign = if s.to_f64() > 0.0 { 1.0 } else { -1.0 };
                for point in fixed.iter_mut() {
                    for (pc, gc) in point.iter_mut().zip(g) {
                        let inc = gc.clone();
                        *pc = if sign > 0.0 {
                            pc.clone() + inc
                        } else {
                            pc.clone() - inc
                        };
                    }
                }
            }
        }
        // both signs over the free (facet-parallel) generators
        let mut points = fixed;
        for g in free {
            let mut next = Vec::with_capacity(points.len() * 2);
            for p in points {
                let plus: Vec<S> = p.iter().zip(g).map(|(a, b)| a.clone() + b.clone()).collect();
                let minus: Vec<S> = p.iter().zip(g).map(|(a, b)| a.clone() - b.clone()).collect();
                next.push(plus);
                next.push(minus);
            }
            points = next;
        }
        // the opposite facet (-normal) contributes the mirrored points
        for p in &points {
            candidates.push(p.iter().map(|x| -x.clone()).collect());
        }
        candidates.extend(points);
    }
    dedup(&mut candidates);
    hull_from_vertices(&candidates, m)
}

fn dedup<S: Scalar>(points: &mut Vec<Vec<S>>) {
    let mut out: Vec<Vec<S>> = Vec::new();
    'outer: for p in points.drain(..) {
        for q in &out {
            if p.iter()
                .zip(q)
                .all(|(a, b)| (a.clone() - b.clone()).is_negligible(VERTEX_MERGE_EPS))
            {
                continue 'outer;
            }
        }
        out.push(p);
    }
    *points = out;
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..k).collect();
    if k == 0 || k > n {
        return if k == 0 { vec![Vec::new()] } else { out };
    }
    loop {
        out.push(current.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] != i + n - k {
                current[i] += 1;
                for j in i + 1..k {
                    current[j] = current[j - 1] + 1;
                }
                break;
            }
        }
    }
}
