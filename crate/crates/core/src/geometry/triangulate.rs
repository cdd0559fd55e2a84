//! Deterministic fan triangulation: cone from the lexicographically smallest
//! vertex over recursively triangulated facets. Facets are triangulated by
//! dropping the coordinate axis with the largest normal component, which is
//! an affine bijection on the facet's hyperplane and therefore preserves the
//! combinatorics of the sub-triangulation.

use crate::scalar::Scalar;

use super::hull::hull_from_vertices;
use super::polytope::Polytope;

/// Returns simplices as vertex-index lists of length `dim + 1`.
pub fn triangulate<S: Scalar>(p: &Polytope<S>) -> Vec<Vec<usize>> {
    let d = p.dim();
    if d == 1 {
        return vec![vec![0, p.vertices().len() - 1]];
    }
    let apex = lex_min(p.vertices());
    let mut simplices = Vec::new();
    for facet in p.facets() {
        if facet.vertices.contains(&apex) {
            continue;
        }
        let drop_axis = facet
            .normal
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.magnitude().partial_cmp(&b.1.magnitude()).unwrap())
            .map(|(i, _)| i)
            .unwrap();
        let projected: Vec<Vec<S>> = facet
            .vertices
            .iter()
            .map(|&v| {
                let mut coords = p.vertices()[v].clone();
                coords.remove(drop_axis);
                coords
            })
            .collect();
        let sub = hull_from_vertices(&projected, d - 1)
            .expect("facet projection must stay full-dimensional");
        // map sub-polytope vertex order back to original indices
        let back: Vec<usize> = sub
            .vertices()
            .iter()
            .map(|sv| {
                facet.vertices[projected
                    .iter()
                    .position(|pv| {
                        pv.iter()
                            .zip(sv)
                            .all(|(a, b)| (a.clone() - b.clone()).is_negligible(super::VERTEX_MERGE_EPS))
                    })
                    .expect("projected vertex must map back")]
            })
            .collect();
        for sub_simplex in triangulate(&sub) {
            let mut simplex: Vec<usize> = sub_simplex.iter().map(|&i| back[i]).collect();
            simplex.push(apex);
            simplices.push(simplex);
        }
    }
    simplices
}

fn lex_min<S: Scalar>(vertices: &[Vec<S>]) -> usize {
    let mut best = 0;
    for i in 1..vertices.len() {
        if lex_less(&vertices[i], &vertices[best]) {
            best = i;
        }
    }
    best
}

fn lex_less<S: Scalar>(a: &[S], b: &[S]) -> bool {
    for (x, y) in a.iter().zip(b) {
        let d = (x.clone() - y.clone()).to_f64();
        if d < 0.0 {
            return true;
        }
        if d > 0.0 {
            return false;
        }
    }
    false
}
