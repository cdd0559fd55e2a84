//! Facet enumeration by exhaustive hyperplane search. Each d-subset of the
//! input points that spans a hyperplane with every other point on one side
//! contributes a facet; extreme points are exactly the points incident to at
//! least d facets. Combinatorial cost C(n, d) — intended for desk-scale
//! inputs, guarded by `MAX_HULL_DIM`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::scalar::{dot, sub_vec, Scalar};

use super::polytope::{Facet, Polytope};
use super::{MAX_HULL_DIM, PLANE_EPS, VERTEX_MERGE_EPS};

pub fn hull_from_vertices<S: Scalar>(points: &[Vec<S>], dim: usize) -> Result<Polytope<S>> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    if dim == 0 || dim > MAX_HULL_DIM {
        return Err(Error::DimensionTooLarge(dim, MAX_HULL_DIM));
    }
    let points = dedup_points(points);
    let scale = coord_scale(&points);
    let eps = PLANE_EPS * scale;

    let arank = affine_rank(&points, eps);
    if arank < dim {
        return Err(Error::DegenerateInput {
            rank: arank,
            dim,
        });
    }

    let facets = enumerate_facets(&points, dim, eps)?;

    // extreme points: incident to at least dim facets
    let mut incident = vec![0usize; points.len()];
    for f in &facets {
        for &v in &f.vertices {
            incident[v] += 1;
        }
    }
    let mut keep: Vec<usize> = (0..points.len()).filter(|&i| incident[i] >= dim).collect();
    keep.sort_by(|&a, &b| lex_cmp(&points[a], &points[b]));
    let remap: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(new, &old)| (old, new)).collect();
    let vertices: Vec<Vec<S>> = keep.iter().map(|&i| points[i].clone()).collect();
    let facets: Vec<Facet<S>> = facets
        .into_iter()
        .map(|f| {
            let mut vs: Vec<usize> = f
                .vertices
                .iter()
                .filter_map(|v| remap.get(v).copied())
                .collect();
            vs.sort_unstable();
            Facet {
                normal: f.normal,
                offset: f.offset,
                vertices: vs,
            }
        })
        .collect();

    // sanity: every facet keeps at least d extreme points
    for f in &facets {
        if f.vertices.len() < dim {
            return Err(Error::DegenerateInput {
                rank: f.vertices.len(),
                dim,
            });
        }
    }

    let edges = edges_from_facets(&vertices, &facets, dim, eps);
    let adjacency = adjacency_from_edges(vertices.len(), &edges);
    Ok(Polytope {
        dim,
        vertices,
        facets,
        edges,
        adjacency,
    })
}

fn dedup_points<S: Scalar>(points: &[Vec<S>]) -> Vec<Vec<S>> {
    let mut out: Vec<Vec<S>> = Vec::new();
    'outer: for p in points {
        for q in &out {
            if p.iter()
                .zip(q)
                .all(|(a, b)| (a.clone() - b.clone()).is_negligible(VERTEX_MERGE_EPS))
            {
                continue 'outer;
            }
        }
        out.push(p.clone());
    }
    out
}

fn coord_scale<S: Scalar>(points: &[Vec<S>]) -> f64 {
    points
        .iter()
        .flatten()
        .map(Scalar::magnitude)
        .fold(1.0, f64::max)
}

fn affine_rank<S: Scalar>(points: &[Vec<S>], eps: f64) -> usize {
    if points.len() < 2 {
        return 0;
    }
    let diffs: Mat<S> = points[1..]
        .iter()
        .map(|p| sub_vec(p, &points[0]))
        .collect();
    linalg::rank(&diffs, eps)
}

fn lex_cmp<S: Scalar>(a: &[S], b: &[S]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let d = (x.clone() - y.clone()).to_f64();
        if d < 0.0 {
            return std::cmp::Ordering::Less;
        }
        if d > 0.0 {
            return std::cmp::Ordering::Greater;
        }
    }
    std::cmp::Ordering::Equal
}

fn enumerate_facets<S: Scalar>(
    points: &[Vec<S>],
    dim: usize,
    eps: f64,
) -> Result<Vec<Facet<S>>> {
    let n = points.len();
    let mut facets: BTreeMap<Vec<usize>, Facet<S>> = BTreeMap::new();
    let mut subset: Vec<usize> = (0..dim).collect();
    if n < dim {
        return Err(Error::DegenerateInput { rank: n, dim });
    }
    loop {
        if let Some(facet) = facet_from_subset(points, &subset, dim, eps) {
            facets.entry(facet.vertices.clone()).or_insert(facet);
        }
        // next combination
        let mut i = dim;
        loop {
            if i == 0 {
                return Ok(facets.into_values().collect());
            }
            i -= 1;
            if subset[i] != i + n - dim {
                subset[i] += 1;
                for j in i + 1..dim {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn facet_from_subset<S: Scalar>(
    points: &[Vec<S>],
    subset: &[usize],
    dim: usize,
    eps: f64,
) -> Option<Facet<S>> {
    let base = &points[subset[0]];
    let diffs: Mat<S> = subset[1..]
        .iter()
        .map(|&i| sub_vec(&points[i], base))
        .collect();
    let mut normal = if dim == 1 {
        vec![S::one()]
    } else {
        let ns = linalg::nullspace(&diffs, eps);
        if ns.len() != 1 {
            return None; // affinely dependent subset, or dim-1 case handled above
        }
        ns.into_iter().next().unwrap()
    };
    normalize_direction(&mut normal);
    let offset = dot(&normal, base);
    let mut any_pos = false;
    let mut any_neg = false;
    let mut on_plane: Vec<usize> = Vec::new();
    for (i, p) in points.iter().enumerate() {
        let s = dot(&normal, p) - offset.clone();
        if s.is_negligible(eps) {
            on_plane.push(i);
        } else if s.to_f64() > 0.0 {
            any_pos = true;
        } else {
            any_neg = true;
        }
        if any_pos && any_neg {
            return None;
        }
    }
    let (normal, offset) = if any_pos {
        (normal.into_iter().map(|x| -x).collect(), -offset)
    } else {
        (normal, offset)
    };
    on_plane.sort_unstable();
    Some(Facet {
        normal,
        offset,
        vertices: on_plane,
    })
}

/// Canonical scaling so that equal hyperplanes compare equal: make the
/// largest-magnitude entry +/- 1 and the first nonzero entry positive.
fn normalize_direction<S: Scalar>(v: &mut [S]) {
    let mut best = 0;
    for (i, x) in v.iter().enumerate() {
        if x.magnitude() > v[best].magnitude() {
            best = i;
        }
    }
    let pivot = v[best].clone();
    for x in v.iter_mut() {
        *x = x.clone() / pivot.clone();
    }
    if let Some(first) = v.iter().position(|x| x.magnitude() > 1e-7) {
        if v[first].to_f64() < 0.0 {
            for x in v.iter_mut() {
                *x = -x.clone();
            }
        }
    }
}

/// Two extreme points span an edge iff their shared facets cut out a
/// one-dimensional face, i.e. the shared facet normals have rank d-1.
pub(super) fn edges_from_facets<S: Scalar>(
    vertices: &[Vec<S>],
    facets: &[Facet<S>],
    dim: usize,
    eps: f64,
) -> Vec<(usize, usize)> {
    let n = vertices.len();
    let mut on_facets: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (fi, f) in facets.iter().enumerate() {
        for &v in &f.vertices {
            on_facets[v].push(fi);
        }
    }
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let shared: Vec<usize> = on_facets[a]
                .iter()
                .copied()
                .filter(|f| on_facets[b].contains(f))
                .collect();
            if dim == 1 {
                edges.push((a, b));
                continue;
            }
            if shared.len() < dim - 1 {
                continue;
            }
            let normals: Mat<S> = shared.iter().map(|&f| facets[f].normal.clone()).collect();
            if linalg::rank(&normals, eps) == dim - 1 {
                edges.push((a, b));
            }
        }
    }
    edges
}

pub(super) fn adjacency_from_edges(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    for nb in adj.iter_mut() {
        nb.sort_unstable();
    }
    adj
}
