use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::rat::lcm_denominators;
use crate::scalar::{dot, sub_vec, Rat, Scalar};

/// One facet of a polytope: points x on the facet satisfy
/// `<normal, x> = offset`, interior points satisfy `<normal, x> < offset`.
#[derive(Debug, Clone)]
pub struct Facet<S: Scalar> {
    pub normal: Vec<S>,
    pub offset: S,
    pub vertices: Vec<usize>,
}

impl<S: Scalar> Facet<S> {
    /// Outward unit normal in f64.
    pub fn unit_normal(&self) -> Vec<f64> {
        let n: Vec<f64> = self.normal.iter().map(Scalar::to_f64).collect();
        let len = n.iter().map(|x| x * x).sum::<f64>().sqrt();
        n.into_iter().map(|x| x / len).collect()
    }
}

/// A full-dimensional convex polytope with explicit combinatorics.
///
/// Immutable after construction; every query is pure.
#[derive(Debug, Clone)]
pub struct Polytope<S: Scalar> {
    pub(crate) dim: usize,
    pub(crate) vertices: Vec<Vec<S>>,
    pub(crate) facets: Vec<Facet<S>>,
    pub(crate) edges: Vec<(usize, usize)>,
    pub(crate) adjacency: Vec<Vec<usize>>,
}

/// Edge vectors emanating from a vertex of a simple polytope.
#[derive(Debug, Clone)]
pub struct EdgeFan<S: Scalar> {
    pub vertex: usize,
    pub edge_vectors: Vec<Vec<S>>,
}

/// Result of the rationality query on an exact polytope.
#[derive(Debug, Clone)]
pub struct Rationality {
    pub fully_rational: bool,
    /// Least common multiple of all coordinate denominators.
    pub common_denominator: Option<BigInt>,
    pub per_axis: Vec<bool>,
}

impl<S: Scalar> Polytope<S> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<S>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet<S>] {
        &self.facets
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adjacency
    }

    /// True iff every vertex has exactly `dim` neighbors.
    pub fn is_simple(&self) -> bool {
        self.adjacency.iter().all(|nb| nb.len() == self.dim)
    }

    /// True iff no edge has both endpoints with equal k-th coordinate.
    pub fn axis_edge_condition(&self, k: usize) -> Result<bool> {
        if k >= self.dim {
            return Err(Error::AxisOutOfRange(k, self.dim));
        }
        Ok(self.edges.iter().all(|&(a, b)| {
            let diff = self.vertices[a][k].clone() - self.vertices[b][k].clone();
            !diff.is_negligible(super::VERTEX_MERGE_EPS)
        }))
    }

    /// The edge vectors `v_i - v` to the neighbors of vertex `v`.
    /// Requires the polytope to be simple at `v`.
    pub fn edge_fan(&self, v: usize) -> Result<EdgeFan<S>> {
        let neighbors = &self.adjacency[v];
        if neighbors.len() != self.dim {
            return Err(Error::NotSimpleAtVertex(v));
        }
        let edge_vectors: Vec<Vec<S>> = neighbors
            .iter()
            .map(|&n| sub_vec(&self.vertices[n], &self.vertices[v]))
            .collect();
        Ok(EdgeFan {
            vertex: v,
            edge_vectors,
        })
    }

    /// Image under `x -> M x + t`, preserving combinatorics.
    pub fn affine_map(&self, m: &Mat<S>, t: &[S]) -> Result<Polytope<S>> {
        let eps = super::PLANE_EPS * matrix_scale(m);
        if linalg::det(m, eps).is_negligible(eps) {
            return Err(Error::SingularMatrix);
        }
        let minv = linalg::invert(m, eps)?;
        let vertices: Vec<Vec<S>> = self
            .vertices
            .iter()
            .map(|v| {
                linalg::mat_vec(m, v)
                    .into_iter()
                    .zip(t)
                    .map(|(x, ti)| x + ti.clone())
                    .collect()
            })
            .collect();
        // facet normals transform by the inverse transpose
        let minv_t = linalg::transpose(&minv);
        let facets = self
            .facets
            .iter()
            .map(|f| {
                let normal = linalg::mat_vec(&minv_t, &f.normal);
                // offset from any incident vertex
                let offset = dot(&normal, &vertices[f.vertices[0]]);
                let mut f2 = Facet {
                    normal,
                    offset,
                    vertices: f.vertices.clone(),
                };
                // keep the outward orientation: interior must stay negative
                let centroid = centroid(&vertices);
                let side = dot(&f2.normal, &centroid) - f2.offset.clone();
                if side.to_f64() > 0.0 {
                    f2.normal = f2.normal.into_iter().map(|x| -x).collect();
                    f2.offset = -f2.offset;
                }
                f2
            })
            .collect();
        Ok(Polytope {
            dim: self.dim,
            vertices,
            facets,
            edges: self.edges.clone(),
            adjacency: self.adjacency.clone(),
        })
    }

    /// f64 view with identical combinatorics.
    pub fn to_f64(&self) -> Polytope<f64> {
        Polytope {
            dim: self.dim,
            vertices: self
                .vertices
                .iter()
                .map(|v| v.iter().map(Scalar::to_f64).collect())
                .collect(),
            facets: self
                .facets
                .iter()
                .map(|f| Facet {
                    normal: f.normal.iter().map(Scalar::to_f64).collect(),
                    offset: f.offset.to_f64(),
                    vertices: f.vertices.clone(),
                })
                .collect(),
            edges: self.edges.clone(),
            adjacency: self.adjacency.clone(),
        }
    }

    /// Euclidean volume via fan triangulation.
    pub fn volume(&self) -> f64 {
        let tri = super::triangulate(self);
        let verts: Vec<Vec<f64>> = self
            .vertices
            .iter()
            .map(|v| v.iter().map(Scalar::to_f64).collect())
            .collect();
        let d = self.dim;
        let mut total = 0.0;
        let mut factorial = 1.0;
        for k in 1..=d {
            factorial *= k as f64;
        }
        for simplex in &tri {
            let base = &verts[simplex[0]];
            let edges: Mat<f64> = simplex[1..]
                .iter()
                .map(|&i| sub_vec(&verts[i], base))
                .collect();
            total += linalg::det(&edges, 0.0).abs() / factorial;
        }
        total
    }
}

impl Polytope<Rat> {
    /// Common denominator and per-axis rationality. Exact vertices are
    /// rational by construction, so this always succeeds in exact mode;
    /// numeric polytopes must use their own provenance instead.
    pub fn rationality(&self) -> Rationality {
        let n = lcm_denominators(self.vertices.iter().flatten());
        Rationality {
            fully_rational: true,
            common_denominator: Some(n),
            per_axis: vec![true; self.dim],
        }
    }
}

/// The cube `[-1, 1]^dim` with its combinatorics written down directly
/// (2^dim vertices in lexicographic order, 2*dim facets, dim*2^(dim-1)
/// edges) — hull enumeration would be needlessly exponential here.
pub fn cube<S: Scalar>(dim: usize) -> Polytope<S> {
    assert!(dim >= 1, "cube dimension must be positive");
    let n = 1usize << dim;
    let coord = |idx: usize, j: usize| (idx >> (dim - 1 - j)) & 1 == 1;
    let vertices: Vec<Vec<S>> = (0..n)
        .map(|idx| {
            (0..dim)
                .map(|j| if coord(idx, j) { S::one() } else { -S::one() })
                .collect()
        })
        .collect();
    let mut facets = Vec::with_capacity(2 * dim);
    for j in 0..dim {
        for positive in [false, true] {
            let mut normal = vec![S::zero(); dim];
            normal[j] = if positive { S::one() } else { -S::one() };
            let incident: Vec<usize> =
                (0..n).filter(|&idx| coord(idx, j) == positive).collect();
            facets.push(Facet {
                normal,
                offset: S::one(),
                vertices: incident,
            });
        }
    }
    let mut edges = Vec::with_capacity(dim * n / 2);
    for a in 0..n {
        for j in 0..dim {
            let b = a ^ (1 << (dim - 1 - j));
            if a < b {
                edges.push((a, b));
            }
        }
    }
    let adjacency = {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for nb in adj.iter_mut() {
            nb.sort_unstable();
        }
        adj
    };
    Polytope {
        dim,
        vertices,
        facets,
        edges,
        adjacency,
    }
}

pub(crate) fn centroid<S: Scalar>(points: &[Vec<S>]) -> Vec<S> {
    let d = points[0].len();
    let n = S::from_i64(points.len() as i64);
    (0..d)
        .map(|j| {
            points
                .iter()
                .fold(S::zero(), |acc, p| acc + p[j].clone())
                / n.clone()
        })
        .collect()
}

pub(crate) fn matrix_scale<S: Scalar>(m: &Mat<S>) -> f64 {
    m.iter()
        .flatten()
        .map(Scalar::magnitude)
        .fold(1.0, f64::max)
}
