//! Exact (rational) and numeric convex polytopes: hull construction from
//! vertex lists, facet/edge combinatorics, edge fans, affine images and
//! zonotope projections.

mod hull;
mod polytope;
mod triangulate;
mod zonotope;

pub use hull::hull_from_vertices;
pub use polytope::{cube, EdgeFan, Facet, Polytope, Rationality};
pub use triangulate::triangulate;
pub use zonotope::project_zonotope;

/// Absolute coordinate tolerance for merging coincident numeric vertices.
pub const VERTEX_MERGE_EPS: f64 = 1e-12;

/// Relative tolerance for numeric hyperplane membership tests.
pub const PLANE_EPS: f64 = 1e-9;

/// General-position hull construction is rejected above this dimension.
pub const MAX_HULL_DIM: usize = 8;

/// Sign-enumeration guard for zonotope projections.
pub const MAX_ZONOTOPE_DIM: usize = 20;
