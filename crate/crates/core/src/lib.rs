//! Orthogonal exponentials for convex polytopes.
//!
//! A frequency set `Lambda` makes `{exp(i <lambda, x>)}` orthogonal in
//! `L^2(P)` exactly when the Fourier transform of the indicator of `P`
//! vanishes on all differences of distinct points of `Lambda`. This crate
//! constructs such infinite sets for simple polytopes, checks necessary
//! conditions on the leading frequencies, measures the upper density of the
//! constructed sets, and extends the machinery to weighted orthogonality for
//! cube shadows (projections of linearly transformed cubes).

pub mod error;
pub mod scalar;
pub mod rat;
pub mod linalg;
pub mod intlat;
pub mod geometry;
pub mod fourier;
pub mod constructions;
pub mod fixtures;
pub mod verify;
pub mod weighted;
pub mod density;

pub use error::{Error, Result};
pub use scalar::{Rat, Scalar};
