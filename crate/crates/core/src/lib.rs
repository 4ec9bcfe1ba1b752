//! Exact analysis of parallelohedra: Minkowski–Venkov verification, belts,
//! the Venkov graph and its red/blue subgraphs, reducibility and constructive
//! factorization into irreducible direct factors, tiling lattices, finite
//! tiling patches with increment (gain) functions, and Voronoi cells of
//! rational lattices.
//!
//! All arithmetic is exact (arbitrary-precision rationals); nothing in this
//! crate touches floating point.

pub mod catalog;
pub mod error;
pub mod factorize;
pub mod format;
pub mod gain;
pub mod paratile;
pub mod polytope;
pub mod ratlin;
pub mod venkov;
pub mod voronoi;

pub use error::{Error, Result};
pub use ratlin::{Lattice, QMat, QVec, Rat};
pub use polytope::{Facet, Polytope, Ridge};
