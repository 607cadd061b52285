//! Exact-arithmetic toolkit for lattice polytopes.
//!
//! The crate computes Ehrhart delta-vectors, tests reflexivity and the smooth
//! Fano property, builds and certifies unimodular cone triangulations, checks
//! the integer decomposition property up to a chosen dilation, and evaluates
//! the classical f-/h-vector bounds together with volume bounds for smooth
//! Fano polytopes. All decisions are made in exact integer or rational
//! arithmetic.

mod arith;
pub mod bounds;
pub mod dataset;
pub mod ehrhart;
pub mod idp;
mod error;
pub mod linalg;
pub mod polytope;
pub mod reflexive;
pub mod shapes;
pub mod triangulation;

pub use arith::{binomial, factorial};
pub use error::{Error, Result};
pub use linalg::{IntegerMatrix, IntegerVector};
pub use polytope::{FVector, FacetDescription, HVector, Location, Polytope};
