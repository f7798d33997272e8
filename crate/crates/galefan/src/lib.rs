//! Exact-arithmetic toolkit for the dictionary between point
//! configurations with virtual chambers, triangulated vector
//! configurations, complete simplicial fans over (quasi)lattices, and
//! polytope presentations. Every check returns a verifiable certificate:
//! a witness vector, a height function, an exact Farkas infeasibility
//! proof, or a counterexample index set.

pub mod error;
pub mod poly;
pub mod scalar;

pub mod hnf;
pub mod matrix;

pub mod lp;

pub mod config;
pub mod fan;
pub mod lvmb;
pub mod polytope;

pub mod fixtures;
pub mod json;
pub mod svg;

pub use error::Error;
pub use scalar::{AlgebraicField, Scalar};

/// Default seed for every randomized cross-check in the library.
pub const DEFAULT_SEED: u64 = 0x5EED;
