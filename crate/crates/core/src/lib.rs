//! Linear codes over finite Frobenius rings with homogeneous weights,
//! two-weight code constructions from projective ring geometries, and the
//! strongly regular graphs they induce.
//!
//! All arithmetic is exact: ring elements are table indices and weights are
//! rationals.

pub mod code;
pub mod constructions;
pub mod error;
pub mod geometry;
pub mod poset;
pub mod residue;
pub mod ring;
pub mod singer;
pub mod srg;
pub mod tables;
pub mod vector;
pub mod weight;

pub use error::{Error, Result};

/// Exact rational number used for weights and graph parameters.
pub type Rational = num_rational::Ratio<i64>;
