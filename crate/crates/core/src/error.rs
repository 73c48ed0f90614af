use thiserror::Error;

use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring spec: {0}")]
    InvalidSpec(String),

    #[error("ring order {order} exceeds the cap of {cap}")]
    CapExceeded { order: usize, cap: usize },

    #[error("ring table check failed: {0}")]
    NotARing(String),

    #[error("ring {0} is not a Frobenius ring")]
    NotFrobenius(String),

    #[error("character sum for element {element} did not reduce to a rational number")]
    NonRationalSum { element: usize },

    #[error("relation is not a partial order: {0}")]
    NotAPartialOrder(String),

    #[error("enumeration of {requested} vectors exceeds the budget of {budget}")]
    BudgetExceeded { requested: u128, budget: u128 },

    #[error("code is not proper: nonzero codeword {word} has weight zero")]
    NotProper { word: usize },

    #[error("code is not a two-weight code (nonzero weights: {0})")]
    NotTwoWeight(String),

    #[error("ring {0} is not a chain ring of length 2")]
    NotChainRing(String),

    #[error("no primitive cubic polynomial found over a field of order {q}")]
    NoPrimitivePolynomial { q: usize },

    #[error("line segment is empty")]
    EmptySegment,

    #[error("s = {s} is out of range 1..={q}")]
    BadS { s: usize, q: usize },

    #[error("no base point produced an orbit satisfying the size and intersection invariants")]
    OrbitInvariantFailed,

    #[error("constructed code failed the two-weight check: {0}")]
    TwoWeightCheckFailed(String),

    #[error("weight {0} does not occur on a nonzero codeword")]
    WeightNotPresent(Rational),

    #[error("graph is empty or complete")]
    EmptyOrComplete,

    #[error("the two weights must differ")]
    EqualWeights,

    #[error("unsupported graph format: {0}")]
    UnsupportedFormat(String),

    #[error("bad element encoding: {0}")]
    BadEncoding(String),

    #[error("bad matrix: {0}")]
    BadMatrix(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
