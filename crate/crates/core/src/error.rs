use core::fmt;

use thiserror::Error;

use crate::hypergraph::ExtNat;
use crate::set::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground set of {n} vertices exceeds the 64-vertex limit")]
    GroundTooLarge { n: u32 },

    #[error("vertex {vertex} is outside the ground set [0, {n})")]
    VertexOutOfRange { vertex: u32, n: u32 },

    #[error("uniformity {r} exceeds ground-set size {n}")]
    UniformityExceedsGround { r: u32, n: u32 },

    #[error("edge {edge} has {found} vertices, expected {expected}")]
    WrongEdgeSize { edge: VertexSet, expected: u32, found: u32 },

    #[error("duplicate edge {0}")]
    DuplicateEdge(VertexSet),

    #[error("degree index {i} is outside [0, {r}]")]
    DegreeOutOfRange { i: u32, r: u32 },

    #[error("vertex map is not a permutation of [0, {n})")]
    NotAPermutation { n: u32 },

    #[error("parameters k={k}, s={s}, t={t}, r={r} are outside the regime 1 <= s <= k, s <= t <= r: {reason}")]
    InvalidParams { k: u32, s: u32, t: u32, r: u32, reason: &'static str },

    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),

    #[error("hypothesis does not hold: {0}")]
    HypothesisViolation(Hypothesis),

    #[error("search budget exhausted ({0})")]
    BudgetExceeded(Limit),

    #[error("{what} has size {size}, above the cap of {cap}")]
    TooLarge { what: &'static str, size: u64, cap: u64 },

    #[error("{0} is not an edge of the hypergraph")]
    NotAnEdge(VertexSet),

    #[error("member {0} is not inside the ambient set")]
    OutsideAmbient(VertexSet),

    #[error("invalid sunflower: {0}")]
    InvalidSunflower(&'static str),

    #[error("invalid witness: {0}")]
    InvalidWitness(&'static str),
}

/// Which precondition of a lemma-style check failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hypothesis {
    WrongUniformity { expected: u32, found: u32 },
    NotIntersecting { t: u32 },
    CodegreeTooSmall { degree: ExtNat, threshold: u64 },
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hypothesis::WrongUniformity { expected, found } => {
                write!(f, "hypergraph is {found}-uniform, parameters require r={expected}")
            }
            Hypothesis::NotIntersecting { t } => write!(f, "hypergraph is not {t}-intersecting"),
            Hypothesis::CodegreeTooSmall { degree, threshold } => {
                write!(f, "minimum positive codegree {degree} is not above {threshold}")
            }
        }
    }
}

/// The budget dimension that stopped a search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Limit {
    Nodes(u64),
    Pairs(u64),
    Petals(usize),
    Results(u64),
    Interrupted,
}

impl fmt::Display for Limit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Limit::Nodes(n) => write!(f, "node limit {n}"),
            Limit::Pairs(n) => write!(f, "core-pair limit {n}"),
            Limit::Petals(n) => write!(f, "petal-family cap {n}"),
            Limit::Results(n) => write!(f, "result limit {n}"),
            Limit::Interrupted => f.write_str("interrupted"),
        }
    }
}
