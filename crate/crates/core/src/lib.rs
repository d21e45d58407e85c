//! Exact combinatorics for `t`-intersecting `r`-graphs with a minimum
//! positive codegree condition.
//!
//! Everything here is pure and allocation-only, so the crate builds under
//! `no_std` with `alloc`. File formats, reports and the command line live in
//! the companion `codegree` crate.
#![no_std]

extern crate alloc;

pub mod badtriple;
pub mod error;
pub mod extremal;
pub mod hypergraph;
pub mod kernels;
pub mod limits;
pub mod set;
pub mod shadow;
pub mod sunflower;

pub use error::{Error, Hypothesis, Limit};
pub use hypergraph::{require_hypothesis, ExtNat, Hypergraph, Params};
pub use limits::SearchLimits;
pub use set::{binomial, VertexSet};
pub use sunflower::Sunflower;
