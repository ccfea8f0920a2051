//! Seed selection for influence maximization on hypergraphs under the
//! threshold propagation model.
//!
//! The crate provides an immutable [`Hypergraph`], exact and approximate
//! [`cascade`] evaluation, a discrete particle swarm optimizer with
//! degree-biased initialization and neighborhood local search ([`swarm`]),
//! heuristic and evolutionary [`baselines`], synthetic [`generators`], and an
//! experiment harness with rank-sum significance testing ([`bench`]).

pub mod baselines;
pub mod bench;
pub mod cascade;
pub mod error;
pub mod generators;
pub mod hypergraph;
pub mod rng;
pub mod swarm;

pub use error::{Error, Result};
pub use hypergraph::Hypergraph;
