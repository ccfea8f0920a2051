use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("hypergraph has no hyperedge with at least two distinct members")]
    EmptyHypergraph,

    #[error("node {node} is out of range for a hypergraph with {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("adjacency is undefined on the diagonal (u = v = {0})")]
    DiagonalAdjacency(usize),

    #[error("hypergraph is not connected ({components} components); extract the largest component first")]
    Disconnected { components: usize },

    #[error("hypergraph needs at least {needed} nodes, found {found}")]
    TooFewNodes { needed: usize, found: usize },

    #[error("line {line}: cannot parse `{token}` as a node id")]
    Parse { line: usize, token: String },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("threshold p must lie in (0, 1], got {0}")]
    Threshold(f64),

    #[error("seed-set size k = {k} is infeasible for a hypergraph with {n} nodes")]
    SeedSetSize { k: usize, n: usize },

    #[error("invalid generator spec: {0}")]
    Generator(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("unknown algorithm `{0}`")]
    UnknownAlgorithm(String),

    #[error("rank-sum test needs at least 2 observations per sample, got {0} and {1}")]
    SampleTooSmall(usize, usize),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
