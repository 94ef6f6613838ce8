use std::path::PathBuf;

use thiserror::Error;

use crate::lattice::Vertex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("grid side must be at least 3, got {side_x}x{side_y}")]
    GridTooSmall { side_x: usize, side_y: usize },

    #[error("the self-loop slot has no neighbor")]
    LoopHasNoNeighbor,

    #[error("vertices {0} and {1} are not adjacent on the lattice")]
    NotAnEdge(Vertex, Vertex),

    #[error("vertex {vertex} lies outside the {side_x}x{side_y} lattice")]
    VertexOutOfRange { vertex: Vertex, side_x: usize, side_y: usize },

    #[error("self-loop weight must be finite and non-negative, got {0}")]
    InvalidLoopWeight(f64),

    #[error("break probability must lie in [0, 1], got {0}")]
    InvalidBreakProbability(f64),

    #[error("{what} must be at least 1")]
    ZeroCount { what: &'static str },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("state has zero norm")]
    ZeroNorm,

    #[error("cannot average an empty sequence")]
    Empty,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}: {source}", path.display())]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },

    #[error("{}: {source}", path.display())]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },

    #[error("thread pool: {0}")]
    ThreadPool(#[from] rayon::ThreadPoolBuildError),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
