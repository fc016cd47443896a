use thiserror::Error;

/// Errors raised by the geometric, spectral and graph routines.
///
/// Line and vertex indices in messages are 1-based, like everywhere else in
/// the public surface.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("direction vector has (near) zero length")]
    ZeroDirection,
    #[error("lines {0} and {1} are not skew (parallel or intersecting)")]
    CoplanarPair(usize, usize),
    #[error("vectors {0} and {1} are parallel")]
    ParallelVectors(usize, usize),
    #[error("matrix is not symmetric (entry ({0},{1}))")]
    NotSymmetric(usize, usize),
    #[error("multi-index ({a},{b},{c}) does not sum to 2k = {}", 2 * .k)]
    BadMultiIndex { k: u32, a: u32, b: u32, c: u32 },
    #[error("argument {0} outside the domain [-1, 1]")]
    OutOfDomain(f64),
    #[error("graph with {n} vertices exceeds the brute-force limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("unknown built-in graph `{0}`")]
    UnknownName(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("no convergence after {starts} starts (best residual norm {best_residual:e})")]
    NoConvergence { starts: usize, best_residual: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
