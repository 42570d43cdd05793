use std::fmt;

use thiserror::Error;

/// Parse failure with a 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at {}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for SyntaxError {}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),

    #[error("unknown identifier '{name}' at {line}:{column}")]
    UnknownIdentifier { name: String, line: usize, column: usize },

    #[error("generator index {index} out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },

    #[error("resource cap exceeded: {what} would exceed {cap}")]
    CapExceeded { what: String, cap: usize },

    #[error("element is not in the kernel of phi")]
    NotInKernel,

    #[error("desk-scale bound: ell ∈ {{2,3}} (got {0})")]
    UnsupportedEll(u32),

    #[error("ell must be prime (got {0})")]
    NotPrime(u32),

    #[error("induced map is not bijective: {0}")]
    NonBijective(String),

    #[error("two neighbour translates of vertex {vertex} coincide")]
    MultiEdge { vertex: usize },

    #[error("cycle family is not a partition of the edge set: {0}")]
    NotAPartition(String),

    #[error("graph is not 4-valent at vertex {0}")]
    NotFourValent(usize),

    #[error("not a cycle cover: {0}")]
    NotACycleCover(String),

    #[error("graph is acyclic")]
    Acyclic,

    #[error("group element does not act by automorphisms: {0}")]
    ActionNotByAutomorphisms(String),

    #[error("graph with {n} vertices exceeds max_n = {max_n}")]
    TooLarge { n: usize, max_n: usize },

    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn at_stage(self, stage: &'static str) -> Error {
        Error::Stage { stage, source: Box::new(self) }
    }

    /// True when the failure is a budget/cap problem rather than a wrong answer.
    pub fn is_resource(&self) -> bool {
        match self {
            Error::CapExceeded { .. } | Error::UnsupportedEll(_) | Error::TooLarge { .. } => true,
            Error::Stage { source, .. } => source.is_resource(),
            _ => false,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
