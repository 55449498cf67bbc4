use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("entry {value} exceeds declared bound {bound}")]
    EntryBound { value: i64, bound: i64 },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// Vertices are 1-based, listed in cycle order.
    #[error("negative cycle through vertices {0:?}")]
    NegativeCycle(Vec<usize>),

    #[error("weight {weight} on arc ({from},{to}) is outside {{1..{bound}}}")]
    NonPositiveMode {
        from: usize,
        to: usize,
        weight: i64,
        bound: i64,
    },

    #[error("gave up after {0} attempts to generate a graph without negative cycles")]
    GenerationExhausted(usize),

    #[error("missing matrix A_{0}")]
    MissingSource(i64),

    #[error("{0} is not the diameter: no pair first appears at that threshold")]
    NotDiameter(i64),

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
