use thiserror::Error;

/// Errors produced by grid parsing, moves, and the homology pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("illegal move: {0}")]
    IllegalMove(String),

    #[error(
        "grid size {n} exceeds generator cap {cap} ({n}! generators); raise --cap to override"
    )]
    CapExceeded { n: usize, cap: usize },

    #[error("operation requires a knot, but the link has {ell} components")]
    NotAKnot { ell: usize },

    #[error("point lies on the link projection")]
    PointOnLink,

    #[error("exact division failed: {0}")]
    DivisionFailure(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the CLI: 2 for input problems, 3 for resource
    /// caps, 1 for everything else (property failures are reported by the
    /// verify machinery, not through this enum).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::InvalidGrid(_) | Error::Io(_) => 2,
            Error::CapExceeded { .. } => 3,
            _ => 1,
        }
    }
}
