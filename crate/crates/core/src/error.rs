use thiserror::Error;

/// Errors raised by the solver, the analysis tools and the front end.
#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("non-finite value {value} in cell {cell} at t = {time}")]
    NonFinite { cell: usize, time: f64, value: f64 },

    #[error("diffusion coefficient undefined for q = {value} in cell {cell}")]
    Domain { cell: usize, value: f64 },

    #[error("benchmark {0} has no closed-form solution")]
    NoExactSolution(String),

    #[error("grid mismatch: expected {expected} cells, got {found}")]
    GridMismatch { expected: usize, found: usize },

    #[error("mesh of {coarse} cells does not divide the {fine}-cell reference mesh")]
    NonDivisibleMesh { coarse: usize, fine: usize },

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("study aborted on the {cells}-cell mesh: {source}")]
    Study {
        cells: usize,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for failures caused by the numerics rather than by the setup.
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::NonFinite { .. } | Error::Domain { .. } | Error::Consistency(_) => true,
            Error::Study { source, .. } => source.is_numerical(),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
