use thiserror::Error;

/// Errors raised across the library.
///
/// The variants map onto the CLI exit codes: input problems (1),
/// exhausted budgets (2) and numerical trouble (3).
#[derive(Debug, Error)]
pub enum Error {
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    #[error("edge list parse error on line {line}: {reason}")]
    EdgeList { line: usize, reason: String },

    #[error("invalid parameters for {family}: {reason}")]
    Domain { family: String, reason: String },

    #[error("graph has {n} vertices, maximum supported is {max}")]
    TooLarge { n: usize, max: usize },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("structural error: {0}")]
    Structure(String),

    #[error("resource limit: {0}")]
    Resource(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("theorem precondition violated (residual {residual:.3e}): {reason}")]
    TheoremViolation { residual: f64, reason: String },
}

impl Error {
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::Graph6 { .. }
            | Error::EdgeList { .. }
            | Error::Domain { .. }
            | Error::TooLarge { .. }
            | Error::Input(_)
            | Error::Structure(_) => 1,
            Error::Resource(_) => 2,
            Error::Numerical(_) | Error::TheoremViolation { .. } => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
