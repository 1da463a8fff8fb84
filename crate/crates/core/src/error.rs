use thiserror::Error;

/// Errors raised by the library and the command-line front end.
#[derive(Debug, Error)]
pub enum Error {
    /// Shapes, owners or algebras of the operands do not line up.
    #[error("structural error: {0}")]
    Structural(String),

    /// A bimodule axiom fails beyond tolerance. `axiom` names the residual.
    #[error("axiom violation: {axiom} (residual {residual:.3e})")]
    AxiomViolation { axiom: String, residual: f64 },

    /// The scalarized Gram form of an algebraic tensor product is not positive.
    #[error("invalid module: {0}")]
    InvalidModule(String),

    /// A ladder level outside the constructed range was requested.
    #[error("level {level} outside ladder range [-{max}, {max}]")]
    OutOfRange { level: i32, max: i32 },

    /// A window index outside [-N, N].
    #[error("index {index} outside window [-{radius}, {radius}]")]
    OutsideWindow { index: i32, radius: i32 },

    #[error("map is not adjointable: right/left-linearity residual {0:.3e}")]
    NotAdjointable(f64),

    #[error("map is not a creation operator: reconstruction residual {0:.3e}")]
    NotCreationOperator(f64),

    #[error("module is not full: rank {rank} of {expected}")]
    NotFull { rank: usize, expected: usize },

    #[error("matrix is not Toeplitz: residual {residual:.3e} at ({i}, {j})")]
    NotToeplitz { residual: f64, i: i32, j: i32 },

    #[error("unknown builtin model `{0}`")]
    UnknownModel(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Short machine-readable tag used in CLI error records and FFI codes.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Structural(_) => "structural",
            Error::AxiomViolation { .. } => "axiom-violation",
            Error::InvalidModule(_) => "invalid-module",
            Error::OutOfRange { .. } => "out-of-range",
            Error::OutsideWindow { .. } => "outside-window",
            Error::NotAdjointable(_) => "not-adjointable",
            Error::NotCreationOperator(_) => "not-creation-operator",
            Error::NotFull { .. } => "not-full",
            Error::NotToeplitz { .. } => "not-toeplitz",
            Error::UnknownModel(_) => "unknown-model",
            Error::Parse(_) => "parse",
            Error::Io(_) => "io",
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
