use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("invalid rational literal {0:?} (expected \"p\" or \"p/q\" with q != 0)")]
    BadRational(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

/// Validation failures when building a [`MetricTwoStepAlgebra`](crate::MetricTwoStepAlgebra).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("j[{index}] is not skew-symmetric: entry ({row},{col}) = {value} but ({col},{row}) = {mirror}")]
    NonSkew {
        index: usize,
        row: usize,
        col: usize,
        value: String,
        mirror: String,
    },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("bracket table is not antisymmetric at ({a},{b}): {detail}")]
    InconsistentAntisymmetry { a: usize, b: usize, detail: String },
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
}

/// Errors reading an algebra file, each tagged with the JSON path of the offending value.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemaError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("{path}: {message}")]
    At { path: String, message: String },
    #[error("{path}: {source}")]
    Algebra {
        path: String,
        #[source]
        source: AlgebraError,
    },
}

impl SchemaError {
    pub(crate) fn at(path: impl Into<String>, message: impl Into<String>) -> Self {
        SchemaError::At {
            path: path.into(),
            message: message.into(),
        }
    }
}
