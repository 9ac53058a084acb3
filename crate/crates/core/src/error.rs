use thiserror::Error;

use crate::scalar::ParseScalarError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum JordanError {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("local inverse does not exist: the polynomial vanishes at the expansion point")]
    SingularLocalInverse,
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("matrix is not unipotent")]
    NotUnipotent,
    #[error("shape mismatch: {0}")]
    ShapeError(String),
    #[error("exact mode unavailable: irreducible factor {factor} has degree {degree}")]
    ExactModeUnavailable { factor: String, degree: usize },
    #[error("numeric roots are not separated: {0}")]
    ClusterAmbiguity(String),
    #[error("root finding did not converge: {0}")]
    NoConvergence(String),
    #[error("matrix is not semisimple")]
    NotSemisimple,
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("dimension {n} exceeds the limit {max}")]
    SizeLimit { n: usize, max: usize },
    #[error("not a member of {0}")]
    NotMember(String),
    #[error("inconsistent input: {0}")]
    InconsistentInput(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("radical arithmetic exceeded its budget: {0}")]
    RadicalBudget(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl JordanError {
    /// Process exit code for the command-line front end.
    ///
    /// 2 invalid input, 3 singular matrix for a multiplicative request,
    /// 4 exact mode unavailable, 1 for failures after the input was accepted.
    pub fn exit_code(&self) -> i32 {
        match self {
            JordanError::NotInvertible => 3,
            JordanError::ExactModeUnavailable { .. } => 4,
            JordanError::InvalidInput(_)
            | JordanError::ShapeError(_)
            | JordanError::DegenerateInput(_)
            | JordanError::SizeLimit { .. }
            | JordanError::NotMember(_)
            | JordanError::NotSemisimple
            | JordanError::NotNilpotent
            | JordanError::NotUnipotent
            | JordanError::InconsistentInput(_) => 2,
            _ => 1,
        }
    }

    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            JordanError::DegenerateInput(_) => "DegenerateInput",
            JordanError::SingularLocalInverse => "SingularLocalInverse",
            JordanError::NotNilpotent => "NotNilpotent",
            JordanError::NotUnipotent => "NotUnipotent",
            JordanError::ShapeError(_) => "ShapeError",
            JordanError::ExactModeUnavailable { .. } => "ExactModeUnavailable",
            JordanError::ClusterAmbiguity(_) => "ClusterAmbiguity",
            JordanError::NoConvergence(_) => "NoConvergence",
            JordanError::NotSemisimple => "NotSemisimple",
            JordanError::NotInvertible => "NotInvertible",
            JordanError::SizeLimit { .. } => "SizeLimit",
            JordanError::NotMember(_) => "NotMember",
            JordanError::InconsistentInput(_) => "InconsistentInput",
            JordanError::InvalidInput(_) => "InvalidInput",
            JordanError::RadicalBudget(_) => "RadicalBudget",
            JordanError::Internal(_) => "Internal",
        }
    }
}

impl From<ParseScalarError> for JordanError {
    fn from(e: ParseScalarError) -> Self {
        JordanError::InvalidInput(e.to_string())
    }
}

pub type Result<T, E = JordanError> = std::result::Result<T, E>;
