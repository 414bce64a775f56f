use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("characteristic {0} is too large (must fit in 31 bits)")]
    CharacteristicTooLarge(u64),

    #[error("{0} variables requested, at most {max} supported", max = crate::ring::MAX_VARS)]
    TooManyVariables(usize),

    #[error("variable count mismatch: {0} vs {1}")]
    VariableCountMismatch(usize, usize),

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A configured resource limit was hit. `stage` names the computation
    /// that gave up.
    #[error("resource limit exceeded in {stage}: {detail}")]
    ResourceLimit { stage: String, detail: String },

    #[error("no fixed point reached within {iterations} iterations")]
    NonTermination { iterations: usize },

    #[error("degree bound violated at iteration {iteration}: degree {degree} > bound {bound}")]
    DegreeBound {
        iteration: usize,
        degree: u32,
        bound: u32,
    },

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn resource(stage: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::ResourceLimit {
            stage: stage.into(),
            detail: detail.into(),
        }
    }

    /// True for failures caused by configured limits rather than bad input.
    pub fn is_resource_failure(&self) -> bool {
        matches!(
            self,
            Error::ResourceLimit { .. } | Error::NonTermination { .. }
        )
    }

    /// Prefixes the stage of a resource failure with the enclosing computation.
    pub fn in_stage(self, outer: &str) -> Self {
        match self {
            Error::ResourceLimit { stage, detail } => Error::ResourceLimit {
                stage: format!("{outer}/{stage}"),
                detail,
            },
            other => other,
        }
    }
}
