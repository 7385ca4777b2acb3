use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("field is null (lambda_T = {lambda_t:e}); eigenstructure is degenerate")]
    NullField { lambda_t: f64 },

    #[error("field is not null (lambda_T = {lambda_t:e})")]
    NotNull { lambda_t: f64 },

    #[error("operator is identically zero")]
    ZeroField,

    #[error("tensor is not a valid energy-momentum operator: {0}")]
    InvalidTensor(String),

    #[error("relative velocity |w| = {speed} is not below the speed of light")]
    SuperluminalVelocity { speed: f64 },

    #[error("relative velocity is zero; parallel direction undefined")]
    ZeroVelocity,

    #[error("field is singular at point {point:?}")]
    SingularPoint { point: [f64; 3] },

    #[error("loop meets the null locus at parameter t = {parameter} (|psi| = {abs_psi:e})")]
    NullLocusCrossing { parameter: f64, abs_psi: f64 },

    #[error("phase refinement exhausted near parameter t = {parameter}")]
    RefinementExhausted { parameter: f64 },

    #[error("eigenvalue continuation is ambiguous near parameter t = {parameter}")]
    AmbiguousContinuation { parameter: f64 },

    #[error("generator list is empty")]
    EmptyGenerators,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable identifier used in JSON error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NullField { .. } => "NullField",
            Error::NotNull { .. } => "NotNull",
            Error::ZeroField => "ZeroField",
            Error::InvalidTensor(_) => "InvalidTensor",
            Error::SuperluminalVelocity { .. } => "SuperluminalVelocity",
            Error::ZeroVelocity => "ZeroVelocity",
            Error::SingularPoint { .. } => "SingularPoint",
            Error::NullLocusCrossing { .. } => "NullLocusCrossing",
            Error::RefinementExhausted { .. } => "RefinementExhausted",
            Error::AmbiguousContinuation { .. } => "AmbiguousContinuation",
            Error::EmptyGenerators => "EmptyGenerators",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}
