use thiserror::Error;

/// Every failure the kernel, the harness and the verifiers can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("origin is not an interior point of the polytope")]
    OriginNotInterior,
    #[error("linear map is singular")]
    SingularMap,
    #[error("intersection is empty or not full-dimensional")]
    EmptyOrDegenerateIntersection,
    #[error("union of the two polytopes is not convex")]
    NonConvexUnion,
    #[error("invalid slab: {0}")]
    InvalidSlab(String),
    #[error("wrong dimension: expected {expected}, got {got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("value kind mismatch: expected {expected}, got {got}")]
    KindMismatch { expected: &'static str, got: &'static str },
    #[error("could not generate an origin-interior polytope within {0} attempts")]
    GeneratorExhausted(usize),
    #[error("unsupported homogeneity exponent {0}")]
    UnsupportedExponent(String),
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
    #[error("fit impossible: {0}")]
    FitImpossible(String),
    #[error("training set does not determine the coefficients")]
    SingularTrainingSet,
    #[error("valuation is not even: {0}")]
    NotEven(String),
    #[error("valuation is not odd: {0}")]
    NotOdd(String),
    #[error("pre-screen failed: handle is not {0}")]
    PreScreenFailed(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable code, used in CLI error documents.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DegenerateInput(_) => "degenerate_input",
            Error::OriginNotInterior => "origin_not_interior",
            Error::SingularMap => "singular_map",
            Error::EmptyOrDegenerateIntersection => "empty_or_degenerate_intersection",
            Error::NonConvexUnion => "non_convex_union",
            Error::InvalidSlab(_) => "invalid_slab",
            Error::WrongDimension { .. } => "wrong_dimension",
            Error::DimensionMismatch(..) => "dimension_mismatch",
            Error::KindMismatch { .. } => "kind_mismatch",
            Error::GeneratorExhausted(_) => "generator_exhausted",
            Error::UnsupportedExponent(_) => "unsupported_exponent",
            Error::InvalidConfiguration(_) => "invalid_configuration",
            Error::FitImpossible(_) => "fit_impossible",
            Error::SingularTrainingSet => "singular_training_set",
            Error::NotEven(_) => "not_even",
            Error::NotOdd(_) => "not_odd",
            Error::PreScreenFailed(_) => "pre_screen_failed",
            Error::Parse(_) => "parse_error",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
