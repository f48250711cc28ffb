use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("undeclared variable `{0}`")]
    UnknownVariable(String),
    #[error("negative exponent on non-invertible variable `{0}`")]
    NegativeExponent(String),
    #[error("ring context mismatch: {left} vs {right}")]
    ContextMismatch { left: String, right: String },
    #[error("leading form of the zero polynomial")]
    ZeroInput,
    #[error("cannot substitute a multi-term value for `{0}`, which occurs with a negative exponent")]
    NonMonomialInverse(String),
    #[error("expected {expected} substitution images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("polynomial is not even in `{0}`")]
    NotEven(String),
    #[error("coefficient {0} is not rational")]
    NonRationalCoefficient(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Degree(#[from] DegreeError),
    #[error("{0} is not in the ideal")]
    NotMember(String),
    #[error("no decomposition found with cofactor support up to total degree {0}")]
    SearchBound(u32),
    #[error("leading form {0} is not weighted homogeneous")]
    NotHomogeneous(String),
    #[error("lift verification failed: {0}")]
    Verification(String),
    #[error("zero polynomial has no optimal lift")]
    ZeroInput,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DegreeError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("max-degree needs at least one component")]
    EmptyMax,
    #[error("invalid degree-function spec: {0}")]
    InvalidSpec(String),
    #[error("operation not supported for degree kind `{0}`")]
    Unsupported(&'static str),
    #[error("extension disagreement on {poly}: delta1 = {d1}, delta2 = {d2}")]
    ExtensionMismatch { poly: String, d1: String, d2: String },
}
