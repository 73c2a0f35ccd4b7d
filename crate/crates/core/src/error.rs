use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("malformed function: {0}")]
    MalformedFunction(String),

    #[error("level {0} is outside the function domain")]
    OutOfDomain(f64),

    #[error("integrand has a jump at {0}; Riemann-Stieltjes integrands must be continuous")]
    DiscontinuousIntegrand(f64),

    #[error("integrand and integrator both jump at {0}")]
    CommonDiscontinuity(f64),

    #[error("not a fuzzy number: {0}")]
    NotAFuzzyNumber(String),

    #[error("bad shape: {0}")]
    BadShape(String),

    #[error("level family is not nested: {0}")]
    NotNested(String),

    #[error("sequence tails differ, the series diverges")]
    DivergentTail,

    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("function is not monotone: {0}")]
    NotMonotone(String),

    #[error("element is not in the space: {0}")]
    NotInSpace(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid functional spec: {0}")]
    InvalidSpec(String),

    #[error("sampled value {lower} exceeds analytic bound {upper}")]
    BoundViolated { lower: f64, upper: f64 },

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("unknown claim `{0}`")]
    UnknownClaim(String),
}

pub type Result<T> = std::result::Result<T, Error>;
