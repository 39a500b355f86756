use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("work budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("division by zero")]
    DivisionByZero,

    #[error("minimal polynomial is reducible over Q")]
    ReducibleMinPoly,
    #[error("minimal polynomial is not monic")]
    NonMonic,
    #[error("minimal polynomial has non-integral coefficients")]
    NonIntegral,
    #[error("prime {0} divides the index of Z[theta]; not supported")]
    IndexDivisorUnsupported(u64),
    #[error("element is zero")]
    ZeroElement,
    #[error("element is not integral at the prime")]
    NotPIntegral,
    #[error("interval precision exhausted")]
    PrecisionExhausted,

    #[error("syntax error at byte {offset}: {message}")]
    SyntaxError { offset: usize, message: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("polynomial is not homogeneous")]
    NonHomogeneous,
    #[error("expected a binary form in two variables")]
    NonBinary,
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("matrix is not square")]
    NonSquare,
    #[error("no admissible direction found for dehomogenization")]
    DegenerateDirectionExhausted,

    #[error("polynomial is essentially univariate in every tried coordinate system")]
    DegenerateShape,
    #[error("all maximal minors vanish")]
    AllMinorsZero,
    #[error("plane section drops degree in every attempt")]
    DegenerateSection,

    #[error("dimension out of range: {0}")]
    DimensionOutOfRange(String),
    #[error("adelic data has infinite support")]
    InfiniteSupport,

    #[error("parametrization forms share a common factor")]
    CommonFactor,
    #[error("parametrization forms have inconsistent degrees")]
    InconsistentDegrees,
    #[error("parametrization reduction is degenerate at this prime")]
    DegenerateReduction,
    #[error("parametrization does not look birational: {0}")]
    NonBirationalSuspected(String),

    #[error("polynomial is not geometrically integral over K")]
    NotGeometricallyIntegralOverK,
    #[error("I/O error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
