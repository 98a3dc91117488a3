use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different coefficient fields")]
    FieldMismatch,
    #[error("divisor polynomial is constant")]
    InvalidDivisor,
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("factorization not supported; unfactored residual {residual}")]
    UnsupportedFactorization { residual: String },
    #[error("coefficient field not supported: needs a root of {minpoly}")]
    UnsupportedCoefficientField { minpoly: String },
    #[error("variable {0} does not occur in either polynomial")]
    InvalidElimination(usize),
    #[error("series precision exhausted (needed {needed}, cap {cap})")]
    PrecisionExhausted { needed: usize, cap: usize },
    #[error("comparison of two identically zero series")]
    DegenerateComparison,
    #[error("Groebner basis computation exceeded its budget of {0} reductions")]
    BudgetExceeded(usize),
    #[error("internal disagreement: {0}")]
    InternalDisagreement(String),
    #[error("blow-up depth exceeded {0}")]
    DepthExceeded(usize),
    #[error("order monotonicity violated: {0}")]
    OrderMonotonicityViolation(String),
    #[error("invalid map germ: {0}")]
    InvalidGerm(String),
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 2,
            Error::UnsupportedCoefficientField { .. } | Error::UnsupportedFactorization { .. } => 3,
            Error::DepthExceeded(_) => 4,
            Error::InternalDisagreement(_) => 5,
            Error::OrderMonotonicityViolation(_) => 6,
            _ => 1,
        }
    }
}
