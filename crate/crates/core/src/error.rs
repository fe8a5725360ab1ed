use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("no value supplied for variable `{0}`")]
    MissingVariable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("coefficient of t^{exponent} requested but series is only known below t^{precision}")]
    Precision { exponent: i64, precision: i64 },
    #[error("invalid composition: {0}")]
    Composition(String),
    #[error("step budget of {0} exhausted")]
    BudgetExhausted(usize),
    #[error("parametric mode refused: {0}")]
    NonUnitLeading(String),
    #[error("order is not an elimination order for {0}")]
    NotEliminationOrder(String),
    #[error("invalid monomial order: {0}")]
    InvalidOrder(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("not tabulated: {0}")]
    NotTabulated(String),
    #[error("internal: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
