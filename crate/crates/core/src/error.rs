use thiserror::Error;

/// One failed parameter constraint of a family.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Violation {
    pub param: String,
    pub rule: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.param, self.rule)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("requested coefficient {index} beyond truncation order {order}")]
    OrderExceeded { index: usize, order: usize },
    #[error("constant term must be 1")]
    NonUnitConstantTerm,
    #[error("constant term must be 0")]
    NonzeroConstantTerm,
    #[error("lower parameter {0} makes a denominator vanish")]
    InvalidLowerParameter(String),
    #[error("coefficient b_{0} of B vanishes")]
    VanishingB(usize),
    #[error("series is not normalized (a_0 = b_0 = 1 required)")]
    NotNormalized,
    #[error("truncation order too small: need {needed}, have {have}")]
    OrderTooSmall { needed: usize, have: usize },
    #[error("invalid parameters: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidParams(Vec<Violation>),
    #[error("construction routes disagree for {series} at index {index}")]
    ConstructionMismatch { series: char, index: usize },
    #[error("no annihilating recurrence of order <= {0} found")]
    NoAnnihilator(usize),
    #[error("set is not 2-orthogonal up to the available order")]
    NotTwoOrthogonal,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
