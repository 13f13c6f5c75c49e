use thiserror::Error;

use super::dense::UniPoly;

/// A zero divisor was met while computing modulo `level` of an extension
/// tower. The level's modulus factors as `factors[0] * factors[1]`; both
/// factors are monic, non-constant and coprime. Computation must be replayed
/// once per factor.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitEvent {
    pub level: usize,
    pub factors: [UniPoly; 2],
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero divisor met modulo tower level {}", .0.level)]
    Split(Box<SplitEvent>),
    #[error("resultant undefined: both inputs have degree 0 in {0}")]
    ResultantUndefined(String),
    #[error("modulus is not squarefree")]
    NotSquarefree,
    #[error("modulus must have degree at least 2 (got {0})")]
    ModulusDegree(usize),
    #[error("polynomial is not univariate in {0}")]
    NotUnivariate(String),
    #[error("division is not exact")]
    InexactDivision,
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("chart triple is not coprime")]
    NotCoprime,
    #[error("expansion truncated below the required order")]
    Truncated,
    #[error("unknown variable {0}")]
    UnknownVariable(String),
}

impl AlgebraError {
    pub fn split(level: usize, factors: [UniPoly; 2]) -> Self {
        AlgebraError::Split(Box::new(SplitEvent { level, factors }))
    }

    pub fn as_split(&self) -> Option<&SplitEvent> {
        match self {
            AlgebraError::Split(ev) => Some(ev),
            _ => None,
        }
    }
}

pub type AlgebraResult<T> = Result<T, AlgebraError>;
