use thiserror::Error;

use crate::exactla::groebner::BudgetExceeded;
use crate::exactla::{FieldError, FieldSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("algebra mismatch: B({0},{1}) vs B({2},{3})")]
    AlgebraMismatch(usize, usize, usize, usize),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("unsupported over {0}: {1}")]
    Unsupported(FieldSpec, String),
    #[error("the zero module is not allowed here")]
    ZeroModule,
    #[error("non-split semisimple quotient: {0}")]
    NonSplitQuotient(String),
    #[error("precondition not met: {0}")]
    Precondition(String),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

pub type Result<T> = std::result::Result<T, Error>;
