use thiserror::Error;

use crate::poly::Var;
use crate::scalar::Scalar;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("unsupported operation: {0}")]
    UnsupportedOperation(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("basis transform is singular")]
    SingularTransform,

    /// The coordinate matrix has no preimage among standard components.
    /// Carries the exact residuals of the violated consistency conditions.
    #[error(
        "coordinate matrix is not realizable by standard components (residuals {})",
        list(residuals)
    )]
    NotRealizable { residuals: Vec<Scalar> },

    #[error("variable {0} is not bound")]
    UnboundVariable(Var),

    #[error("polynomial is not multilinear: {0}")]
    NotMultilinear(String),

    #[error("derivative order {order} exceeds the supported maximum {max}")]
    OrderTooHigh { order: usize, max: usize },

    #[error("evaluation failed: {0}")]
    Evaluation(String),

    #[error("no exact polynomial solution up to order {order}")]
    Truncated { order: usize },

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("semantic error: {0}")]
    Semantic(String),

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

fn list(values: &[Scalar]) -> String {
    let parts: Vec<String> = values.iter().map(crate::scalar::display).collect();
    format!("({})", parts.join(", "))
}
