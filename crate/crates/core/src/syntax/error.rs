use thiserror::Error;

use super::term::Var;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("undeclared constant `{0}`")]
    UndeclaredConstant(String),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("type mismatch: {0}")]
    Mismatch(String),
}

/// Raised when a substitution would capture a free variable.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("substituting for {var:?} would capture under binder {binder:?}")]
pub struct CaptureError {
    pub binder: Var,
    pub var: Var,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at offset {pos}: {msg}")]
pub struct SyntaxError {
    pub pos: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error("{0}")]
    Sequent(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("normalisation exceeded {0} steps")]
pub struct BudgetExceeded(pub usize);
