use std::fmt;

/// Errors produced by the workbench.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid angular momentum pair j={j}, m={m}: {reason}")]
    InvalidAngularMomentum { j: String, m: String, reason: &'static str },

    #[error("square root of negative rational {0}")]
    NegativeSqrt(String),

    #[error("radicand does not fit in 64 bits after squarefree reduction")]
    RadicandOverflow,

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid double-tensor label {label}: {reason}")]
    InvalidLabel { label: String, reason: String },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    /// A vector that was required to lie in a span does not.
    #[error("not in span; residual {residual}")]
    NotInSpan { residual: String },

    #[error("basis is not closed under commutation: [{left}, {right}] leaves residual {residual}")]
    NotClosed {
        left: String,
        right: String,
        residual: String,
    },

    #[error("basis elements are linearly dependent")]
    LinearlyDependent,

    #[error("adjoint action is not semisimple: {0}")]
    NonSemisimple(String),

    #[error("eigenvalue outside the radical field: {0}")]
    EigenvalueOutsideField(String),

    #[error("cartan subalgebra construction failed: {0}")]
    Cartan(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("configuration error: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn parse(what: impl fmt::Display) -> Self {
        Error::Parse(what.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
