//! Crate-wide error type.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("empty constant vector")]
    EmptyVector,
    #[error("invalid atom name: {0:?}")]
    BadAtomName(String),
    #[error("gcd of two zero polynomials")]
    BothZero,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("zero divisor polynomial")]
    ZeroDivisor,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("constant polynomial where a nonconstant was required")]
    ConstantInput,
    #[error("unknown symbol: {0}")]
    UnknownSymbol(String),
    #[error("derivation table is not well-founded at symbol {0}")]
    IllFoundedTower(String),
    #[error("syntax error at byte {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
    #[error("not an iterated-logarithm shape: {0}")]
    NotIterLog(String),
    #[error("expression contains a non-iterated-log symbol: {0}")]
    NotIterLogExpression(String),
    #[error("empty input set")]
    EmptyInput,
    #[error("empty presentation")]
    EmptyPresentation,
    #[error("polynomials are not coprime")]
    NotCoprime,
    #[error("scale factor must be nonzero")]
    ZeroScale,
    #[error("a kernel coordinate survives; the polynomial is not fixed by the form solutions")]
    NotFixed,
    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
