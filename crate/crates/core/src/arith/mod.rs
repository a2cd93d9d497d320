//! Exact rational and cyclotomic-field arithmetic.

mod cyclotomic;
mod rational;

pub use cyclotomic::{cyclotomic_polynomial, ArithOp, CycField, CycNum};
pub use rational::Rational;


use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("cyclotomic field mismatch: Q(zeta{left}) vs Q(zeta{right})")]
    FieldMismatch { left: usize, right: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("coefficient vector has length {found}, expected {expected}")]
    BadLength { expected: usize, found: usize },
}
