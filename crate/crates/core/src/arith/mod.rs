//! Exact arithmetic over Q and Q(t).

pub mod field;
pub mod laurent;
pub mod matrix;
pub mod poly;
pub mod ratfunc;
pub mod unipoly;

use thiserror::Error;

pub use field::{int, rat, Field, Rational};
pub use laurent::LaurentPolynomial;
pub use matrix::{Matrix, RowSpace};
pub use poly::Poly;
pub use ratfunc::{RationalFunction, Valuation};
pub use unipoly::{bezout, is_squarefree, poly_gcd, sturm_roots_in_interval, UniPolynomial, Var};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ArithError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("pole at t = 0")]
    PoleAtZero,
    #[error("pole at t = {at}")]
    Pole { at: Rational },
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomials in different variables ({left} and {right})")]
    VariableMismatch { left: &'static str, right: &'static str },
    #[error("both inputs are zero")]
    BothZero,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("interval endpoint {at} is a root")]
    RootAtEndpoint { at: Rational },
    #[error("empty interval")]
    EmptyInterval,
}
