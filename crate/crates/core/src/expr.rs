//! Expression grammar for problem files and relation lists.
//!
//! ```text
//! elem     := term (("+" | "-") term)*
//! term     := [sign] rational ["*" factor ("*" factor)*] | [sign] factor ("*" factor)*
//! factor   := var ["^" int] | "(" elem ")"
//! rational := digits ["/" digits]
//! ```
//!
//! Variables are single letters among `t`, `u`, `x`, `y`; which ones are allowed
//! depends on where the expression is evaluated. Only `t` takes negative exponents.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::field::{format_rational, Rational};
use crate::arith::poly::Poly;
use crate::arith::ratfunc::RationalFunction;
use crate::free::{FreePolynomial, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("variable {0} is not allowed here")]
    Variable(char),
    #[error("negative exponent on {0}")]
    NegativeExponent(char),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    Plus,
    Minus,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Expr {
    /// The first operator is always `Plus`.
    pub terms: Vec<(Op, Term)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub negative: bool,
    pub coeff: Option<Rational>,
    pub factors: Vec<Factor>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Factor {
    Var { name: char, exp: Option<i64> },
    Group(Box<Expr>),
}

pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0 };
    p.skip_ws();
    let e = p.elem()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error(format!("unexpected '{}'", p.chars[p.pos])));
    }
    Ok(e)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, message: String) -> ParseError {
        let before = &self.chars[..self.pos.min(self.chars.len())];
        let line = 1 + before.iter().filter(|&&c| c == '\n').count();
        let column = 1 + before.iter().rev().take_while(|&&c| c != '\n').count();
        ParseError { line, column, message }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn elem(&mut self) -> Result<Expr, ParseError> {
        let mut terms = vec![(Op::Plus, self.term()?)];
        loop {
            let op = match self.peek() {
                Some('+') => Op::Plus,
                Some('-') => Op::Minus,
                _ => return Ok(Expr { terms }),
            };
            self.pos += 1;
            terms.push((op, self.term()?));
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let negative = self.eat('-');
        let coeff = match self.peek() {
            Some(c) if c.is_ascii_digit() => Some(self.rational()?),
            _ => None,
        };
        let mut factors = Vec::new();
        if coeff.is_none() {
            factors.push(self.factor()?);
        }
        while self.eat('*') {
            factors.push(self.factor()?);
        }
        Ok(Term { negative, coeff, factors })
    }

    fn digits(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits".into()));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("ascii digits"))
    }

    fn rational(&mut self) -> Result<Rational, ParseError> {
        let n = self.digits()?;
        if self.eat('/') {
            let d = self.digits()?;
            if d.is_zero() {
                return Err(self.error("zero denominator".into()));
            }
            return Ok(Rational::new(n, d));
        }
        Ok(Rational::from_integer(n))
    }

    fn factor(&mut self) -> Result<Factor, ParseError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.elem()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'".into()));
                }
                Ok(Factor::Group(Box::new(e)))
            }
            Some(c @ ('t' | 'u' | 'x' | 'y')) => {
                self.pos += 1;
                let exp = if self.eat('^') {
                    let neg = self.eat('-');
                    if !matches!(self.peek(), Some(d) if d.is_ascii_digit()) {
                        return Err(self.error("expected exponent".into()));
                    }
                    let v: i64 = self.digits()?.try_into().map_err(|_| self.error("exponent too large".into()))?;
                    Some(if neg { -v } else { v })
                } else {
                    None
                };
                Ok(Factor::Var { name: c, exp })
            }
            Some(c) => Err(self.error(format!("unexpected '{c}'"))),
            None => Err(self.error("unexpected end of input".into())),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, (op, term)) in self.terms.iter().enumerate() {
            match (idx, op) {
                (0, _) => {}
                (_, Op::Plus) => write!(f, " + ")?,
                (_, Op::Minus) => write!(f, " - ")?,
            }
            write!(f, "{term}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            write!(f, "-")?;
        }
        let mut parts: Vec<String> = Vec::new();
        if let Some(c) = &self.coeff {
            parts.push(format_rational(c));
        }
        parts.extend(self.factors.iter().map(ToString::to_string));
        write!(f, "{}", parts.join("*"))
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Var { name, exp: None } => write!(f, "{name}"),
            Factor::Var { name, exp: Some(e) } => write!(f, "{name}^{e}"),
            Factor::Group(e) => write!(f, "({e})"),
        }
    }
}

/// Minimal ring interface for evaluating expressions.
trait Ring: Clone {
    fn from_rational(q: Rational) -> Self;
    fn var(name: char, exp: i64) -> Result<Self, EvalError>;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

fn eval<R: Ring>(e: &Expr) -> Result<R, EvalError> {
    let mut acc = R::from_rational(Rational::zero());
    for (op, term) in &e.terms {
        let mut v = R::from_rational(term.coeff.clone().unwrap_or_else(Rational::one));
        for factor in &term.factors {
            let fv = match factor {
                Factor::Var { name, exp } => R::var(*name, exp.unwrap_or(1))?,
                Factor::Group(inner) => eval(inner)?,
            };
            v = v.mul(&fv);
        }
        if term.negative != (*op == Op::Minus) {
            v = v.neg();
        }
        acc = acc.add(&v);
    }
    Ok(acc)
}

impl Ring for RationalFunction {
    fn from_rational(q: Rational) -> Self {
        RationalFunction::constant(q)
    }
    fn var(name: char, exp: i64) -> Result<Self, EvalError> {
        match name {
            't' => Ok(RationalFunction::monomial(Rational::one(), exp)),
            _ => Err(EvalError::Variable(name)),
        }
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Ring for Poly<RationalFunction> {
    fn from_rational(q: Rational) -> Self {
        Poly::constant(RationalFunction::constant(q))
    }
    fn var(name: char, exp: i64) -> Result<Self, EvalError> {
        match name {
            't' => Ok(Poly::constant(RationalFunction::monomial(Rational::one(), exp))),
            'u' if exp < 0 => Err(EvalError::NegativeExponent('u')),
            'u' => Ok(Poly::monomial(RationalFunction::one(), exp as usize)),
            _ => Err(EvalError::Variable(name)),
        }
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Ring for FreePolynomial<Rational> {
    fn from_rational(q: Rational) -> Self {
        FreePolynomial::term(q, Word::one())
    }
    fn var(name: char, exp: i64) -> Result<Self, EvalError> {
        let l = match name {
            'x' => Letter::X,
            'y' => Letter::Y,
            _ => return Err(EvalError::Variable(name)),
        };
        if exp < 0 {
            return Err(EvalError::NegativeExponent(name));
        }
        Ok(FreePolynomial::word(Word::new(vec![l; exp as usize])))
    }
    fn add(&self, other: &Self) -> Self {
        FreePolynomial::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        FreePolynomial::mul(self, other)
    }
    fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }
}

impl Expr {
    /// Element of `Q(t)`; only `t` allowed.
    pub fn to_rational_function(&self) -> Result<RationalFunction, EvalError> {
        eval(self)
    }

    /// Polynomial in `u` over `Q(t)`, not yet reduced.
    pub fn to_u_poly(&self) -> Result<Poly<RationalFunction>, EvalError> {
        eval(self)
    }

    /// Noncommutative polynomial in `x`, `y` with rational coefficients.
    pub fn to_free(&self) -> Result<FreePolynomial<Rational>, EvalError> {
        eval(self)
    }
}

/// Parses a list of relations: one per line or separated by commas; `#` starts a comment.
pub fn parse_relations(text: &str) -> Result<Vec<FreePolynomial<Rational>>, String> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("");
        for piece in body.split(',') {
            if piece.trim().is_empty() {
                continue;
            }
            let e = parse(piece).map_err(|e| format!("line {}: {}", ln + 1, e.message))?;
            out.push(e.to_free().map_err(|e| format!("line {}: {e}", ln + 1))?);
        }
    }
    Ok(out)
}
