use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::Rational;
use super::poly::Poly;
use super::ratfunc::format_poly;
use super::ArithError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    T,
    U,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::T => "t",
            Var::U => "u",
        }
    }
}

/// Polynomial over Q tagged with the variable it lives in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPolynomial {
    pub var: Var,
    pub poly: Poly<Rational>,
}

impl UniPolynomial {
    pub fn new(var: Var, poly: Poly<Rational>) -> Self {
        UniPolynomial { var, poly }
    }

    pub fn from_coeffs(var: Var, coeffs: Vec<Rational>) -> Self {
        UniPolynomial { var, poly: Poly::new(coeffs) }
    }

    pub fn derivative(&self) -> Self {
        UniPolynomial { var: self.var, poly: self.poly.derivative() }
    }

    fn same_var(&self, other: &Self) -> Result<(), ArithError> {
        if self.var != other.var {
            return Err(ArithError::VariableMismatch { left: self.var.name(), right: other.var.name() });
        }
        Ok(())
    }
}

impl fmt::Display for UniPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_poly(&self.poly, self.var.name()))
    }
}

/// Monic gcd; `gcd(a, 0) = monic(a)`.
pub fn poly_gcd(a: &UniPolynomial, b: &UniPolynomial) -> Result<UniPolynomial, ArithError> {
    a.same_var(b)?;
    Ok(UniPolynomial { var: a.var, poly: a.poly.gcd(&b.poly) })
}

/// `(p, q, r)` with `p*a + q*b = r = gcd(a, b)`.
pub fn bezout(a: &UniPolynomial, b: &UniPolynomial) -> Result<(UniPolynomial, UniPolynomial, UniPolynomial), ArithError> {
    a.same_var(b)?;
    if a.poly.is_zero() && b.poly.is_zero() {
        return Err(ArithError::BothZero);
    }
    let (p, q, r) = a.poly.ext_gcd(&b.poly);
    let wrap = |poly| UniPolynomial { var: a.var, poly };
    Ok((wrap(p), wrap(q), wrap(r)))
}

pub fn is_squarefree(g: &UniPolynomial) -> Result<bool, ArithError> {
    if g.poly.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    Ok(g.poly.is_squarefree())
}

/// Positive integer multiple of `p` with coprime integer coefficients.
fn primitive_part(p: &Poly<Rational>) -> Vec<BigInt> {
    let lcm = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &content).collect()
}

fn from_ints(c: Vec<BigInt>) -> Poly<Rational> {
    Poly::new(c.into_iter().map(Rational::from_integer).collect())
}

/// Sturm chain with each member replaced by its (sign-preserving) primitive part.
pub fn sturm_chain(p: &Poly<Rational>) -> Vec<Poly<Rational>> {
    let mut chain = vec![from_ints(primitive_part(p))];
    let d = p.derivative();
    if d.is_zero() {
        return chain;
    }
    chain.push(from_ints(primitive_part(&d)));
    loop {
        let n = chain.len();
        let r = chain[n - 2].div_rem(&chain[n - 1]).1;
        if r.is_zero() {
            break;
        }
        chain.push(from_ints(primitive_part(&-r)));
    }
    chain
}

fn sign_variations(chain: &[Poly<Rational>], x: &Rational) -> usize {
    let mut count = 0;
    let mut last: Option<bool> = None;
    for p in chain {
        let v = p.eval(x);
        if v.is_zero() {
            continue;
        }
        let pos = v.is_positive();
        if last.is_some_and(|l| l != pos) {
            count += 1;
        }
        last = Some(pos);
    }
    count
}

/// Number of distinct real roots of `p` in the open interval `(lo, hi)`.
pub fn count_real_roots(p: &Poly<Rational>, lo: &Rational, hi: &Rational) -> Result<usize, ArithError> {
    if p.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    if lo >= hi {
        return Err(ArithError::EmptyInterval);
    }
    for end in [lo, hi] {
        if p.eval(end).is_zero() {
            return Err(ArithError::RootAtEndpoint { at: end.clone() });
        }
    }
    let chain = sturm_chain(p);
    Ok(sign_variations(&chain, lo) - sign_variations(&chain, hi))
}

pub fn sturm_roots_in_interval(p: &UniPolynomial, lo: &Rational, hi: &Rational) -> Result<usize, ArithError> {
    count_real_roots(&p.poly, lo, hi)
}

/// Number of distinct roots in `(0, hi]`, after removing the factor `t^k`.
pub fn roots_in_half_open(p: &Poly<Rational>, hi: &Rational) -> Result<usize, ArithError> {
    let stripped = p.shift_down(p.low_degree().ok_or(ArithError::ZeroPolynomial)?);
    let at_end = usize::from(stripped.eval(hi).is_zero());
    if at_end == 1 {
        // Divide out the root at `hi` repeatedly; count it once.
        let lin = Poly::new(vec![-hi.clone(), Rational::one()]);
        let mut q = stripped;
        while q.eval(hi).is_zero() {
            q = q.div_rem(&lin).0;
        }
        return Ok(1 + count_real_roots(&q, &Rational::zero(), hi)?);
    }
    count_real_roots(&stripped, &Rational::zero(), hi)
}
