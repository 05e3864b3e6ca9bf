use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::field::{format_rational, is_negative, Field, Rational};
use super::poly::Poly;
use super::ArithError;

/// Order of vanishing at `t = 0`; the zero function has infinite order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => write!(f, "+inf"),
        }
    }
}

/// Element of Q(t) in canonical form: monic denominator, coprime to the
/// numerator. Equality of canonical forms is equality of functions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly<Rational>,
    den: Poly<Rational>,
}

impl RationalFunction {
    pub fn new(num: Poly<Rational>, den: Poly<Rational>) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly<Rational>, den: Poly<Rational>) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        if den.degree() == Some(0) {
            let inv = Rational::one() / &den.coeffs()[0];
            return RationalFunction { num: num.scale(&inv), den: Poly::one() };
        }
        // Common powers of t first: the Laurent case never needs a full gcd.
        let k = num.low_degree().unwrap().min(den.low_degree().unwrap());
        let (mut num, mut den) = if k > 0 { (num.shift_down(k), den.shift_down(k)) } else { (num, den) };
        if !den.is_monomial() && num.degree() != Some(0) {
            let g = num.gcd(&den);
            if g.degree().unwrap_or(0) > 0 {
                num = num.exact_div(&g);
                den = den.exact_div(&g);
            }
        }
        if !den.is_monic() {
            let inv = Rational::one() / den.leading().unwrap();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RationalFunction { num, den }
    }

    pub fn from_poly(p: Poly<Rational>) -> Self {
        RationalFunction { num: p, den: Poly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    /// `c * t^e` for any integer exponent.
    pub fn monomial(c: Rational, e: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        if e >= 0 {
            Self::from_poly(Poly::monomial(c, e as usize))
        } else {
            RationalFunction { num: Poly::constant(c), den: Poly::monomial(Rational::one(), (-e) as usize) }
        }
    }

    pub fn t() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn numerator(&self) -> &Poly<Rational> {
        &self.num
    }

    pub fn denominator(&self) -> &Poly<Rational> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Denominator is a power of t (element of Q[t, 1/t]).
    pub fn is_laurent(&self) -> bool {
        self.den.is_monomial()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if self.den.is_one() && self.num.degree() == Some(0) {
            return Some(self.num.coeffs()[0].clone());
        }
        None
    }

    pub fn valuation_at_zero(&self) -> Valuation {
        match self.num.low_degree() {
            None => Valuation::Infinity,
            Some(vn) => Valuation::Finite(vn as i64 - self.den.low_degree().unwrap() as i64),
        }
    }

    /// True when the function has no pole at `t = 0`, i.e. lies in the local
    /// ring of power-series-like elements.
    pub fn is_regular_at_zero(&self) -> bool {
        self.den.coeff(0) != Rational::zero()
    }

    /// Lowest-order term `(k, a)` of the Laurent expansion at 0: `f = a t^k + ...`.
    pub fn leading_term(&self) -> Option<(i64, Rational)> {
        let vn = self.num.low_degree()?;
        let vd = self.den.low_degree().unwrap();
        Some((vn as i64 - vd as i64, self.num.coeffs()[vn].clone() / &self.den.coeffs()[vd]))
    }

    /// Coefficient of `t^k` in the power-series expansion at 0.
    pub fn taylor_coefficient(&self, k: usize) -> Result<Rational, ArithError> {
        Ok(self.taylor_coefficients(k + 1)?.pop().unwrap())
    }

    /// First `count` power-series coefficients at 0.
    pub fn taylor_coefficients(&self, count: usize) -> Result<Vec<Rational>, ArithError> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(ArithError::PoleAtZero);
        }
        let inv = Rational::one() / &d0;
        let mut out: Vec<Rational> = Vec::with_capacity(count);
        for k in 0..count {
            let mut acc = self.num.coeff(k);
            for j in 1..=k.min(self.den.coeffs().len().saturating_sub(1)) {
                let dj = &self.den.coeffs()[j];
                if !dj.is_zero() {
                    acc -= dj.clone() * &out[k - j];
                }
            }
            out.push(acc * &inv);
        }
        Ok(out)
    }

    pub fn evaluate(&self, s: &Rational) -> Result<Rational, ArithError> {
        let d = self.den.eval(s);
        if d.is_zero() {
            return Err(ArithError::Pole { at: s.clone() });
        }
        Ok(self.num.eval(s) / d)
    }

    /// Value at 0; requires regularity.
    pub fn at_zero(&self) -> Result<Rational, ArithError> {
        self.evaluate(&Rational::zero()).map_err(|_| ArithError::PoleAtZero)
    }

    pub fn inverse(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    /// `(f - f(0)) / t`, the tail of the expansion at 0.
    pub fn tail_over_t(&self) -> Result<Self, ArithError> {
        let z = self.at_zero()?;
        let shifted = self.clone() - Self::constant(z);
        Ok(shifted * Self::monomial(Rational::one(), -1))
    }

    fn add_impl(&self, rhs: &Self, negate: bool) -> Self {
        let rnum = if negate { -&rhs.num } else { rhs.num.clone() };
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return RationalFunction { num: rnum, den: rhs.den.clone() };
        }
        if self.den == rhs.den {
            let num = &self.num + &rnum;
            if self.den.is_one() {
                return RationalFunction { num, den: Poly::one() };
            }
            return Self::normalized(num, self.den.clone());
        }
        if self.den.is_monomial() && rhs.den.is_monomial() {
            let a = self.den.degree().unwrap();
            let b = rhs.den.degree().unwrap();
            let m = a.max(b);
            let num = &self.num.shift_up(m - a) + &rnum.shift_up(m - b);
            return Self::normalized(num, Poly::monomial(Rational::one(), m));
        }
        let g = self.den.gcd(&rhs.den);
        let sd = self.den.exact_div(&g);
        let rd = rhs.den.exact_div(&g);
        let num = &(&self.num * &rd) + &(&rnum * &sd);
        Self::normalized(num, &self.den * &rd)
    }

    fn mul_impl(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunction { num: &self.num * &rhs.num, den: Poly::one() };
        }
        if self.den.is_monomial() && rhs.den.is_monomial() {
            return Self::normalized(&self.num * &rhs.num, &self.den * &rhs.den);
        }
        // Cross-cancel so the final gcd works on smaller inputs.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let (an, bd) = if g1.degree().unwrap_or(0) > 0 {
            (self.num.exact_div(&g1), rhs.den.exact_div(&g1))
        } else {
            (self.num.clone(), rhs.den.clone())
        };
        let (bn, ad) = if g2.degree().unwrap_or(0) > 0 {
            (rhs.num.exact_div(&g2), self.den.exact_div(&g2))
        } else {
            (rhs.num.clone(), self.den.clone())
        };
        let num = &an * &bn;
        let den = &ad * &bd;
        let inv = Rational::one() / den.leading().unwrap();
        RationalFunction { num: num.scale(&inv), den: den.scale(&inv) }
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction { num: Poly::zero(), den: Poly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        RationalFunction { num: Poly::one(), den: Poly::one() }
    }
}

impl Field for RationalFunction {
    fn from_i64(n: i64) -> Self {
        Self::constant(Rational::from_i64(n))
    }
}

impl Neg for RationalFunction {
    type Output = Self;
    fn neg(self) -> Self {
        RationalFunction { num: -self.num, den: self.den }
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<'a> $tr<&'a RationalFunction> for &'a RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: &'a RationalFunction) -> RationalFunction {
                let f: fn(&RationalFunction, &RationalFunction) -> RationalFunction = $body;
                f(self, rhs)
            }
        }
        impl<'a> $tr<&'a RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: &'a RationalFunction) -> RationalFunction {
                (&self).$m(rhs)
            }
        }
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| a.add_impl(b, false));
binop!(Sub, sub, |a, b| a.add_impl(b, true));
binop!(Mul, mul, |a, b| a.mul_impl(b));
binop!(Div, div, |a, b| a.mul_impl(&b.inverse().expect("division by zero rational function")));

/// Renders a Laurent-style polynomial in `var` using the expression grammar,
/// e.g. `-1/2*t^3 + t - 4`.
pub fn format_poly(p: &Poly<Rational>, var: &str) -> String {
    format_terms(p.coeffs().iter().enumerate().map(|(i, c)| (i as i64, c)).rev(), var)
}

pub(crate) fn format_terms<'a>(terms: impl Iterator<Item = (i64, &'a Rational)>, var: &str) -> String {
    let mut out = String::new();
    for (e, c) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = is_negative(c);
        let mag = if neg { -c.clone() } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let power = match e {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{e}"),
        };
        if power.is_empty() {
            out.push_str(&format_rational(&mag));
        } else if mag.is_one() {
            out.push_str(&power);
        } else {
            out.push_str(&format_rational(&mag));
            out.push('*');
            out.push_str(&power);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", format_poly(&self.num, "t"));
        }
        if self.den.is_monomial() {
            let shift = self.den.degree().unwrap() as i64;
            let terms = self.num.coeffs().iter().enumerate().map(|(i, c)| (i as i64 - shift, c)).rev();
            return write!(f, "{}", format_terms(terms, "t"));
        }
        write!(f, "({})/({})", format_poly(&self.num, "t"), format_poly(&self.den, "t"))
    }
}
