use std::fmt;

use num_traits::{One, Zero};

use super::field::Rational;
use super::poly::Poly;
use super::ratfunc::{format_terms, RationalFunction};

/// Finite sum `Σ c_j t^(low + j)` with possibly negative exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    low: i64,
    coeffs: Vec<Rational>,
}

impl LaurentPolynomial {
    pub fn new(low: i64, coeffs: Vec<Rational>) -> Self {
        let Some(first) = coeffs.iter().position(|c| !c.is_zero()) else {
            return Self::zero();
        };
        let last = coeffs.iter().rposition(|c| !c.is_zero()).unwrap();
        LaurentPolynomial { low: low + first as i64, coeffs: coeffs[first..=last].to_vec() }
    }

    pub fn zero() -> Self {
        LaurentPolynomial { low: 0, coeffs: Vec::new() }
    }

    pub fn monomial(c: Rational, e: i64) -> Self {
        Self::new(e, vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent; `None` for zero.
    pub fn low_exponent(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn high_exponent(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, e: i64) -> Rational {
        let idx = e - self.low;
        if idx < 0 {
            return Rational::zero();
        }
        self.coeffs.get(idx as usize).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms as `(exponent, coefficient)`, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(i, c)| (self.low + i as i64, c))
    }

    pub fn to_rational_function(&self) -> RationalFunction {
        if self.is_zero() {
            return RationalFunction::zero();
        }
        let num = Poly::new(self.coeffs.clone());
        let shifted = RationalFunction::from_poly(num);
        shifted * RationalFunction::monomial(Rational::one(), self.low)
    }

    /// Succeeds when `f` has only a power of t in its denominator.
    pub fn from_rational_function(f: &RationalFunction) -> Option<Self> {
        if !f.is_laurent() {
            return None;
        }
        let shift = f.denominator().degree().unwrap() as i64;
        let lead = f.denominator().leading().unwrap().clone();
        let coeffs = f.numerator().coeffs().iter().map(|c| c.clone() / &lead).collect();
        Some(Self::new(-shift, coeffs))
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<_> = self.terms().collect();
        write!(f, "{}", format_terms(terms.into_iter().rev(), "t"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::{int, rat};

    #[test]
    fn round_trip_through_rational_function() {
        let l = LaurentPolynomial::new(-2, vec![int(0), rat(1, 2), int(0), int(3), int(0)]);
        assert_eq!(l.low_exponent(), Some(-1));
        assert_eq!(l.high_exponent(), Some(1));
        let f = l.to_rational_function();
        assert_eq!(LaurentPolynomial::from_rational_function(&f), Some(l.clone()));
        assert_eq!(l.to_string(), "3*t + 1/2*t^-1");
    }

    #[test]
    fn non_laurent_rejected() {
        let f = RationalFunction::new(Poly::one(), Poly::new(vec![int(1), int(1)])).unwrap();
        assert_eq!(LaurentPolynomial::from_rational_function(&f), None);
        assert_eq!(LaurentPolynomial::new(4, vec![int(0)]), LaurentPolynomial::zero());
    }
}
