use std::collections::BTreeMap;
use std::fmt;

use crate::arith::field::{Field, Rational};
use crate::arith::ratfunc::RationalFunction;

use super::word::{Letter, WeightedGrading, Word};

/// Finite linear combination of words; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreePolynomial<C> {
    terms: BTreeMap<Word, C>,
}

impl<C: Field> Default for FreePolynomial<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Field> FreePolynomial<C> {
    pub fn zero() -> Self {
        FreePolynomial { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::word(Word::one())
    }

    pub fn word(w: Word) -> Self {
        Self::term(C::one(), w)
    }

    pub fn letter(l: Letter) -> Self {
        Self::word(Word::letter(l))
    }

    pub fn term(c: C, w: Word) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        FreePolynomial { terms }
    }

    pub fn from_terms(items: impl IntoIterator<Item = (Word, C)>) -> Self {
        let mut p = Self::zero();
        for (w, c) in items {
            p.add_term(w, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> C {
        self.terms.get(w).cloned().unwrap_or_else(C::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Largest word under shortlex.
    pub fn max_word(&self) -> Option<&Word> {
        self.terms.keys().next_back()
    }

    pub fn weighted_degree(&self, g: &WeightedGrading) -> Option<u32> {
        self.terms.keys().map(|w| w.weighted_degree(g)).max()
    }

    pub fn add_term(&mut self, w: Word, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(existing) => {
                *existing = existing.clone() + c;
                if existing.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-C::one()))
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        FreePolynomial { terms: self.terms.iter().map(|(w, a)| (w.clone(), a.clone() * c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.concat(b), ca.clone() * cb);
            }
        }
        out
    }

    pub fn map<D: Field>(&self, f: impl Fn(&C) -> D) -> FreePolynomial<D> {
        FreePolynomial::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), f(c))))
    }
}

impl FreePolynomial<Rational> {
    pub fn to_rational_function(&self) -> FreePolynomial<RationalFunction> {
        self.map(|c| RationalFunction::constant(c.clone()))
    }
}

/// `x^3*y` style rendering of a word, as accepted by the relation parser.
pub fn word_expr(w: &Word) -> String {
    if w.is_empty() {
        return "1".into();
    }
    let mut parts = Vec::new();
    let letters = w.letters();
    let mut i = 0;
    while i < letters.len() {
        let mut j = i;
        while j < letters.len() && letters[j] == letters[i] {
            j += 1;
        }
        let run = j - i;
        let sym = letters[i].symbol();
        parts.push(if run == 1 { sym.to_string() } else { format!("{sym}^{run}") });
        i = j;
    }
    parts.join("*")
}

fn is_atomic(s: &str) -> bool {
    !s[1..].contains(" + ") && !s[1..].contains(" - ")
}

impl<C: Field + fmt::Display> fmt::Display for FreePolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Largest word first.
        for (idx, (w, c)) in self.terms.iter().rev().enumerate() {
            let mut s = c.to_string();
            let negative = s.starts_with('-') && is_atomic(&s);
            if negative {
                s.remove(0);
            }
            let body = match (s.as_str(), w.is_empty()) {
                (_, true) if is_atomic(&s) => s.clone(),
                (_, true) => format!("({s})"),
                ("1", false) => word_expr(w),
                (_, false) if is_atomic(&s) => format!("{s}*{}", word_expr(w)),
                (_, false) => format!("({s})*{}", word_expr(w)),
            };
            match (idx, negative) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::{int, rat};
    use num_traits::One;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn multiplication_concatenates() {
        let x = FreePolynomial::<Rational>::letter(Letter::X);
        let y = FreePolynomial::<Rational>::letter(Letter::Y);
        let p = x.add(&y);
        let sq = p.mul(&p);
        assert_eq!(sq.num_terms(), 4);
        assert_eq!(sq.coeff(&w("xy")), int(1));
        assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn display() {
        let p = FreePolynomial::from_terms([(w("xy"), int(1)), (w("yx"), int(1))]);
        assert_eq!(p.to_string(), "y*x + x*y");
        let q = FreePolynomial::from_terms([(w("xxxy"), rat(-1, 2)), (w("1"), int(3))]);
        assert_eq!(q.to_string(), "-1/2*x^3*y + 3");
        let r = FreePolynomial::term(RationalFunction::t() + RationalFunction::one(), w("y"));
        assert_eq!(r.to_string(), "(t + 1)*y");
    }
}
