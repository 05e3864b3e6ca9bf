//! Truncated two-sided ideals in the free algebra and exact quotient dimensions.
//!
//! Words are ordered by weighted degree, then shortlex. The ideal is approximated
//! by the space `W` spanned by the relations and closed under multiplication by a
//! letter on either side while the weighted degree stays within the bound. Words
//! that lead no element of `W` are the standard words. Two checks turn their count
//! into the exact dimension of the quotient:
//!
//! * every standard word times a letter stays within the bound, so every word of
//!   any degree reduces into the span of standard words (upper bound);
//! * the products of standard words define an associative unital algebra in which
//!   the relations vanish and which `x` and `y` generate (lower bound).

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::field::Rational;
use crate::arith::matrix::Matrix;

use super::poly::FreePolynomial;
use super::word::{Letter, WeightedGrading, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub relations: Vec<FreePolynomial<Rational>>,
}

impl Presentation {
    pub fn new(relations: Vec<FreePolynomial<Rational>>) -> Result<Self, QuotientError> {
        if let Some(i) = relations.iter().position(FreePolynomial::is_zero) {
            return Err(QuotientError::ZeroRelation(i));
        }
        Ok(Presentation { relations })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error("relation {0} is zero")]
    ZeroRelation(usize),
    #[error("degree bound {bound} is below the relation degree {degree}")]
    BoundTooSmall { bound: u32, degree: u32 },
    #[error("word {word} lies above the bound and the quotient is not certified")]
    Unreducible { word: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuotientDimension {
    /// Both certificates hold.
    Exact { dim: usize, basis: Vec<Word> },
    /// The standard words are independent in the quotient but may not span it.
    LowerBoundOnly { count: usize },
    /// Neither certificate holds; `standard_words` counts words up to the bound.
    Inconclusive { standard_words: usize },
}

impl QuotientDimension {
    pub fn exact(&self) -> Option<usize> {
        match self {
            QuotientDimension::Exact { dim, .. } => Some(*dim),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Key {
    deg: u32,
    word: Word,
}

type Sparse = BTreeMap<Key, Rational>;

fn add_scaled(p: &mut Sparse, q: &Sparse, c: &Rational) {
    for (k, v) in q {
        let entry = p.entry(k.clone()).or_insert_with(Rational::zero);
        *entry += v * c;
        if entry.is_zero() {
            p.remove(k);
        }
    }
}

#[derive(Clone, Debug)]
pub struct BoundedQuotient {
    grading: WeightedGrading,
    bound: u32,
    rows: Vec<Sparse>,
    leads: HashMap<Word, usize>,
    standard: Vec<Word>,
    upper: bool,
    table: Option<Vec<Vec<Vec<Rational>>>>,
}

impl BoundedQuotient {
    pub fn compute(pres: &Presentation, grading: WeightedGrading, bound: u32) -> Result<Self, QuotientError> {
        let mut q = BoundedQuotient {
            grading,
            bound,
            rows: Vec::new(),
            leads: HashMap::new(),
            standard: Vec::new(),
            upper: false,
            table: None,
        };
        let mut queue = VecDeque::new();
        for r in &pres.relations {
            let degree = r.weighted_degree(&grading).unwrap_or(0);
            if degree > bound {
                return Err(QuotientError::BoundTooSmall { bound, degree });
            }
            queue.push_back(q.to_sparse(r));
        }
        while let Some(p) = queue.pop_front() {
            let r = q.reduce(p);
            let Some((lead, c)) = r.iter().next_back() else {
                continue;
            };
            let inv = Rational::one() / c;
            let deg = lead.deg;
            let lead = lead.word.clone();
            let row: Sparse = r.iter().map(|(k, v)| (k.clone(), v * &inv)).collect();
            for a in Letter::ALL {
                if deg + grading.weight(a) <= bound {
                    queue.push_back(q.shifted(&row, a, true));
                    queue.push_back(q.shifted(&row, a, false));
                }
            }
            q.leads.insert(lead, q.rows.len());
            q.rows.push(row);
        }
        q.standard = q.collect_standard();
        let max_deg = q.standard.iter().map(|w| q.deg(w)).max().unwrap_or(0);
        q.upper = !q.standard.is_empty() && max_deg + grading.max_weight() <= bound;
        if 2 * max_deg <= bound {
            q.table = q.certified_table(pres);
        }
        Ok(q)
    }

    fn deg(&self, w: &Word) -> u32 {
        w.weighted_degree(&self.grading)
    }

    fn key(&self, w: Word) -> Key {
        Key { deg: self.deg(&w), word: w }
    }

    fn to_sparse(&self, p: &FreePolynomial<Rational>) -> Sparse {
        p.terms().map(|(w, c)| (self.key(w.clone()), c.clone())).collect()
    }

    fn shifted(&self, p: &Sparse, a: Letter, left: bool) -> Sparse {
        let w = self.grading.weight(a);
        p.iter()
            .map(|(k, v)| {
                let word = if left { k.word.prepend(a) } else { k.word.append(a) };
                (Key { deg: k.deg + w, word }, v.clone())
            })
            .collect()
    }

    /// Full reduction by the rows in one descending sweep.
    fn reduce(&self, mut p: Sparse) -> Sparse {
        let mut ceiling: Option<Key> = None;
        loop {
            let hit = {
                let range: Box<dyn DoubleEndedIterator<Item = (&Key, &Rational)>> = match &ceiling {
                    Some(c) => Box::new(p.range(..c.clone())),
                    None => Box::new(p.iter()),
                };
                range.rev().find_map(|(k, v)| self.leads.get(&k.word).map(|&i| (k.clone(), v.clone(), i)))
            };
            let Some((k, c, i)) = hit else {
                return p;
            };
            add_scaled(&mut p, &self.rows[i], &-c);
            ceiling = Some(k);
        }
    }

    fn collect_standard(&self) -> Vec<Word> {
        // Non-standard words are closed under extension, so standard words are
        // closed under taking prefixes.
        let mut out = Vec::new();
        let mut stack = vec![Word::one()];
        while let Some(w) = stack.pop() {
            if self.leads.contains_key(&w) {
                continue;
            }
            for a in Letter::ALL {
                if self.deg(&w) + self.grading.weight(a) <= self.bound {
                    stack.push(w.append(a));
                }
            }
            out.push(w);
        }
        out.sort_by_key(|w| self.key(w.clone()));
        out
    }

    fn nf_sparse(&self, w: &Word) -> Result<Sparse, QuotientError> {
        if self.deg(w) <= self.bound {
            return Ok(self.reduce(Sparse::from([(self.key(w.clone()), Rational::one())])));
        }
        if !self.upper {
            return Err(QuotientError::Unreducible { word: w.to_string() });
        }
        let (head, a) = w.split_last().expect("nonempty word above the bound");
        let mut out = Sparse::new();
        for (k, c) in self.nf_sparse(&head)? {
            let next = self.reduce(Sparse::from([(self.key(k.word.append(a)), Rational::one())]));
            add_scaled(&mut out, &next, &c);
        }
        Ok(out)
    }

    fn coords(&self, s: &Sparse, index: &HashMap<&Word, usize>) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.standard.len()];
        for (k, c) in s {
            v[index[&k.word]] = c.clone();
        }
        v
    }

    fn certified_table(&self, pres: &Presentation) -> Option<Vec<Vec<Vec<Rational>>>> {
        let n = self.standard.len();
        if n == 0 || self.standard[0] != Word::one() {
            return None;
        }
        let index: HashMap<&Word, usize> = self.standard.iter().enumerate().map(|(i, w)| (w, i)).collect();
        // c[k][m] = coordinates of b_k b_m.
        let mut c = vec![vec![Vec::new(); n]; n];
        for k in 0..n {
            for m in 0..n {
                let s = self.nf_sparse(&self.standard[k].concat(&self.standard[m])).ok()?;
                c[k][m] = self.coords(&s, &index);
            }
        }
        let mul = |a: &[Rational], b: &[Rational]| -> Vec<Rational> {
            let mut out = vec![Rational::zero(); n];
            for (k, ak) in a.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                for (m, bm) in b.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                    let f = ak * bm;
                    for (o, ci) in out.iter_mut().zip(&c[k][m]) {
                        if !ci.is_zero() {
                            *o += &f * ci;
                        }
                    }
                }
            }
            out
        };
        let unit = |i: usize| {
            let mut v = vec![Rational::zero(); n];
            v[i] = Rational::one();
            v
        };
        for a in 0..n {
            for b in 0..n {
                for d in 0..n {
                    if mul(&c[a][b], &unit(d)) != mul(&unit(a), &c[b][d]) {
                        return None;
                    }
                }
            }
        }
        let gen = |l: Letter| self.nf_sparse(&Word::letter(l)).ok().map(|s| self.coords(&s, &index));
        let (gx, gy) = (gen(Letter::X)?, gen(Letter::Y)?);
        let eval_word = |w: &Word| {
            w.letters().iter().fold(unit(0), |acc, &l| mul(&acc, if l == Letter::X { &gx } else { &gy }))
        };
        for r in &pres.relations {
            let mut total = vec![Rational::zero(); n];
            for (w, coef) in r.terms() {
                for (t, v) in total.iter_mut().zip(eval_word(w)) {
                    *t += coef * v;
                }
            }
            if total.iter().any(|v| !v.is_zero()) {
                return None;
            }
        }
        // Generation: close span{1} under right multiplication by x and y.
        let mut span: Vec<Vec<Rational>> = vec![unit(0)];
        let mut frontier = vec![unit(0)];
        while let Some(v) = frontier.pop() {
            for g in [&gx, &gy] {
                let p = mul(&v, g);
                let mut trial = span.clone();
                trial.push(p.clone());
                if Matrix::from_rows(trial.clone()).rank() > span.len() {
                    span = trial;
                    frontier.push(p);
                }
            }
        }
        (span.len() == n).then_some(c)
    }

    pub fn dimension(&self) -> QuotientDimension {
        match (self.upper, self.table.is_some()) {
            (true, true) => QuotientDimension::Exact { dim: self.standard.len(), basis: self.standard.clone() },
            (_, true) => QuotientDimension::LowerBoundOnly { count: self.standard.len() },
            _ => QuotientDimension::Inconclusive { standard_words: self.standard.len() },
        }
    }

    /// Standard words sorted by weighted degree, then shortlex.
    pub fn standard_words(&self) -> &[Word] {
        &self.standard
    }

    pub fn normal_form(&self, p: &FreePolynomial<Rational>) -> Result<FreePolynomial<Rational>, QuotientError> {
        let mut out = Sparse::new();
        for (w, c) in p.terms() {
            add_scaled(&mut out, &self.nf_sparse(w)?, c);
        }
        Ok(FreePolynomial::from_terms(out.into_iter().map(|(k, c)| (k.word, c))))
    }

    /// `c[i][k][m]`: coefficient of the i-th standard word in `b_k b_m`, when certified.
    pub fn structure_constants(&self) -> Option<Vec<Vec<Vec<Rational>>>> {
        let t = self.table.as_ref()?;
        let n = self.standard.len();
        Some((0..n).map(|i| (0..n).map(|k| (0..n).map(|m| t[k][m][i].clone()).collect()).collect()).collect())
    }
}

pub fn quotient_dimension(
    pres: &Presentation,
    grading: WeightedGrading,
    bound: u32,
) -> Result<QuotientDimension, QuotientError> {
    Ok(BoundedQuotient::compute(pres, grading, bound)?.dimension())
}

pub fn normal_form(
    p: &FreePolynomial<Rational>,
    pres: &Presentation,
    grading: WeightedGrading,
    bound: u32,
) -> Result<FreePolynomial<Rational>, QuotientError> {
    BoundedQuotient::compute(pres, grading, bound)?.normal_form(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::int;

    fn poly(terms: &[(i64, &str)]) -> FreePolynomial<Rational> {
        FreePolynomial::from_terms(terms.iter().map(|&(c, w)| (Word::parse(w).unwrap(), int(c))))
    }

    fn a8() -> Presentation {
        Presentation::new(vec![
            poly(&[(1, "xy"), (1, "yx")]),
            poly(&[(1, "yy"), (1, "xxx"), (1, "xx")]),
            poly(&[(1, "xxxy")]),
            poly(&[(1, "xxxxx")]),
        ])
        .unwrap()
    }

    #[test]
    fn a8_dimension_eight() {
        let g = WeightedGrading::new(1, 10).unwrap();
        let q = BoundedQuotient::compute(&a8(), g, 40).unwrap();
        let QuotientDimension::Exact { dim, basis } = q.dimension() else {
            panic!("expected exact dimension, got {:?}", q.dimension());
        };
        assert_eq!(dim, 8);
        let names: Vec<String> = basis.iter().map(ToString::to_string).collect();
        assert_eq!(names, ["1", "x", "xx", "xxx", "xxxx", "y", "xy", "xxy"]);
        assert_eq!(q.normal_form(&poly(&[(1, "yx")])).unwrap(), poly(&[(-1, "xy")]));
        assert_eq!(q.normal_form(&poly(&[(1, "yy")])).unwrap(), poly(&[(-1, "xxx"), (-1, "xx")]));
        assert!(q.normal_form(&FreePolynomial::zero()).unwrap().is_zero());
    }

    #[test]
    fn generators_killed() {
        let pres = Presentation::new(vec![poly(&[(1, "x")]), poly(&[(1, "y")])]).unwrap();
        for g in [WeightedGrading::standard(), WeightedGrading::new(2, 3).unwrap()] {
            assert_eq!(quotient_dimension(&pres, g, 5).unwrap().exact(), Some(1));
        }
    }

    #[test]
    fn commutative_exterior_like() {
        let pres = Presentation::new(vec![poly(&[(1, "xy"), (-1, "yx")]), poly(&[(1, "xx")]), poly(&[(1, "yy")])]).unwrap();
        let d = quotient_dimension(&pres, WeightedGrading::standard(), 6).unwrap();
        let QuotientDimension::Exact { dim, basis } = d else { panic!("{d:?}") };
        assert_eq!(dim, 4);
        let names: Vec<String> = basis.iter().map(ToString::to_string).collect();
        assert_eq!(names, ["1", "x", "y", "xy"]);
    }

    #[test]
    fn errors_and_inconclusive() {
        let pres = Presentation::new(vec![poly(&[(1, "xxxxx")])]).unwrap();
        assert!(matches!(
            quotient_dimension(&pres, WeightedGrading::standard(), 3),
            Err(QuotientError::BoundTooSmall { .. })
        ));
        let empty = Presentation::new(vec![]).unwrap();
        assert!(matches!(
            quotient_dimension(&empty, WeightedGrading::standard(), 4).unwrap(),
            QuotientDimension::Inconclusive { .. }
        ));
        assert!(Presentation::new(vec![FreePolynomial::zero()]).is_err());
    }
}
