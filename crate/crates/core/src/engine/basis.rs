//! Image basis by valuation-pivoted elimination over the local ring at `t = 0`.
//!
//! The image module is `M = sum R f(q_i)` with `R` the rational functions regular at
//! 0. A family is reduced when the leading directions `e_i` (coefficient vectors of
//! the lowest power `t^{k_i}`) are linearly independent over Q; then the valuation
//! of `sum l_i f(q_i)` is `min(val(l_i) + k_i)`, and `M` is free on the family.

use std::cmp::Ordering;

use num_traits::Zero;

use crate::ambient::AmbientElement;
use crate::arith::field::Rational;
use crate::arith::matrix::Matrix;
use crate::arith::ratfunc::RationalFunction;
use crate::free::{FreePolynomial, Letter, Word};

use super::hom::HomomorphismSpec;
use super::EngineError;

type Rf = RationalFunction;

#[derive(Clone, Debug, PartialEq)]
pub struct BasisEntry {
    pub q: FreePolynomial<Rf>,
    pub element: AmbientElement,
    pub image: Vec<Rf>,
    pub direction: Vec<Rational>,
    pub order: i64,
}

fn leading(v: &[Rf]) -> Option<(i64, Vec<Rational>)> {
    let terms: Vec<Option<(i64, Rational)>> = v.iter().map(Rf::leading_term).collect();
    let k = terms.iter().flatten().map(|(e, _)| *e).min()?;
    let e = terms
        .into_iter()
        .map(|t| match t {
            Some((e, a)) if e == k => a,
            _ => Rational::zero(),
        })
        .collect();
    Some((k, e))
}

impl BasisEntry {
    fn new(f: &HomomorphismSpec, q: FreePolynomial<Rf>, element: AmbientElement) -> Option<Self> {
        let image = f.ambient().flatten(&element);
        let (order, direction) = leading(&image)?;
        Some(BasisEntry { q, element, image, direction, order })
    }

    fn refresh(&mut self) -> bool {
        match leading(&self.image) {
            Some((k, e)) => {
                self.order = k;
                self.direction = e;
                true
            }
            None => false,
        }
    }

    /// `self -= c * other`.
    fn axpy(&mut self, c: &Rf, other: &BasisEntry) {
        self.q = self.q.sub(&other.q.scale(c));
        self.element = self.element.sub(&other.element.scale(c));
        for (a, b) in self.image.iter_mut().zip(&other.image) {
            if !b.is_zero() {
                *a = a.clone() - c.clone() * b;
            }
        }
    }
}

/// Solves `v = sum l_i b_i` for an independent family `b_i`.
#[derive(Clone, Debug)]
struct SpanSolver {
    pivots: Vec<usize>,
    inverse: Matrix<Rf>,
    rows: Vec<Vec<Rf>>,
}

impl SpanSolver {
    fn new(entries: &[BasisEntry]) -> Self {
        // Columns where the directions are independent give an invertible minor: its
        // determinant has lowest term det(E_P) t^(sum k_i).
        let dirs = Matrix::from_rows(entries.iter().map(|e| e.direction.clone()).collect());
        let (_, pivots) = dirs.rref();
        assert_eq!(pivots.len(), entries.len(), "directions must be independent");
        let minor = Matrix::from_rows(entries.iter().map(|e| pivots.iter().map(|&p| e.image[p].clone()).collect()).collect());
        let inverse = minor.inverse().expect("reduced family has an invertible minor");
        SpanSolver { pivots, inverse, rows: entries.iter().map(|e| e.image.clone()).collect() }
    }

    fn solve(&self, v: &[Rf]) -> Option<Vec<Rf>> {
        let sub: Vec<Rf> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let lambda = self.inverse.left_apply(&sub);
        for (j, target) in v.iter().enumerate() {
            let mut acc = Rf::zero();
            for (l, row) in lambda.iter().zip(&self.rows) {
                if !l.is_zero() && !row[j].is_zero() {
                    acc = acc + l.clone() * &row[j];
                }
            }
            if &acc != target {
                return None;
            }
        }
        Some(lambda)
    }

    fn determinant(&self) -> Rf {
        self.inverse.det().inverse().expect("inverse matrix is invertible")
    }
}

/// Coefficients `c` with `e = sum c_j dirs[j]`.
fn express_direction(e: &[Rational], dirs: &[&[Rational]]) -> Option<Vec<Rational>> {
    if dirs.is_empty() {
        return e.iter().all(Zero::is_zero).then(Vec::new);
    }
    let m = Matrix::from_rows(dirs.iter().map(|d| d.to_vec()).collect()).transpose();
    m.solve(e)
}

#[derive(Clone, Debug)]
pub struct ImageBasis {
    entries: Vec<BasisEntry>,
    solver: SpanSolver,
    truncated: bool,
    candidates_used: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Expression {
    pub coefficients: Vec<Rf>,
    pub pole_free: bool,
}

impl ImageBasis {
    pub fn entries(&self) -> &[BasisEntry] {
        &self.entries
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn orders(&self) -> Vec<i64> {
        self.entries.iter().map(|e| e.order).collect()
    }

    pub fn q(&self) -> Vec<&FreePolynomial<Rf>> {
        self.entries.iter().map(|e| &e.q).collect()
    }

    /// Whether the `q_i` were truncated to bounded t-degree.
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn candidates_used(&self) -> usize {
        self.candidates_used
    }

    /// Longest word occurring in any `q_i`.
    pub fn max_word_len(&self) -> usize {
        self.entries.iter().flat_map(|e| e.q.terms().map(|(w, _)| w.len())).max().unwrap_or(0)
    }

    /// Determinant of the invertible minor of the image matrix.
    pub fn determinant(&self) -> Rf {
        self.solver.determinant()
    }

    pub fn express_in_basis(&self, v: &[Rf]) -> Result<Expression, EngineError> {
        let coefficients = self.solver.solve(v).ok_or(EngineError::NotInSpan)?;
        let pole_free = coefficients.iter().all(Rf::is_regular_at_zero);
        Ok(Expression { coefficients, pole_free })
    }

    pub fn contains(&self, v: &[Rf]) -> bool {
        self.express_in_basis(v).is_ok_and(|e| e.pole_free)
    }
}

struct Builder<'a> {
    f: &'a HomomorphismSpec,
    entries: Vec<BasisEntry>,
}

const REDUCTION_LIMIT: usize = 100_000;

impl<'a> Builder<'a> {
    fn dirs(&self, among: &[usize]) -> Vec<&[Rational]> {
        among.iter().map(|&j| self.entries[j].direction.as_slice()).collect()
    }

    /// Cancels leading terms against entries of no larger order until the leading
    /// direction is new. The caller guarantees the candidate is not in `M`.
    fn reduce_lead(&self, mut cand: BasisEntry) -> Result<BasisEntry, EngineError> {
        for _ in 0..REDUCTION_LIMIT {
            let among: Vec<usize> = (0..self.entries.len()).filter(|&j| self.entries[j].order <= cand.order).collect();
            let Some(c) = express_direction(&cand.direction, &self.dirs(&among)) else {
                return Ok(cand);
            };
            let k = cand.order;
            for (&j, cj) in among.iter().zip(&c) {
                if !cj.is_zero() {
                    let coef = Rf::monomial(cj.clone(), k - self.entries[j].order);
                    cand.axpy(&coef, &self.entries[j]);
                }
            }
            if !cand.refresh() {
                return Err(EngineError::Internal("candidate reduced to zero"));
            }
        }
        Err(EngineError::Internal("leading-term reduction did not terminate"))
    }

    fn sorted_positions(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.entries.len()).collect();
        order.sort_by_key(|&i| (self.entries[i].order, i));
        order
    }

    fn normalize(&mut self) -> Result<(), EngineError> {
        'outer: for _ in 0..REDUCTION_LIMIT {
            let order = self.sorted_positions();
            for pos in 0..order.len() {
                let i = order[pos];
                let Some(c) = express_direction(&self.entries[i].direction, &self.dirs(&order[..pos])) else {
                    continue;
                };
                if i == 0 {
                    return Err(EngineError::IdentityDisplaced);
                }
                let k = self.entries[i].order;
                let mut entry = self.entries[i].clone();
                for (&j, cj) in order[..pos].iter().zip(&c) {
                    if !cj.is_zero() {
                        entry.axpy(&Rf::monomial(cj.clone(), k - self.entries[j].order), &self.entries[j]);
                    }
                }
                if !entry.refresh() {
                    return Err(EngineError::Internal("basis element reduced to zero"));
                }
                self.entries[i] = entry;
                continue 'outer;
            }
            return Ok(());
        }
        Err(EngineError::Internal("normalization did not terminate"))
    }

    fn insert(&mut self, cand: BasisEntry) -> Result<(), EngineError> {
        let solver = SpanSolver::new(&self.entries);
        match solver.solve(&cand.image) {
            None => self.entries.push(cand),
            Some(lambda) => {
                // Replace the element whose coefficient has the deepest pole; the
                // rest together with the candidate span the enlarged module.
                let vals: Vec<i64> = lambda.iter().map(|l| l.valuation_at_zero().finite().unwrap_or(i64::MAX)).collect();
                let worst = *vals.iter().min().unwrap();
                if worst >= 0 {
                    return Ok(());
                }
                let j = (1..vals.len()).rev().find(|&j| vals[j] == worst).ok_or(EngineError::IdentityDisplaced)?;
                self.entries[j] = cand;
            }
        }
        self.normalize()
    }

    fn candidates(&self) -> Vec<(FreePolynomial<Rf>, AmbientElement)> {
        let mut out: Vec<(FreePolynomial<Rf>, AmbientElement)> = Vec::new();
        for e in &self.entries {
            for a in Letter::ALL {
                let letter = FreePolynomial::letter(a);
                let img = self.f.image(a);
                for (q, el) in [
                    (e.q.mul(&letter), self.f.mul(&e.element, img)),
                    (letter.mul(&e.q), self.f.mul(img, &e.element)),
                ] {
                    if !out.iter().any(|(p, _)| p == &q) {
                        out.push((q, el));
                    }
                }
            }
        }
        out
    }
}

fn candidate_key(red: &BasisEntry, source: &FreePolynomial<Rf>) -> (i64, usize, Word) {
    (red.order, red.q.num_terms(), source.max_word().cloned().unwrap_or_default())
}

fn closure_holds(f: &HomomorphismSpec, entries: &[BasisEntry], solver: &SpanSolver) -> bool {
    entries.iter().all(|e| {
        Letter::ALL.iter().all(|&a| {
            [f.mul(&e.element, f.image(a)), f.mul(f.image(a), &e.element)].iter().all(|p| {
                solver.solve(&f.ambient().flatten(p)).is_some_and(|l| l.iter().all(Rf::is_regular_at_zero))
            })
        })
    })
}

/// Extracts `q_1 = 1, q_2, ...` whose images form a reduced basis of the image module.
///
/// Candidates are `q_i x, x q_i, q_i y, y q_i`; among those outside the module the one
/// with the smallest (leading order, number of words, largest word) is reduced and
/// inserted. The search stops when no candidate lies outside, which certifies that
/// the module is closed under both generators and hence contains every word image.
pub fn compute_image_basis(
    f: &HomomorphismSpec,
    expected_n: Option<usize>,
    word_budget: usize,
) -> Result<ImageBasis, EngineError> {
    let one = BasisEntry::new(f, FreePolynomial::one(), f.ambient().identity()).expect("identity is nonzero");
    let mut b = Builder { f, entries: vec![one] };
    let mut used = 0;
    loop {
        let solver = SpanSolver::new(&b.entries);
        let mut best: Option<((i64, usize, Word), BasisEntry)> = None;
        for (q, el) in b.candidates() {
            used += 1;
            if used > word_budget {
                return Err(EngineError::BudgetExhausted { rank: b.entries.len(), orders: b.entries.iter().map(|e| e.order).collect() });
            }
            let image = f.ambient().flatten(&el);
            if solver.solve(&image).is_some_and(|l| l.iter().all(Rf::is_regular_at_zero)) {
                continue;
            }
            let cand = BasisEntry::new(f, q.clone(), el).expect("nonmember is nonzero");
            let red = b.reduce_lead(cand)?;
            let key = candidate_key(&red, &q);
            if best.as_ref().is_none_or(|(k, _)| key.cmp(k) == Ordering::Less) {
                best = Some((key, red));
            }
        }
        let Some((_, cand)) = best else { break };
        b.insert(cand)?;
        if let Some(n) = expected_n {
            if b.entries.len() > n {
                return Err(EngineError::RankExceeded { expected: n, found: b.entries.len() });
            }
        }
    }
    let order = b.sorted_positions();
    let mut entries: Vec<BasisEntry> = order.iter().map(|&i| b.entries[i].clone()).collect();
    if order[0] != 0 {
        return Err(EngineError::IdentityDisplaced);
    }
    if let Some(n) = expected_n {
        if entries.len() != n {
            return Err(EngineError::RankMismatch { expected: n, found: entries.len() });
        }
    }
    let truncated = truncate(f, &mut entries);
    let solver = SpanSolver::new(&entries);
    Ok(ImageBasis { entries, solver, truncated, candidates_used: used })
}

/// Drops t-degrees above `max k_i + gamma + 1` in the `q_i` when that leaves the
/// leading terms and the closure certificate intact.
fn truncate(f: &HomomorphismSpec, entries: &mut Vec<BasisEntry>) -> bool {
    let max_k = entries.iter().map(|e| e.order).max().unwrap_or(0);
    let Ok(cut) = usize::try_from(max_k + f.gamma() + 1) else {
        return false;
    };
    let cut_q = |q: &FreePolynomial<Rf>| {
        q.map(|c| if c.is_polynomial() { Rf::from_poly(c.numerator().truncate(cut)) } else { c.clone() })
    };
    if entries.iter().all(|e| cut_q(&e.q) == e.q) {
        return false;
    }
    let mut trial = Vec::with_capacity(entries.len());
    for e in entries.iter() {
        let q = cut_q(&e.q);
        let element = f.apply(&q);
        match BasisEntry::new(f, q, element) {
            Some(t) if t.order == e.order && t.direction == e.direction => trial.push(t),
            _ => return false,
        }
    }
    if !closure_holds(f, &trial, &SpanSolver::new(&trial)) {
        return false;
    }
    *entries = trial;
    true
}

/// Re-checks `x`/`y` closure of the module spanned by the basis.
pub fn closure_certificate(f: &HomomorphismSpec, basis: &ImageBasis) -> bool {
    closure_holds(f, &basis.entries, &basis.solver)
}
