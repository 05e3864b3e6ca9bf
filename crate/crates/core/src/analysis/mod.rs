//! Finite-dimensional associative algebras over Q given by structure constants.

mod shape;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::arith::field::Rational;
use crate::arith::matrix::{Matrix, RowSpace};

pub use shape::{square_partitions, Shape};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("expected {expected} structure constants per product, found {found}")]
    BadShape { expected: usize, found: usize },
    #[error("identity vector has length {0}")]
    BadIdentity(usize),
    #[error("trace-form kernel is not a nilpotent two-sided ideal")]
    RadicalCheck,
}

/// `products[k][m]` holds the coordinates of `d_k d_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinAlgebra {
    dim: usize,
    products: Vec<Vec<Vec<Rational>>>,
    identity: Vec<Rational>,
}

impl FinAlgebra {
    pub fn new(products: Vec<Vec<Vec<Rational>>>, identity: Vec<Rational>) -> Result<Self, AnalysisError> {
        let dim = products.len();
        for row in &products {
            if row.len() != dim {
                return Err(AnalysisError::BadShape { expected: dim, found: row.len() });
            }
            if let Some(bad) = row.iter().find(|v| v.len() != dim) {
                return Err(AnalysisError::BadShape { expected: dim, found: bad.len() });
            }
        }
        if identity.len() != dim {
            return Err(AnalysisError::BadIdentity(identity.len()));
        }
        Ok(FinAlgebra { dim, products, identity })
    }

    /// Builds from `c(i, k, m)`, the coefficient of `d_i` in `d_k d_m`.
    pub fn from_fn(dim: usize, identity_index: usize, c: impl Fn(usize, usize, usize) -> Rational) -> Self {
        let products = (0..dim).map(|k| (0..dim).map(|m| (0..dim).map(|i| c(i, k, m)).collect()).collect()).collect();
        FinAlgebra { dim, products, identity: unit(dim, identity_index) }
    }

    /// The full matrix algebra with basis `E_ab` at index `a*n + b`.
    pub fn matrix_algebra(n: usize) -> Self {
        FinAlgebra::from_fn(n * n, 0, |i, k, m| {
            let (a, b) = (k / n, k % n);
            let (c, d) = (m / n, m % n);
            if b == c && i == a * n + d {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
        .with_identity((0..n * n).map(|i| if i / n == i % n { Rational::one() } else { Rational::zero() }).collect())
    }

    pub fn direct_product(&self, other: &Self) -> Self {
        let (p, q) = (self.dim, other.dim);
        let n = p + q;
        let mut products = vec![vec![vec![Rational::zero(); n]; n]; n];
        for k in 0..p {
            for m in 0..p {
                products[k][m][..p].clone_from_slice(&self.products[k][m]);
            }
        }
        for k in 0..q {
            for m in 0..q {
                products[p + k][p + m][p..].clone_from_slice(&other.products[k][m]);
            }
        }
        let identity = self.identity.iter().chain(&other.identity).cloned().collect();
        FinAlgebra { dim: n, products, identity }
    }

    fn with_identity(mut self, identity: Vec<Rational>) -> Self {
        self.identity = identity;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn identity(&self) -> &[Rational] {
        &self.identity
    }

    pub fn c(&self, i: usize, k: usize, m: usize) -> &Rational {
        &self.products[k][m][i]
    }

    pub fn product(&self, k: usize, m: usize) -> &[Rational] {
        &self.products[k][m]
    }

    pub fn mul(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (k, ak) in a.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (m, bm) in b.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let f = ak * bm;
                for (o, c) in out.iter_mut().zip(&self.products[k][m]) {
                    if !c.is_zero() {
                        *o += &f * c;
                    }
                }
            }
        }
        out
    }

    /// First triple `(a, b, c)` of basis elements with `(ab)c != a(bc)`.
    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        for a in 0..n {
            for b in 0..n {
                let ab = &self.products[a][b];
                for c in 0..n {
                    let left = self.mul(ab, &unit(n, c));
                    let right = self.mul(&unit(n, a), &self.products[b][c]);
                    if left != right {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_identity_two_sided(&self) -> bool {
        (0..self.dim).all(|k| {
            let e = unit(self.dim, k);
            self.mul(&self.identity, &e) == e && self.mul(&e, &self.identity) == e
        })
    }

    /// Matrix of left multiplication by `v`, columns indexed by basis elements.
    pub fn left_matrix(&self, v: &[Rational]) -> Matrix<Rational> {
        let n = self.dim;
        let mut m = Matrix::zeros(n, n);
        for col in 0..n {
            let p = self.mul(v, &unit(n, col));
            for (row, x) in p.into_iter().enumerate() {
                m[(row, col)] = x;
            }
        }
        m
    }
}

pub(crate) fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

pub fn check_associative(a: &FinAlgebra) -> bool {
    a.associativity_witness().is_none()
}

/// `T[i][j]` is the trace of left multiplication by `d_i d_j`.
pub fn trace_form(a: &FinAlgebra) -> Matrix<Rational> {
    let n = a.dim;
    let tau: Vec<Rational> = (0..n).map(|l| (0..n).map(|m| a.c(m, l, m).clone()).sum()).collect();
    let mut t = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            t[(i, j)] = a.product(i, j).iter().zip(&tau).map(|(c, s)| c * s).sum();
        }
    }
    t
}

/// The kernel of the trace form, checked to be a nilpotent two-sided ideal.
pub fn radical(a: &FinAlgebra) -> Result<Vec<Vec<Rational>>, AnalysisError> {
    let basis = trace_form(a).nullspace();
    let n = a.dim;
    let mut span = RowSpace::new(n);
    for v in &basis {
        span.insert(v);
    }
    for v in &basis {
        for k in 0..n {
            let e = unit(n, k);
            if !span.contains(&a.mul(v, &e)) || !span.contains(&a.mul(&e, v)) {
                return Err(AnalysisError::RadicalCheck);
            }
        }
    }
    // Powers R^j shrink strictly until zero.
    let mut power = basis.clone();
    for _ in 0..=n {
        if power.is_empty() {
            return Ok(basis);
        }
        let mut next = RowSpace::new(n);
        let mut next_basis = Vec::new();
        for p in &power {
            for r in &basis {
                let prod = a.mul(p, r);
                if next.insert(&prod) {
                    next_basis.push(prod);
                }
            }
        }
        if next_basis.len() >= power.len() {
            return Err(AnalysisError::RadicalCheck);
        }
        power = next_basis;
    }
    Err(AnalysisError::RadicalCheck)
}

/// Basis of `{z : z d_k = d_k z for all k}`.
pub fn center(a: &FinAlgebra) -> Vec<Vec<Rational>> {
    let n = a.dim;
    // Unknown z; equations (z d_m - d_m z)_i = sum_k z_k (c(i,k,m) - c(i,m,k)).
    let mut rows = Vec::with_capacity(n * n);
    for m in 0..n {
        for i in 0..n {
            rows.push((0..n).map(|k| a.c(i, k, m) - a.c(i, m, k)).collect());
        }
    }
    Matrix::from_rows(rows).nullspace()
}

/// Dimension of the unital subalgebra generated by `gens`.
pub fn generated_subalgebra_dim(a: &FinAlgebra, gens: &[Vec<Rational>]) -> usize {
    let mut span = RowSpace::new(a.dim);
    span.insert(&a.identity);
    let mut frontier = vec![a.identity.clone()];
    while let Some(v) = frontier.pop() {
        for g in gens {
            let p = a.mul(&v, g);
            if span.insert(&p) {
                frontier.push(p);
            }
        }
    }
    span.rank()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub dim: usize,
    pub radical_dim: usize,
    pub center_dim: usize,
    pub semisimple: bool,
    pub shape: Shape,
}

pub fn structure_report(a: &FinAlgebra) -> Result<StructureReport, AnalysisError> {
    let radical_dim = radical(a)?.len();
    let center_dim = center(a).len();
    let semisimple = radical_dim == 0;
    let shape = if semisimple { Shape::from_candidates(square_partitions(a.dim, center_dim)) } else { Shape::NotSemisimple };
    Ok(StructureReport { dim: a.dim, radical_dim, center_dim, semisimple, shape })
}

impl std::fmt::Display for StructureReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "dim {}, radical {}, center {}, {}, shape {}",
            self.dim,
            self.radical_dim,
            self.center_dim,
            if self.semisimple { "semisimple" } else { "not semisimple" },
            self.shape
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::int;

    fn dual_numbers() -> FinAlgebra {
        // basis 1, e with e^2 = 0
        FinAlgebra::from_fn(2, 0, |i, k, m| if k + m == i { int(1) } else { int(0) })
    }

    fn field_power(n: usize) -> FinAlgebra {
        let mut a = FinAlgebra::from_fn(1, 0, |_, _, _| int(1));
        for _ in 1..n {
            a = a.direct_product(&FinAlgebra::from_fn(1, 0, |_, _, _| int(1)));
        }
        a
    }

    #[test]
    fn associativity() {
        let m2 = FinAlgebra::matrix_algebra(2);
        assert!(check_associative(&m2));
        assert!(m2.is_identity_two_sided());
        let mut bad = m2.clone();
        bad.products[1][2][0] = int(2);
        assert!(bad.associativity_witness().is_some());
    }

    #[test]
    fn trace_forms() {
        let q = FinAlgebra::from_fn(1, 0, |_, _, _| int(1));
        assert_eq!(trace_form(&q), Matrix::from_rows(vec![vec![int(1)]]));
        assert_eq!(trace_form(&field_power(2)), Matrix::identity(2));
        let t = trace_form(&FinAlgebra::matrix_algebra(2));
        for k in 0..4 {
            for m in 0..4 {
                let (a, b, c, d) = (k / 2, k % 2, m / 2, m % 2);
                let expected = if b == c && d == a { 2 } else { 0 };
                assert_eq!(t[(k, m)], int(expected));
            }
        }
    }

    #[test]
    fn radicals_and_centers() {
        let m2 = FinAlgebra::matrix_algebra(2);
        assert!(radical(&m2).unwrap().is_empty());
        assert_eq!(radical(&dual_numbers()).unwrap(), vec![vec![int(0), int(1)]]);
        assert_eq!(center(&m2).len(), 1);
        assert_eq!(center(&field_power(5)).len(), 5);
    }

    #[test]
    fn reports() {
        let a = FinAlgebra::matrix_algebra(2).direct_product(&field_power(4));
        let r = structure_report(&a).unwrap();
        assert_eq!((r.dim, r.radical_dim, r.center_dim, r.semisimple), (8, 0, 5, true));
        assert_eq!(r.shape, Shape::Unique(vec![2, 1, 1, 1, 1]));
        let r = structure_report(&FinAlgebra::matrix_algebra(2)).unwrap();
        assert_eq!(r.shape, Shape::Unique(vec![2]));
        let two = FinAlgebra::matrix_algebra(2).direct_product(&FinAlgebra::matrix_algebra(2));
        assert_eq!(structure_report(&two).unwrap().shape, Shape::Unique(vec![2, 2]));
        assert_eq!(structure_report(&dual_numbers()).unwrap().shape, Shape::NotSemisimple);
    }

    #[test]
    fn generation() {
        let m2 = FinAlgebra::matrix_algebra(2);
        assert_eq!(generated_subalgebra_dim(&m2, &[m2.identity().to_vec()]), 1);
        let e11 = unit(4, 0);
        let sym: Vec<Rational> = vec![int(0), int(1), int(1), int(0)];
        assert_eq!(generated_subalgebra_dim(&m2, &[e11, sym]), 4);
    }
}
