//! Direct sums of blocks `B_i ⊗ Q(t)[u]/(g_i(u))`.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::analysis::FinAlgebra;
use crate::arith::field::Rational;
use crate::arith::matrix::Matrix;
use crate::arith::poly::Poly;
use crate::arith::ratfunc::{RationalFunction, Valuation};
use crate::arith::ArithError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AmbientError {
    #[error("block {block}: minimal polynomial is not monic in u")]
    NotMonic { block: usize },
    #[error("block {block}: minimal polynomial is divisible by u")]
    DivisibleByU { block: usize },
    #[error("block {block}: minimal polynomial has coefficients outside Q[t]")]
    NotPolynomialInT { block: usize },
    #[error("block {block}: minimal polynomial is not squarefree over Q(t)")]
    NotSquarefree { block: usize },
    #[error("block {block}: minimal polynomial has a repeated root at t = {at}")]
    NotSquarefreeAt { block: usize, at: Rational },
    #[error("block {block}: table algebra is invalid ({reason})")]
    BadTable { block: usize, reason: &'static str },
    #[error("element does not match the ambient algebra layout")]
    Mismatch,
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Clone, Debug, PartialEq)]
pub enum BlockAlgebra {
    Matrix(usize),
    Table(FinAlgebra),
}

impl BlockAlgebra {
    pub fn dim(&self) -> usize {
        match self {
            BlockAlgebra::Matrix(n) => n * n,
            BlockAlgebra::Table(a) => a.dim(),
        }
    }

    fn identity(&self) -> Vec<Rational> {
        match self {
            BlockAlgebra::Matrix(n) => {
                (0..n * n).map(|i| if i / n == i % n { Rational::one() } else { Rational::zero() }).collect()
            }
            BlockAlgebra::Table(a) => a.identity().to_vec(),
        }
    }

    /// Nonzero `(i, c)` with `e_k e_m = sum c e_i`.
    fn basis_product(&self, k: usize, m: usize) -> Vec<(usize, Rational)> {
        match self {
            BlockAlgebra::Matrix(n) => {
                let (a, b, c, d) = (k / n, k % n, m / n, m % n);
                if b == c {
                    vec![(a * n + d, Rational::one())]
                } else {
                    Vec::new()
                }
            }
            BlockAlgebra::Table(t) => {
                t.product(k, m).iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
            }
        }
    }

    /// Faithful representation of the basis element `e_k`.
    pub fn representation(&self, k: usize) -> Matrix<Rational> {
        match self {
            BlockAlgebra::Matrix(n) => {
                let mut m = Matrix::zeros(*n, *n);
                m[(k / n, k % n)] = Rational::one();
                m
            }
            BlockAlgebra::Table(t) => {
                let mut e = vec![Rational::zero(); t.dim()];
                e[k] = Rational::one();
                t.left_matrix(&e)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BlockSpec {
    pub algebra: BlockAlgebra,
    min_poly: Poly<RationalFunction>,
}

impl BlockSpec {
    /// Checks that `g` is monic in `u`, has `Q[t]` coefficients, is not divisible by `u`
    /// and is squarefree over `Q(t)`. `block` only labels errors.
    pub fn new(algebra: BlockAlgebra, g: Poly<RationalFunction>, block: usize) -> Result<Self, AmbientError> {
        if !g.coeffs().iter().all(RationalFunction::is_polynomial) {
            return Err(AmbientError::NotPolynomialInT { block });
        }
        if g.is_zero() || !g.is_monic() {
            return Err(AmbientError::NotMonic { block });
        }
        if g.coeff(0).is_zero() {
            return Err(AmbientError::DivisibleByU { block });
        }
        if !g.is_squarefree() {
            return Err(AmbientError::NotSquarefree { block });
        }
        if let BlockAlgebra::Table(t) = &algebra {
            if !crate::analysis::check_associative(t) {
                return Err(AmbientError::BadTable { block, reason: "not associative" });
            }
            if !t.is_identity_two_sided() {
                return Err(AmbientError::BadTable { block, reason: "identity is not two-sided" });
            }
        }
        Ok(BlockSpec { algebra, min_poly: g })
    }

    pub fn min_poly(&self) -> &Poly<RationalFunction> {
        &self.min_poly
    }

    pub fn degree(&self) -> usize {
        self.min_poly.degree().unwrap_or(0)
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim() * self.degree()
    }

    pub fn min_poly_at(&self, s: &Rational) -> Result<Poly<Rational>, ArithError> {
        Ok(Poly::new(self.min_poly.coeffs().iter().map(|c| c.evaluate(s)).collect::<Result<_, _>>()?))
    }
}

pub fn squarefree_at(spec: &BlockSpec, s: &Rational) -> bool {
    spec.min_poly_at(s).is_ok_and(|g| g.is_squarefree())
}

/// Ones on the subdiagonal, last column `-g_0, ..., -g_{d-1}`.
pub fn companion_matrix(g: &Poly<Rational>) -> Matrix<Rational> {
    let d = g.degree().expect("companion matrix of zero polynomial");
    let mut c = Matrix::zeros(d, d);
    for i in 1..d {
        c[(i, i - 1)] = Rational::one();
    }
    for i in 0..d {
        c[(i, d - 1)] = -g.coeff(i);
    }
    c
}

/// Per block, one polynomial in `u` (reduced mod `g_i`) per basis element.
#[derive(Clone, Debug, PartialEq)]
pub struct AmbientElement {
    pub blocks: Vec<Vec<Poly<RationalFunction>>>,
}

impl AmbientElement {
    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        AmbientElement { blocks: self.blocks.iter().map(|b| b.iter().map(|p| p.scale(c)).collect()).collect() }
    }

    fn zip(&self, other: &Self, f: impl Fn(&Poly<RationalFunction>, &Poly<RationalFunction>) -> Poly<RationalFunction>) -> Self {
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.iter().zip(b).map(|(x, y)| f(x, y)).collect()).collect();
        AmbientElement { blocks }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().flatten().all(Poly::is_zero)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AmbientAlgebra {
    blocks: Vec<BlockSpec>,
}

impl AmbientAlgebra {
    pub fn new(blocks: Vec<BlockSpec>) -> Self {
        assert!(!blocks.is_empty(), "ambient algebra needs a block");
        AmbientAlgebra { blocks }
    }

    pub fn blocks(&self) -> &[BlockSpec] {
        &self.blocks
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().map(BlockSpec::dim).sum()
    }

    pub fn zero(&self) -> AmbientElement {
        AmbientElement { blocks: self.blocks.iter().map(|b| vec![Poly::zero(); b.algebra.dim()]).collect() }
    }

    pub fn identity(&self) -> AmbientElement {
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.algebra.identity().into_iter().map(|c| Poly::constant(RationalFunction::constant(c))).collect())
            .collect();
        AmbientElement { blocks }
    }

    /// `e_basis ⊗ u^power` in the given block.
    pub fn basis_element(&self, block: usize, basis: usize, power: usize) -> AmbientElement {
        let mut z = self.zero();
        z.blocks[block][basis] = Poly::monomial(RationalFunction::one(), power);
        self.reduce(z)
    }

    fn conforms(&self, a: &AmbientElement) -> bool {
        a.blocks.len() == self.blocks.len()
            && a.blocks.iter().zip(&self.blocks).all(|(v, b)| v.len() == b.algebra.dim())
    }

    /// Reduces every entry modulo its block's minimal polynomial.
    pub fn reduce(&self, mut a: AmbientElement) -> AmbientElement {
        for (v, b) in a.blocks.iter_mut().zip(&self.blocks) {
            for p in v.iter_mut() {
                if p.degree().is_some_and(|d| d >= b.degree()) {
                    *p = p.rem_monic(&b.min_poly);
                }
            }
        }
        a
    }

    pub fn validate(&self, a: &AmbientElement) -> Result<(), AmbientError> {
        if self.conforms(a) {
            Ok(())
        } else {
            Err(AmbientError::Mismatch)
        }
    }

    pub fn mul(&self, a: &AmbientElement, b: &AmbientElement) -> Result<AmbientElement, AmbientError> {
        self.validate(a)?;
        self.validate(b)?;
        let mut out = self.zero();
        for (bi, spec) in self.blocks.iter().enumerate() {
            let (x, y) = (&a.blocks[bi], &b.blocks[bi]);
            let acc = &mut out.blocks[bi];
            for (k, pk) in x.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
                for (m, pm) in y.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
                    let prod = pk * pm;
                    for (i, c) in spec.algebra.basis_product(k, m) {
                        acc[i] = &acc[i] + &prod.scale(&RationalFunction::constant(c));
                    }
                }
            }
            for p in acc.iter_mut() {
                *p = p.rem_monic(&spec.min_poly);
            }
        }
        Ok(out)
    }

    pub fn flatten(&self, a: &AmbientElement) -> Vec<RationalFunction> {
        let mut out = Vec::with_capacity(self.n());
        for (v, spec) in a.blocks.iter().zip(&self.blocks) {
            for p in v {
                for j in 0..spec.degree() {
                    out.push(p.coeff(j));
                }
            }
        }
        out
    }

    pub fn unflatten(&self, v: &[RationalFunction]) -> Result<AmbientElement, AmbientError> {
        if v.len() != self.n() {
            return Err(AmbientError::Mismatch);
        }
        let mut it = v.iter();
        let blocks = self
            .blocks
            .iter()
            .map(|spec| {
                (0..spec.algebra.dim())
                    .map(|_| Poly::new((0..spec.degree()).map(|_| it.next().unwrap().clone()).collect()))
                    .collect()
            })
            .collect();
        Ok(AmbientElement { blocks })
    }

    pub fn min_valuation(&self, a: &AmbientElement) -> Valuation {
        self.flatten(a).iter().map(RationalFunction::valuation_at_zero).min().unwrap_or(Valuation::Infinity)
    }

    /// Evaluates at `t = s`, replacing `u` by the companion matrix of `g_i(s)`.
    pub fn specialize(&self, a: &AmbientElement, s: &Rational) -> Result<Vec<Matrix<Rational>>, AmbientError> {
        self.validate(a)?;
        let mut out = Vec::with_capacity(self.blocks.len());
        for (bi, spec) in self.blocks.iter().enumerate() {
            let g = spec.min_poly_at(s)?;
            if !g.is_squarefree() {
                return Err(AmbientError::NotSquarefreeAt { block: bi, at: s.clone() });
            }
            let c = companion_matrix(&g);
            let d = spec.degree();
            let mut powers = vec![Matrix::identity(d)];
            for j in 1..d {
                powers.push(powers[j - 1].mul(&c));
            }
            let rep_dim = spec.algebra.representation(0).rows();
            let mut total = Matrix::zeros(rep_dim * d, rep_dim * d);
            for (beta, p) in a.blocks[bi].iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                let mut value = Matrix::zeros(d, d);
                for (j, coef) in p.coeffs().iter().enumerate() {
                    value = value.add(&powers[j].scale(&coef.evaluate(s)?));
                }
                total = total.add(&kronecker(&spec.algebra.representation(beta), &value));
            }
            out.push(total);
        }
        Ok(out)
    }
}

pub fn kronecker(a: &Matrix<Rational>, b: &Matrix<Rational>) -> Matrix<Rational> {
    let (p, q) = (b.rows(), b.cols());
    let mut out = Matrix::zeros(a.rows() * p, a.cols() * q);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            if a[(i, j)].is_zero() {
                continue;
            }
            for k in 0..p {
                for l in 0..q {
                    out[(i * p + k, j * q + l)] = &a[(i, j)] * &b[(k, l)];
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::{int, rat};

    fn rf(c: &[Rational]) -> RationalFunction {
        RationalFunction::from_poly(Poly::new(c.to_vec()))
    }

    fn u_minus_one() -> Poly<RationalFunction> {
        Poly::new(vec![rf(&[int(-1)]), RationalFunction::one()])
    }

    /// u^2 - t
    fn u2_minus_t() -> Poly<RationalFunction> {
        Poly::new(vec![rf(&[int(0), int(-1)]), RationalFunction::zero(), RationalFunction::one()])
    }

    fn ambient() -> AmbientAlgebra {
        AmbientAlgebra::new(vec![
            BlockSpec::new(BlockAlgebra::Matrix(1), u2_minus_t(), 0).unwrap(),
            BlockSpec::new(BlockAlgebra::Matrix(2), u_minus_one(), 1).unwrap(),
        ])
    }

    #[test]
    fn block_validation() {
        assert!(matches!(
            BlockSpec::new(BlockAlgebra::Matrix(1), Poly::new(vec![RationalFunction::zero(), RationalFunction::one()]), 0),
            Err(AmbientError::DivisibleByU { .. })
        ));
        let sq = &u_minus_one() * &u_minus_one();
        assert!(matches!(BlockSpec::new(BlockAlgebra::Matrix(1), sq, 0), Err(AmbientError::NotSquarefree { .. })));
        let not_monic = u_minus_one().scale(&RationalFunction::constant(int(2)));
        assert!(matches!(BlockSpec::new(BlockAlgebra::Matrix(1), not_monic, 0), Err(AmbientError::NotMonic { .. })));
    }

    #[test]
    fn identity_and_reduction() {
        let a = ambient();
        assert_eq!(a.n(), 6);
        let u = a.basis_element(0, 0, 1);
        let one = a.identity();
        assert_eq!(a.mul(&one, &u).unwrap(), u);
        // u * u = t in the first block.
        let uu = a.mul(&u, &u).unwrap();
        assert_eq!(uu.blocks[0][0], Poly::constant(RationalFunction::t()));
        let flat = a.flatten(&one);
        let expected: Vec<RationalFunction> =
            [1, 0, 1, 0, 0, 1].iter().map(|&x| RationalFunction::constant(int(x))).collect();
        assert_eq!(flat, expected);
        assert_eq!(a.unflatten(&flat).unwrap(), one);
        assert!(a.flatten(&a.zero()).iter().all(Zero::is_zero));
    }

    #[test]
    fn cross_blocks_vanish() {
        let a = ambient();
        let u = a.basis_element(0, 0, 1);
        let e12 = a.basis_element(1, 1, 0);
        assert!(a.mul(&u, &e12).unwrap().is_zero());
    }

    #[test]
    fn companion_examples() {
        let c = companion_matrix(&Poly::new(vec![int(-1), int(1)]));
        assert_eq!(c, Matrix::from_rows(vec![vec![int(1)]]));
        let g = Poly::new(vec![int(2), int(-3), int(1)]);
        let c = companion_matrix(&g);
        let gc = c.mul(&c).add(&c.scale(&int(-3))).add(&Matrix::identity(2).scale(&int(2)));
        assert!(gc.is_zero());
    }

    #[test]
    fn squarefree_examples() {
        let a = ambient();
        assert!(squarefree_at(&a.blocks()[1], &rat(3, 7)));
        assert!(!squarefree_at(&a.blocks()[0], &int(0)));
        assert!(squarefree_at(&a.blocks()[0], &int(1)));
    }

    #[test]
    fn specialization_is_multiplicative() {
        let a = ambient();
        let x = a.basis_element(0, 0, 1).add(&a.basis_element(1, 1, 0).scale(&RationalFunction::t()));
        let y = a.basis_element(1, 2, 0).add(&a.identity());
        let s = rat(1, 3);
        let xy = a.mul(&x, &y).unwrap();
        let (sx, sy, sxy) = (a.specialize(&x, &s).unwrap(), a.specialize(&y, &s).unwrap(), a.specialize(&xy, &s).unwrap());
        for b in 0..2 {
            assert_eq!(sx[b].mul(&sy[b]), sxy[b]);
        }
        assert!(matches!(a.specialize(&x, &int(0)), Err(AmbientError::NotSquarefreeAt { .. })));
    }
}
