use num_traits::{One, Zero};

use crate::analysis::FinAlgebra;
use crate::arith::field::Rational;
use crate::arith::poly::Poly;
use crate::arith::ratfunc::RationalFunction;

use super::basis::ImageBasis;
use super::hom::HomomorphismSpec;
use super::EngineError;

type Rf = RationalFunction;

/// Structure coefficients of the deformed product on the image basis:
/// `d_k * d_m = sum_i c(i, k, m) d_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct DeformationTable {
    n: usize,
    products: Vec<Vec<Vec<Rf>>>,
}

impl DeformationTable {
    /// `products[k][m][i] = c(i, k, m)`; every entry must be regular at 0.
    pub fn new(products: Vec<Vec<Vec<Rf>>>) -> Result<Self, EngineError> {
        let n = products.len();
        for (k, row) in products.iter().enumerate() {
            if row.len() != n || row.iter().any(|v| v.len() != n) {
                return Err(EngineError::TableShape);
            }
            for (m, v) in row.iter().enumerate() {
                if let Some(i) = v.iter().position(|c| !c.is_regular_at_zero()) {
                    return Err(EngineError::PoleInTable { i, k, m });
                }
            }
        }
        Ok(DeformationTable { n, products })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn c(&self, i: usize, k: usize, m: usize) -> &Rf {
        &self.products[k][m][i]
    }

    pub fn product(&self, k: usize, m: usize) -> &[Rf] {
        &self.products[k][m]
    }

    pub fn zeta(&self, i: usize, k: usize, m: usize) -> Rational {
        self.c(i, k, m).at_zero().expect("table entries are regular at 0")
    }

    pub fn xi(&self, i: usize, k: usize, m: usize) -> Rf {
        self.c(i, k, m).tail_over_t().expect("table entries are regular at 0")
    }

    /// Replaces one coefficient; for negative controls.
    pub fn with_entry(mut self, i: usize, k: usize, m: usize, value: Rf) -> Self {
        self.products[k][m][i] = value;
        self
    }

    fn entries(&self) -> impl Iterator<Item = &Rf> {
        self.products.iter().flatten().flatten()
    }
}

pub fn structure_constants(f: &HomomorphismSpec, basis: &ImageBasis) -> Result<DeformationTable, EngineError> {
    let entries = basis.entries();
    let n = entries.len();
    let mut products = vec![vec![Vec::new(); n]; n];
    for k in 0..n {
        for m in 0..n {
            let p = f.mul(&entries[k].element, &entries[m].element);
            let e = basis.express_in_basis(&f.ambient().flatten(&p))?;
            if let Some(i) = e.coefficients.iter().position(|c| !c.is_regular_at_zero()) {
                return Err(EngineError::PoleInTable { i, k, m });
            }
            products[k][m] = e.coefficients;
        }
    }
    DeformationTable::new(products)
}

pub fn special_fiber(table: &DeformationTable) -> FinAlgebra {
    FinAlgebra::from_fn(table.n, 0, |i, k, m| table.zeta(i, k, m))
}

pub fn specialize_family(table: &DeformationTable, s: &Rational) -> Result<FinAlgebra, EngineError> {
    let n = table.n;
    let mut products = vec![vec![Vec::with_capacity(n); n]; n];
    for k in 0..n {
        for m in 0..n {
            for i in 0..n {
                products[k][m].push(table.c(i, k, m).evaluate(s)?);
            }
        }
    }
    let mut identity = vec![Rational::zero(); n];
    identity[0] = Rational::one();
    Ok(FinAlgebra::new(products, identity).expect("square table"))
}

/// Common denominator `h` with `h(0) = 1` and numerators `sigma = h c`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyTypeTable {
    pub h: Poly<Rational>,
    products: Vec<Vec<Vec<Poly<Rational>>>>,
}

impl PolyTypeTable {
    pub fn sigma(&self, i: usize, k: usize, m: usize) -> &Poly<Rational> {
        &self.products[k][m][i]
    }

    pub fn n(&self) -> usize {
        self.products.len()
    }
}

pub fn to_polynomial_type(table: &DeformationTable) -> PolyTypeTable {
    let mut h = Poly::one();
    for c in table.entries() {
        let d = c.denominator();
        if !d.is_one() {
            h = (&h * d).exact_div(&h.gcd(d));
        }
    }
    let h0 = h.coeff(0);
    let h = h.scale(&(Rational::one() / h0));
    let h_rf = Rf::from_poly(h.clone());
    let products = table
        .products
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| {
                    v.iter()
                        .map(|c| {
                            let s = c.clone() * &h_rf;
                            debug_assert!(s.is_polynomial());
                            s.numerator().clone()
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    PolyTypeTable { h, products }
}

/// First `(a, b, c, i)` where `((d_a d_b) d_c)_i != (d_a (d_b d_c))_i` in Q(t).
///
/// Compared after clearing the common denominator: both sides scale by `h^2`.
pub fn associativity_witness(table: &DeformationTable) -> Option<(usize, usize, usize, usize)> {
    let p = to_polynomial_type(table);
    let n = table.n;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for i in 0..n {
                    let mut left = Poly::zero();
                    let mut right = Poly::zero();
                    for j in 0..n {
                        let (s1, s2) = (p.sigma(j, a, b), p.sigma(j, b, c));
                        if !s1.is_zero() {
                            left = &left + &(s1 * p.sigma(i, j, c));
                        }
                        if !s2.is_zero() {
                            right = &right + &(s2 * p.sigma(i, a, j));
                        }
                    }
                    if left != right {
                        return Some((a, b, c, i));
                    }
                }
            }
        }
    }
    None
}

pub fn check_associativity_formal(table: &DeformationTable) -> bool {
    associativity_witness(table).is_none()
}
