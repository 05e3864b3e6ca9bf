use num_traits::{One, Zero};
use serde::Serialize;

use crate::analysis::FinAlgebra;
use crate::arith::field::{inverse_power_of_two, Rational};
use crate::arith::matrix::{Matrix, RowSpace};
use crate::arith::poly::Poly;
use crate::arith::ratfunc::RationalFunction;
use crate::arith::unipoly::roots_in_half_open;
use crate::free::{FreePolynomial, Letter, Presentation, QuotientDimension, WeightedGrading};

use super::basis::ImageBasis;
use super::hom::HomomorphismSpec;
use super::table::{specialize_family, to_polynomial_type, DeformationTable};
use super::EngineError;

type Rf = RationalFunction;

/// Coordinates at `t = 0` of `f(r)` in the image basis.
pub fn fiber_coordinates(f: &HomomorphismSpec, basis: &ImageBasis, r: &FreePolynomial<Rational>) -> Result<Vec<Rational>, EngineError> {
    let e = basis.express_in_basis(&f.ambient().flatten(&f.apply(&r.to_rational_function())))?;
    if !e.pole_free {
        return Err(EngineError::NotInModule);
    }
    Ok(e.coefficients.iter().map(|c| c.at_zero().expect("pole-free")).collect())
}

/// Whether `f(r)` lies in `t` times the image module.
pub fn relation_in_jprime(f: &HomomorphismSpec, basis: &ImageBasis, r: &FreePolynomial<Rational>) -> Result<bool, EngineError> {
    Ok(fiber_coordinates(f, basis, r)?.iter().all(Zero::is_zero))
}

/// Evaluates `r` in the fiber with `x` and `y` sent to their fiber coordinates.
pub fn evaluate_in_fiber(fiber: &FinAlgebra, gx: &[Rational], gy: &[Rational], r: &FreePolynomial<Rational>) -> Vec<Rational> {
    let mut total = vec![Rational::zero(); fiber.dim()];
    for (w, c) in r.terms() {
        let v = w.letters().iter().fold(fiber.identity().to_vec(), |acc, &l| fiber.mul(&acc, if l == Letter::X { gx } else { gy }));
        for (t, x) in total.iter_mut().zip(v) {
            *t += c * x;
        }
    }
    total
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Isomorphic { dim: usize },
    Inconclusive,
    RelationsOutside { indices: Vec<usize> },
    DimensionMismatch { dim: usize, expected: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationCheck {
    pub memberships: Vec<bool>,
    pub quotient: QuotientDimension,
    pub verdict: Verdict,
}

/// Relations in `J'` plus an exact quotient dimension of `n` give an isomorphism
/// between the presented algebra and the special fiber.
pub fn verify_presentation(
    f: &HomomorphismSpec,
    basis: &ImageBasis,
    rels: &Presentation,
    grading: WeightedGrading,
    degree_bound: u32,
) -> Result<PresentationCheck, EngineError> {
    let memberships = rels.relations.iter().map(|r| relation_in_jprime(f, basis, r)).collect::<Result<Vec<_>, _>>()?;
    let quotient = crate::free::quotient_dimension(rels, grading, degree_bound)?;
    let failed: Vec<usize> = memberships.iter().enumerate().filter(|(_, ok)| !**ok).map(|(i, _)| i).collect();
    let n = basis.rank();
    let verdict = if !failed.is_empty() {
        Verdict::RelationsOutside { indices: failed }
    } else {
        match quotient.exact() {
            Some(d) if d == n => Verdict::Isomorphic { dim: d },
            Some(d) => Verdict::DimensionMismatch { dim: d, expected: n },
            None => Verdict::Inconclusive,
        }
    };
    Ok(PresentationCheck { memberships, quotient, verdict })
}

/// Dimension of the unital algebra generated by the specialized images of `x` and `y`.
pub fn generation_dimension_at(f: &HomomorphismSpec, s: &Rational) -> Result<usize, EngineError> {
    let amb = f.ambient();
    let gx = amb.specialize(f.image(Letter::X), s)?;
    let gy = amb.specialize(f.image(Letter::Y), s)?;
    let one = amb.specialize(&amb.identity(), s)?;
    let flat = |m: &[Matrix<Rational>]| -> Vec<Rational> { m.iter().flat_map(|b| b.to_rows().into_iter().flatten()).collect() };
    let mul = |a: &[Matrix<Rational>], b: &[Matrix<Rational>]| -> Vec<Matrix<Rational>> { a.iter().zip(b).map(|(x, y)| x.mul(y)).collect() };
    let mut span = RowSpace::new(flat(&one).len());
    span.insert(&flat(&one));
    let mut frontier = vec![one];
    while let Some(v) = frontier.pop() {
        for g in [&gx, &gy] {
            let p = mul(&v, g);
            if span.insert(&flat(&p)) {
                frontier.push(p);
            }
        }
    }
    Ok(span.rank())
}

/// Resultant of `g` and `g'` over Q(t), via the Sylvester matrix.
pub fn discriminant(g: &Poly<Rf>) -> Rf {
    let d = g.degree().unwrap_or(0);
    if d <= 1 {
        return Rf::one();
    }
    let dg = g.derivative();
    let size = 2 * d - 1;
    let mut m = Matrix::zeros(size, size);
    for i in 0..d - 1 {
        for j in 0..=d {
            m[(i, i + j)] = g.coeff(d - j);
        }
    }
    for i in 0..d {
        for j in 0..d {
            m[(d - 1 + i, i + j)] = dg.coeff(d - 1 - j);
        }
    }
    m.det()
}

/// Fraction-free determinant of a polynomial matrix.
fn det_bareiss(mut a: Vec<Vec<Poly<Rational>>>) -> Poly<Rational> {
    let n = a.len();
    let mut sign = false;
    let mut prev = Poly::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Poly::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = v.exact_div(&prev);
            }
            a[i][k] = Poly::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

fn strip_t(p: &Poly<Rational>) -> Poly<Rational> {
    match p.low_degree() {
        Some(k) => p.shift_down(k).monic(),
        None => Poly::zero(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FlatnessCertificate {
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub s_max: Rational,
    pub halvings: u32,
    #[serde(serialize_with = "crate::report::ser_poly")]
    pub denominator_master: Poly<Rational>,
    #[serde(serialize_with = "crate::report::ser_poly")]
    pub semisimple_master: Poly<Rational>,
    pub root_counts: [usize; 2],
    pub generation_dim: usize,
}

/// Polynomials whose roots in `(0, s]` are the only places where the family can
/// acquire a pole, lose semisimplicity, or see a `g_i` with a repeated root.
pub fn master_polynomials(table: &DeformationTable, f: &HomomorphismSpec) -> Result<(Poly<Rational>, Poly<Rational>), EngineError> {
    let pt = to_polynomial_type(table);
    let n = table.n();
    let mut denominator = strip_t(&pt.h);
    for b in [f.image(Letter::X), f.image(Letter::Y)] {
        for c in f.ambient().flatten(b) {
            let d = strip_t(c.denominator());
            denominator = (&denominator * &d).exact_div(&denominator.gcd(&d));
        }
    }
    // h^2 T = sum_l sigma(l, i, j) tau'_l with tau'_l = sum_m sigma(m, l, m).
    let tau: Vec<Poly<Rational>> =
        (0..n).map(|l| (0..n).fold(Poly::zero(), |acc, m| &acc + pt.sigma(m, l, m))).collect();
    let scaled: Vec<Vec<Poly<Rational>>> = (0..n)
        .map(|i| (0..n).map(|j| (0..n).fold(Poly::zero(), |acc, l| &acc + &(pt.sigma(l, i, j) * &tau[l]))).collect())
        .collect();
    let det = det_bareiss(scaled);
    if det.is_zero() {
        return Err(EngineError::DegenerateTraceForm);
    }
    let det = Rf::new(det, pt.h.pow(2 * n as u32))?;
    let mut semisimple = strip_t(det.numerator());
    for b in f.ambient().blocks() {
        let disc = discriminant(b.min_poly());
        semisimple = &semisimple * &strip_t(disc.numerator());
    }
    Ok((denominator, semisimple))
}

pub fn flatness_certificate(table: &DeformationTable, f: &HomomorphismSpec, depth: u32) -> Result<FlatnessCertificate, EngineError> {
    let (denominator_master, semisimple_master) = master_polynomials(table, f)?;
    let mut last = [0, 0];
    for m in 0..=depth {
        let s = inverse_power_of_two(m);
        let counts = [roots_in_half_open(&denominator_master, &s)?, roots_in_half_open(&semisimple_master, &s)?];
        if counts == [0, 0] {
            specialize_family(table, &s)?;
            let generation_dim = generation_dimension_at(f, &s)?;
            if generation_dim != table.n() {
                return Err(EngineError::GenerationDeficient { at: s, dim: generation_dim, expected: table.n() });
            }
            return Ok(FlatnessCertificate {
                s_max: s,
                halvings: m,
                denominator_master,
                semisimple_master,
                root_counts: counts,
                generation_dim,
            });
        }
        last = counts;
    }
    Err(EngineError::SearchExhausted { depth, denominator_roots: last[0], semisimple_roots: last[1] })
}
