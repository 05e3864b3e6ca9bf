//! Built-in problems: the eight-dimensional contraction algebra and a 2 x 2 toy.

use std::fmt;
use std::str::FromStr;

use num_traits::One;
use thiserror::Error;

use crate::arith::field::{rat, Rational};
use crate::arith::poly::Poly;
use crate::arith::ratfunc::RationalFunction;
use crate::expr;
use crate::free::FreePolynomial;
use crate::problem::{AlgebraDoc, BlockDoc, LiteralDoc, Options, ProblemDoc, ProblemError, ProblemFile};

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("parameters violate {0}")]
    Constraint(&'static str),
    #[error("g_1 is not squarefree over Q(t) for these parameters; try larger k or s1, s2")]
    NotSquarefree,
    #[error("u*h(u) is not (1/2) t^(k+i) modulo g_1")]
    Identity,
    #[error("cannot parse parameters: {0}")]
    Params(String),
    #[error(transparent)]
    Problem(#[from] ProblemError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct A8Params {
    pub i: u32,
    pub j: u32,
    pub k: u32,
    pub s1: u32,
    pub s2: u32,
}

impl Default for A8Params {
    fn default() -> Self {
        A8Params { i: 1, j: 2, k: 2, s1: 3, s2: 3 }
    }
}

/// How the scalar block of `f(x)` is scaled.
///
/// `Literal` takes `f(x) = t^s1 E_12 + t^i h(u)` with `s1 + s2 = 2i + j + k`. Its
/// special fiber satisfies `x^2 = 0` rather than `y^2 + x^3 + x^2 = 0`, so it is not
/// the contraction algebra once `i >= 1`. `Rescaled` drops the `t^i` factor, which
/// forces `s1 + s2 = i + j + k` and makes all four relations hold at `t = 0`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum A8Construction {
    #[default]
    Literal,
    Rescaled,
}

impl FromStr for A8Construction {
    type Err = ScenarioError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "literal" => Ok(A8Construction::Literal),
            "rescaled" => Ok(A8Construction::Rescaled),
            _ => Err(ScenarioError::Params(format!("unknown construction {s:?} (literal or rescaled)"))),
        }
    }
}

impl fmt::Display for A8Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            A8Construction::Literal => "literal",
            A8Construction::Rescaled => "rescaled",
        })
    }
}

impl A8Params {
    /// Default tuple for the rescaled construction; same `g_1` and `h` as the default.
    pub fn rescaled_default() -> Self {
        A8Params { i: 1, j: 2, k: 2, s1: 2, s2: 3 }
    }

    pub fn check(&self) -> Result<(), ScenarioError> {
        self.check_for(A8Construction::Literal)
    }

    pub fn check_for(&self, c: A8Construction) -> Result<(), ScenarioError> {
        let A8Params { i, j, k, s1, s2 } = *self;
        if [i, j, k, s1, s2].contains(&0) {
            return Err(ScenarioError::Constraint("positivity"));
        }
        match c {
            A8Construction::Literal if s1 + s2 != 2 * i + j + k => {
                return Err(ScenarioError::Constraint("s1 + s2 = 2i + j + k"));
            }
            A8Construction::Rescaled if s1 + s2 != i + j + k => {
                return Err(ScenarioError::Constraint("s1 + s2 = i + j + k"));
            }
            _ => {}
        }
        if j < i {
            return Err(ScenarioError::Constraint("j >= i"));
        }
        if 2 * j < k + i {
            return Err(ScenarioError::Constraint("2j >= k + i"));
        }
        if k + i <= j {
            return Err(ScenarioError::Constraint("k + i > j"));
        }
        if (k as i64) <= j as i64 - i as i64 {
            return Err(ScenarioError::Constraint("k > j - i"));
        }
        Ok(())
    }
}

impl FromStr for A8Params {
    type Err = ScenarioError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let v: Vec<u32> = s
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|e| ScenarioError::Params(format!("{p:?}: {e}"))))
            .collect::<Result<_, _>>()?;
        let [i, j, k, s1, s2] = v[..] else {
            return Err(ScenarioError::Params(format!("expected five integers, found {}", v.len())));
        };
        Ok(A8Params { i, j, k, s1, s2 })
    }
}

impl fmt::Display for A8Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{},{}", self.i, self.j, self.k, self.s1, self.s2)
    }
}

fn entries(rows: &[&[&str]]) -> LiteralDoc {
    LiteralDoc::Matrix(rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect())
}

/// `t^e*body`, or `body` alone when `e = 0`.
fn t_times(e: u32, body: &str) -> String {
    if e == 0 {
        body.to_string()
    } else {
        format!("{}*{body}", t_pow(e))
    }
}

fn t_pow(e: u32) -> String {
    match e {
        0 => "1".into(),
        1 => "t".into(),
        _ => format!("t^{e}"),
    }
}

/// `u^4 + a u^3 + a^2 u^2 + a^3 u + b` with `a = -(1/2) t^(k+i)`, `b = (1/4) t^(2(k+i-j))`.
pub fn a8_min_poly(p: &A8Params) -> String {
    let a = p.k + p.i;
    format!(
        "u^4 - 1/2*{}*u^3 + 1/4*{}*u^2 - 1/8*{}*u + 1/4*{}",
        t_pow(a),
        t_pow(2 * a),
        t_pow(3 * a),
        t_pow(2 * (a - p.j))
    )
}

/// `h(u) = -2 t^(2j-i-k) (u^3 + a u^2 + a^2 u + a^3)`.
fn a8_h(p: &A8Params) -> String {
    let a = p.k + p.i;
    let cubic = format!("(u^3 - 1/2*{}*u^2 + 1/4*{}*u - 1/8*{})", t_pow(a), t_pow(2 * a), t_pow(3 * a));
    format!("-2*{}", t_times(2 * p.j - p.i - p.k, &cubic))
}

pub fn build_a8(p: A8Params) -> Result<ProblemFile, ScenarioError> {
    build_a8_with(p, A8Construction::Literal)
}

pub fn build_a8_with(p: A8Params, c: A8Construction) -> Result<ProblemFile, ScenarioError> {
    p.check_for(c)?;
    let g = expr::parse(&a8_min_poly(&p)).expect("generated text parses").to_u_poly().expect("u, t only");
    if !g.is_squarefree() {
        return Err(ScenarioError::NotSquarefree);
    }
    // u*h(u) = (1/2) t^(k+i) mod g_1.
    let h_text = a8_h(&p);
    let h = expr::parse(&h_text).unwrap().to_u_poly().unwrap();
    let uh = (&Poly::monomial(RationalFunction::one(), 1) * &h).rem_monic(&g);
    if uh != Poly::constant(RationalFunction::monomial(rat(1, 2), (p.k + p.i) as i64)) {
        return Err(ScenarioError::Identity);
    }
    let fx1 = match c {
        A8Construction::Literal => t_times(p.i, &format!("({h_text})")),
        A8Construction::Rescaled => h_text,
    };
    let fy1 = format!("{}*u", t_pow(p.j));
    let (s1, s2) = (t_pow(p.s1), t_pow(p.s2));
    let doc = ProblemDoc {
        method: 3,
        blocks: vec![
            BlockDoc { algebra: AlgebraDoc::Matrix(1), min_poly: a8_min_poly(&p) },
            BlockDoc { algebra: AlgebraDoc::Matrix(2), min_poly: "u - 1".into() },
        ],
        f_x: vec![entries(&[&[&fx1]]), entries(&[&["0", &s1], &["0", "0"]])],
        f_y: vec![entries(&[&[&fy1]]), entries(&[&["0", "0"], &[&s2, "0"]])],
        options: Options { expected_dim: Some(8), ..Options::default() },
    };
    let problem = ProblemFile::from_doc(&doc)?;
    problem.build()?;
    Ok(problem)
}

pub fn build_m2_toy() -> ProblemFile {
    let doc = ProblemDoc {
        method: 2,
        blocks: vec![BlockDoc { algebra: AlgebraDoc::Matrix(2), min_poly: "u - 1".into() }],
        f_x: vec![entries(&[&["1", "0"], &["0", "0"]])],
        f_y: vec![entries(&[&["0", "1"], &["t", "0"]])],
        options: Options { expected_dim: Some(4), degree_bound: 8, weights: [1, 1], ..Options::default() },
    };
    ProblemFile::from_doc(&doc).expect("toy problem is well formed")
}

fn rels(texts: &[&str]) -> Vec<FreePolynomial<Rational>> {
    texts.iter().map(|t| expr::parse(t).unwrap().to_free().unwrap()).collect()
}

/// Reduced relations for the contraction algebra.
pub fn a8_groebner_relations() -> Vec<FreePolynomial<Rational>> {
    rels(&["x*y + y*x", "y^2 + x^3 + x^2", "x^3*y", "x^5"])
}

/// The original generating set of the defining ideal.
pub fn a8_original_relations() -> Vec<FreePolynomial<Rational>> {
    rels(&["y^3*x", "y^4 + y^2*x - x^2 - y^2", "x^3 + x^2 + y^2", "y*x^2 + y^3", "x*y + y*x"])
}

/// Enumerates parameter tuples with all entries at most `bound` that satisfy the constraints.
pub fn valid_a8_params(bound: u32) -> Vec<A8Params> {
    valid_a8_params_for(bound, A8Construction::Literal)
}

pub fn valid_a8_params_for(bound: u32, c: A8Construction) -> Vec<A8Params> {
    let mut out = Vec::new();
    for i in 1..=bound {
        for j in 1..=bound {
            for k in 1..=bound {
                for s1 in 1..=bound {
                    for s2 in 1..=bound {
                        let p = A8Params { i, j, k, s1, s2 };
                        if p.check_for(c).is_ok() {
                            out.push(p);
                        }
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_params_valid() {
        assert!(A8Params::default().check().is_ok());
        assert!(build_a8(A8Params::default()).is_ok());
        assert_eq!("1,2,2,3,3".parse::<A8Params>().unwrap(), A8Params::default());
    }

    #[test]
    fn constraint_violations() {
        for bad in ["1,2,2,3,4", "2,1,2,3,3", "1,3,1,4,4", "1,2,1,2,4", "1,1,3,3,3"] {
            let p: A8Params = bad.parse().unwrap();
            assert!(matches!(p.check(), Err(ScenarioError::Constraint(_))), "{bad}");
        }
        // Satisfies every constraint: 2+1+1 = 2+2, 1>=1, 2>=2>1, 1>0.
        assert!("1,1,1,2,2".parse::<A8Params>().unwrap().check().is_ok());
    }

    #[test]
    fn min_poly_text() {
        assert_eq!(a8_min_poly(&A8Params::default()), "u^4 - 1/2*t^3*u^3 + 1/4*t^6*u^2 - 1/8*t^9*u + 1/4*t^2");
    }

    #[test]
    fn toy_builds() {
        let f = build_m2_toy().build().unwrap();
        assert_eq!(f.ambient().n(), 4);
    }
}
