//! Problem files: a JSON document whose polynomial entries are expression strings.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ambient::{AmbientAlgebra, AmbientElement, BlockAlgebra, BlockSpec};
use crate::analysis::FinAlgebra;
use crate::arith::field::Rational;
use crate::arith::poly::Poly;
use crate::arith::ratfunc::RationalFunction;
use crate::engine::{EngineError, HomomorphismSpec};
use crate::expr::{self, Expr, ParseError};
use crate::free::WeightedGrading;

#[derive(Debug, Error)]
pub enum ProblemError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{field}: {source}")]
    Syntax { field: String, source: ParseError },
    #[error("invalid problem:\n  {}", .0.join("\n  "))]
    Invalid(Vec<String>),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgebraDoc {
    Matrix(usize),
    Table(TableDoc),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDoc {
    pub dim: usize,
    /// `products[k][m]` lists the coordinates of `e_k e_m`.
    pub products: Vec<Vec<Vec<String>>>,
    pub identity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LiteralDoc {
    Matrix(Vec<Vec<String>>),
    Vector(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDoc {
    pub algebra: AlgebraDoc,
    pub min_poly: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default = "default_budget")]
    pub word_budget: usize,
    #[serde(default = "default_bound")]
    pub degree_bound: u32,
    #[serde(default)]
    pub expected_dim: Option<usize>,
    #[serde(default = "default_weights")]
    pub weights: [u32; 2],
    #[serde(default = "default_depth")]
    pub s_search_depth: u32,
}

fn default_budget() -> usize {
    20_000
}
fn default_bound() -> u32 {
    40
}
fn default_weights() -> [u32; 2] {
    [1, 10]
}
fn default_depth() -> u32 {
    20
}

impl Default for Options {
    fn default() -> Self {
        Options {
            word_budget: default_budget(),
            degree_bound: default_bound(),
            expected_dim: None,
            weights: default_weights(),
            s_search_depth: default_depth(),
        }
    }
}

impl Options {
    pub fn grading(&self) -> Option<WeightedGrading> {
        WeightedGrading::new(self.weights[0], self.weights[1])
    }
}

/// Raw document as stored on disk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemDoc {
    pub method: u8,
    pub blocks: Vec<BlockDoc>,
    pub f_x: Vec<LiteralDoc>,
    pub f_y: Vec<LiteralDoc>,
    #[serde(default)]
    pub options: Options,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraAst {
    Matrix(usize),
    Table { dim: usize, products: Vec<Vec<Vec<Expr>>>, identity: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiteralAst {
    Matrix(Vec<Vec<Expr>>),
    Vector(Vec<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockAst {
    pub algebra: AlgebraAst,
    pub min_poly: Expr,
}

/// A parsed problem: every string replaced by its expression tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemFile {
    pub method: u8,
    pub blocks: Vec<BlockAst>,
    pub f_x: Vec<LiteralAst>,
    pub f_y: Vec<LiteralAst>,
    pub options: Options,
}

fn parse_field(field: impl Fn() -> String, text: &str) -> Result<Expr, ProblemError> {
    expr::parse(text).map_err(|source| ProblemError::Syntax { field: field(), source })
}

fn parse_literal(name: &str, b: usize, lit: &LiteralDoc) -> Result<LiteralAst, ProblemError> {
    Ok(match lit {
        LiteralDoc::Matrix(rows) => LiteralAst::Matrix(
            rows.iter()
                .enumerate()
                .map(|(r, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(c, s)| parse_field(|| format!("{name}[{b}][{r}][{c}]"), s))
                        .collect::<Result<_, _>>()
                })
                .collect::<Result<_, _>>()?,
        ),
        LiteralDoc::Vector(v) => LiteralAst::Vector(
            v.iter().enumerate().map(|(i, s)| parse_field(|| format!("{name}[{b}][{i}]"), s)).collect::<Result<_, _>>()?,
        ),
    })
}

pub fn parse_problem(text: &str) -> Result<ProblemFile, ProblemError> {
    let doc: ProblemDoc = serde_json::from_str(text)?;
    ProblemFile::from_doc(&doc)
}

impl ProblemFile {
    pub fn from_doc(doc: &ProblemDoc) -> Result<Self, ProblemError> {
        let mut blocks = Vec::new();
        for (b, bd) in doc.blocks.iter().enumerate() {
            let algebra = match &bd.algebra {
                AlgebraDoc::Matrix(n) => AlgebraAst::Matrix(*n),
                AlgebraDoc::Table(t) => AlgebraAst::Table {
                    dim: t.dim,
                    identity: t.identity,
                    products: t
                        .products
                        .iter()
                        .enumerate()
                        .map(|(k, row)| {
                            row.iter()
                                .enumerate()
                                .map(|(m, v)| {
                                    v.iter()
                                        .enumerate()
                                        .map(|(i, s)| parse_field(|| format!("blocks[{b}].products[{k}][{m}][{i}]"), s))
                                        .collect::<Result<_, _>>()
                                })
                                .collect::<Result<_, _>>()
                        })
                        .collect::<Result<_, _>>()?,
                },
            };
            let min_poly = parse_field(|| format!("blocks[{b}].min_poly"), &bd.min_poly)?;
            blocks.push(BlockAst { algebra, min_poly });
        }
        let lits = |name: &str, v: &[LiteralDoc]| -> Result<Vec<LiteralAst>, ProblemError> {
            v.iter().enumerate().map(|(b, l)| parse_literal(name, b, l)).collect()
        };
        Ok(ProblemFile {
            method: doc.method,
            blocks,
            f_x: lits("f_x", &doc.f_x)?,
            f_y: lits("f_y", &doc.f_y)?,
            options: doc.options.clone(),
        })
    }

    /// Back to the on-disk form with canonically printed expressions.
    pub fn to_doc(&self) -> ProblemDoc {
        let s = |e: &Expr| e.to_string();
        let lit = |l: &LiteralAst| match l {
            LiteralAst::Matrix(rows) => LiteralDoc::Matrix(rows.iter().map(|r| r.iter().map(s).collect()).collect()),
            LiteralAst::Vector(v) => LiteralDoc::Vector(v.iter().map(s).collect()),
        };
        ProblemDoc {
            method: self.method,
            blocks: self
                .blocks
                .iter()
                .map(|b| BlockDoc {
                    algebra: match &b.algebra {
                        AlgebraAst::Matrix(n) => AlgebraDoc::Matrix(*n),
                        AlgebraAst::Table { dim, products, identity } => AlgebraDoc::Table(TableDoc {
                            dim: *dim,
                            identity: *identity,
                            products: products.iter().map(|r| r.iter().map(|v| v.iter().map(s).collect()).collect()).collect(),
                        }),
                    },
                    min_poly: s(&b.min_poly),
                })
                .collect(),
            f_x: self.f_x.iter().map(lit).collect(),
            f_y: self.f_y.iter().map(lit).collect(),
            options: self.options.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("serializable")
    }

    /// Builds the ambient algebra and homomorphism, itemizing every violation found.
    pub fn build(&self) -> Result<HomomorphismSpec, ProblemError> {
        let mut issues = Vec::new();
        if self.method != 2 && self.method != 3 {
            issues.push(format!("method must be 2 or 3, found {}", self.method));
        }
        if self.blocks.is_empty() {
            issues.push("at least one block is required".into());
        }
        if self.f_x.len() != self.blocks.len() || self.f_y.len() != self.blocks.len() {
            issues.push(format!(
                "f_x and f_y need one literal per block ({} blocks, {} and {} literals)",
                self.blocks.len(),
                self.f_x.len(),
                self.f_y.len()
            ));
        }
        if self.options.grading().is_none() {
            issues.push("weights must be positive".into());
        }
        let mut specs = Vec::new();
        for (b, block) in self.blocks.iter().enumerate() {
            match build_block(b, block) {
                Ok(spec) => {
                    if self.method == 2 && spec.degree() != 1 {
                        issues.push(format!("block {b}: method 2 needs a linear min_poly"));
                    }
                    specs.push(spec);
                }
                Err(e) => issues.push(e),
            }
        }
        if !issues.is_empty() {
            return Err(ProblemError::Invalid(issues));
        }
        let ambient = AmbientAlgebra::new(specs);
        let fx = build_element(&ambient, "f_x", &self.f_x);
        let fy = build_element(&ambient, "f_y", &self.f_y);
        match (fx, fy) {
            (Ok(fx), Ok(fy)) => Ok(HomomorphismSpec::new(ambient, fx, fy)?),
            (a, b) => Err(ProblemError::Invalid(a.err().into_iter().chain(b.err()).flatten().collect())),
        }
    }
}

fn build_block(b: usize, block: &BlockAst) -> Result<BlockSpec, String> {
    let algebra = match &block.algebra {
        AlgebraAst::Matrix(0) => return Err(format!("block {b}: matrix size must be positive")),
        AlgebraAst::Matrix(n) => BlockAlgebra::Matrix(*n),
        AlgebraAst::Table { dim, products, identity } => {
            let shape_ok = *dim > 0
                && products.len() == *dim
                && products.iter().all(|r| r.len() == *dim && r.iter().all(|v| v.len() == *dim))
                && identity < dim;
            if !shape_ok {
                return Err(format!("block {b}: table must be {dim} x {dim} x {dim} with identity index below {dim}"));
            }
            let constant = |e: &Expr| -> Result<Rational, String> {
                e.to_rational_function()
                    .ok()
                    .and_then(|r| r.as_constant())
                    .ok_or_else(|| format!("block {b}: table entry {e} is not a rational constant"))
            };
            let mut prods = Vec::new();
            for row in products {
                let mut r = Vec::new();
                for v in row {
                    r.push(v.iter().map(constant).collect::<Result<Vec<_>, _>>()?);
                }
                prods.push(r);
            }
            let mut id = vec![Rational::from_integer(0.into()); *dim];
            id[*identity] = Rational::from_integer(1.into());
            BlockAlgebra::Table(FinAlgebra::new(prods, id).map_err(|e| format!("block {b}: {e}"))?)
        }
    };
    let g = block.min_poly.to_u_poly().map_err(|e| format!("block {b}: min_poly: {e}"))?;
    BlockSpec::new(algebra, g, b).map_err(|e| e.to_string())
}

fn build_element(ambient: &AmbientAlgebra, name: &str, lits: &[LiteralAst]) -> Result<AmbientElement, Vec<String>> {
    let mut issues = Vec::new();
    let mut blocks = Vec::new();
    for (b, (lit, spec)) in lits.iter().zip(ambient.blocks()).enumerate() {
        let entries: Vec<&Expr> = match (lit, &spec.algebra) {
            (LiteralAst::Matrix(rows), BlockAlgebra::Matrix(n)) => {
                if rows.len() != *n || rows.iter().any(|r| r.len() != *n) {
                    issues.push(format!("{name}[{b}]: expected a {n} x {n} matrix"));
                    continue;
                }
                rows.iter().flatten().collect()
            }
            (LiteralAst::Vector(v), BlockAlgebra::Table(t)) if v.len() == t.dim() => v.iter().collect(),
            (LiteralAst::Vector(v), BlockAlgebra::Matrix(1)) if v.len() == 1 => v.iter().collect(),
            _ => {
                issues.push(format!("{name}[{b}]: literal does not match the block algebra"));
                continue;
            }
        };
        let mut polys: Vec<Poly<RationalFunction>> = Vec::new();
        for e in entries {
            match e.to_u_poly() {
                Ok(p) => polys.push(p),
                Err(err) => issues.push(format!("{name}[{b}]: {err}")),
            }
        }
        blocks.push(polys);
    }
    if !issues.is_empty() {
        return Err(issues);
    }
    Ok(ambient.reduce(AmbientElement { blocks }))
}
