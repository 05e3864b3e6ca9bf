//! Table exports, run reports and their serialization.

use std::fmt::{self, Write as _};

use num_traits::Zero;
use serde::{Deserialize, Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::analysis::StructureReport;
use crate::arith::field::{format_rational, parse_rational, Rational};
use crate::arith::poly::Poly;
use crate::arith::ratfunc::RationalFunction;
use crate::engine::{DeformationTable, FlatnessCertificate, PolyTypeTable, Verdict};

pub fn ser_rational<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(q))
}

/// Coefficient array, lowest degree first.
pub fn ser_poly<S: Serializer>(p: &Poly<Rational>, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(p.coeffs().iter().map(format_rational))
}

fn coeffs(p: &Poly<Rational>) -> Vec<String> {
    p.coeffs().iter().map(format_rational).collect()
}

/// One nonzero coefficient, indices starting at 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub i: usize,
    pub k: usize,
    pub m: usize,
    pub num: Vec<String>,
    pub den: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableExport {
    pub n: usize,
    pub entries: Vec<TableEntry>,
}

impl TableExport {
    pub fn from_table(t: &DeformationTable) -> Self {
        let n = t.n();
        let mut entries = Vec::new();
        for k in 0..n {
            for m in 0..n {
                for i in 0..n {
                    let c = t.c(i, k, m);
                    if !c.is_zero() {
                        entries.push(TableEntry {
                            i: i + 1,
                            k: k + 1,
                            m: m + 1,
                            num: coeffs(c.numerator()),
                            den: coeffs(c.denominator()),
                        });
                    }
                }
            }
        }
        TableExport { n, entries }
    }

    /// Polynomial-type numerators over the common denominator `h`, stored as `den`.
    pub fn from_poly_type(p: &PolyTypeTable) -> Self {
        let n = p.n();
        let mut entries = Vec::new();
        for k in 0..n {
            for m in 0..n {
                for i in 0..n {
                    let s = p.sigma(i, k, m);
                    if !s.is_zero() {
                        entries.push(TableEntry { i: i + 1, k: k + 1, m: m + 1, num: coeffs(s), den: coeffs(&p.h) });
                    }
                }
            }
        }
        TableExport { n, entries }
    }

    pub fn to_table(&self) -> Result<DeformationTable, String> {
        let n = self.n;
        let mut products = vec![vec![vec![RationalFunction::zero(); n]; n]; n];
        let poly = |v: &[String]| -> Result<Poly<Rational>, String> {
            v.iter().map(|s| parse_rational(s).ok_or_else(|| format!("bad rational {s:?}"))).collect::<Result<_, _>>().map(Poly::new)
        };
        for e in &self.entries {
            if !(1..=n).contains(&e.i) || !(1..=n).contains(&e.k) || !(1..=n).contains(&e.m) {
                return Err(format!("index out of range in entry ({}, {}, {})", e.i, e.k, e.m));
            }
            let c = RationalFunction::new(poly(&e.num)?, poly(&e.den)?).map_err(|err| err.to_string())?;
            products[e.k - 1][e.m - 1][e.i - 1] = c;
        }
        DeformationTable::new(products).map_err(|e| e.to_string())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn digest(&self) -> String {
        let hash = Sha256::digest(self.to_json().as_bytes());
        hash.iter().fold(String::new(), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
    }
}

/// `i,k,m,zeta` rows for the nonzero constant terms, indices starting at 1.
pub fn zeta_csv(t: &DeformationTable) -> String {
    let mut out = String::from("i,k,m,zeta\n");
    let n = t.n();
    for k in 0..n {
        for m in 0..n {
            for i in 0..n {
                let z = t.zeta(i, k, m);
                if !z.is_zero() {
                    let _ = writeln!(out, "{},{},{},{}", i + 1, k + 1, m + 1, format_rational(&z));
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct BasisSummary {
    pub rank: usize,
    pub q: Vec<String>,
    pub orders: Vec<i64>,
    pub gamma: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PresentationSummary {
    pub relations: Vec<String>,
    pub in_jprime: Vec<bool>,
    pub quotient_dim: Option<usize>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PolyTypeSummary {
    pub h: Vec<String>,
    pub h_at_zero_is_one: bool,
    pub sigma_at_zero_is_zeta: bool,
    pub digest: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpecializationSummary {
    #[serde(serialize_with = "ser_rational")]
    pub at: Rational,
    pub report: StructureReport,
    pub generation_dim: Option<usize>,
}

/// Everything a run produced; absent stages were not requested.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct RunReport {
    pub scenario: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<BasisSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table_digest: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub associative: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fiber: Option<StructureReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub poly_type: Option<PolyTypeSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub presentation: Option<PresentationSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flatness: Option<FlatnessCertificate>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub specializations: Vec<SpecializationSummary>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "scenario: {}", self.scenario)?;
        if let Some(b) = &self.basis {
            writeln!(f, "image basis: rank {}, gamma {}", b.rank, b.gamma)?;
            for (idx, (q, k)) in b.q.iter().zip(&b.orders).enumerate() {
                writeln!(f, "  q_{} = {q}  (order {k})", idx + 1)?;
            }
        }
        if let Some(d) = &self.table_digest {
            writeln!(f, "table sha256: {d}")?;
        }
        if let Some(a) = self.associative {
            writeln!(f, "formal associativity: {}", if a { "holds" } else { "FAILS" })?;
        }
        if let Some(r) = &self.fiber {
            writeln!(f, "special fiber: {r}")?;
        }
        if let Some(p) = &self.poly_type {
            writeln!(
                f,
                "polynomial type: h = [{}], h(0) = 1: {}, sigma(0) = zeta: {}",
                p.h.join(", "),
                p.h_at_zero_is_one,
                p.sigma_at_zero_is_zeta
            )?;
        }
        if let Some(p) = &self.presentation {
            writeln!(f, "presentation:")?;
            for (r, ok) in p.relations.iter().zip(&p.in_jprime) {
                writeln!(f, "  {r}: {}", if *ok { "in J'" } else { "NOT in J'" })?;
            }
            match p.quotient_dim {
                Some(d) => writeln!(f, "  quotient dimension: {d} (exact)")?,
                None => writeln!(f, "  quotient dimension: not certified")?,
            }
            writeln!(f, "  verdict: {}", verdict_text(&p.verdict))?;
        }
        if let Some(c) = &self.flatness {
            writeln!(f, "flatness: s_max = {} (2^-{})", format_rational(&c.s_max), c.halvings)?;
            writeln!(
                f,
                "  master degrees: denominator {}, semisimplicity {}; roots in (0, s_max]: {} and {}",
                c.denominator_master.degree().unwrap_or(0),
                c.semisimple_master.degree().unwrap_or(0),
                c.root_counts[0],
                c.root_counts[1]
            )?;
            writeln!(f, "  generated dimension at s_max: {}", c.generation_dim)?;
        }
        for s in &self.specializations {
            write!(f, "at t = {}: {}", format_rational(&s.at), s.report)?;
            if let Some(g) = s.generation_dim {
                write!(f, ", generated dimension {g}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::Isomorphic { dim } => format!("isomorphic (dimension {dim})"),
        Verdict::Inconclusive => "inconclusive".into(),
        Verdict::RelationsOutside { indices } => {
            let list: Vec<String> = indices.iter().map(|i| (i + 1).to_string()).collect();
            format!("relations {} are not in J'", list.join(", "))
        }
        Verdict::DimensionMismatch { dim, expected } => format!("quotient has dimension {dim}, fiber has {expected}"),
    }
}
