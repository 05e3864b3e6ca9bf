//! Staged runs over a problem file, collected into a [`RunReport`].

use num_traits::Zero;
use thiserror::Error;

use crate::analysis::{structure_report, AnalysisError, FinAlgebra, StructureReport};
use crate::arith::field::{format_rational, Rational};
use crate::engine::{
    self, check_associativity_formal, compute_image_basis, flatness_certificate, generation_dimension_at, special_fiber,
    specialize_family, structure_constants, to_polynomial_type, DeformationTable, EngineError, FlatnessCertificate,
    HomomorphismSpec, ImageBasis,
};
use crate::free::{FreePolynomial, Presentation, QuotientError, WeightedGrading};
use crate::problem::{Options, ProblemError, ProblemFile};
use crate::report::{BasisSummary, PolyTypeSummary, PresentationSummary, RunReport, SpecializationSummary, TableExport};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
}

impl PipelineError {
    /// Budget and search exhaustion are resource limits rather than wrong answers.
    pub fn is_exhaustion(&self) -> bool {
        matches!(
            self,
            PipelineError::Engine(EngineError::BudgetExhausted { .. } | EngineError::SearchExhausted { .. })
                | PipelineError::Problem(ProblemError::Engine(
                    EngineError::BudgetExhausted { .. } | EngineError::SearchExhausted { .. }
                ))
        )
    }

    pub fn is_input(&self) -> bool {
        matches!(
            self,
            PipelineError::Problem(ProblemError::Json(_) | ProblemError::Syntax { .. } | ProblemError::Invalid(_))
                | PipelineError::Engine(EngineError::Quotient(
                    QuotientError::BoundTooSmall { .. } | QuotientError::ZeroRelation(_)
                ))
        )
    }
}

pub struct Pipeline {
    pub name: String,
    pub options: Options,
    pub f: HomomorphismSpec,
    pub basis: ImageBasis,
    pub table: DeformationTable,
}

impl Pipeline {
    pub fn new(name: impl Into<String>, problem: &ProblemFile, word_budget: Option<usize>) -> Result<Self, PipelineError> {
        let f = problem.build()?;
        let options = problem.options.clone();
        let budget = word_budget.unwrap_or(options.word_budget);
        let basis = compute_image_basis(&f, options.expected_dim, budget)?;
        let table = structure_constants(&f, &basis)?;
        Ok(Pipeline { name: name.into(), options, f, basis, table })
    }

    pub fn basis_summary(&self) -> BasisSummary {
        BasisSummary {
            rank: self.basis.rank(),
            q: self.basis.q().iter().map(|q| q.to_string()).collect(),
            orders: self.basis.orders(),
            gamma: self.f.gamma(),
        }
    }

    pub fn fiber(&self) -> FinAlgebra {
        special_fiber(&self.table)
    }

    pub fn grading(&self) -> WeightedGrading {
        self.options.grading().expect("validated when the problem was built")
    }

    pub fn presentation(
        &self,
        relations: &[FreePolynomial<Rational>],
        grading: WeightedGrading,
        bound: u32,
    ) -> Result<PresentationSummary, PipelineError> {
        let pres = Presentation::new(relations.to_vec()).map_err(EngineError::from)?;
        let check = engine::verify_presentation(&self.f, &self.basis, &pres, grading, bound)?;
        Ok(PresentationSummary {
            relations: relations.iter().map(|r| r.to_string()).collect(),
            in_jprime: check.memberships,
            quotient_dim: check.quotient.exact(),
            verdict: check.verdict,
        })
    }

    pub fn flatness(&self, depth: Option<u32>) -> Result<FlatnessCertificate, PipelineError> {
        Ok(flatness_certificate(&self.table, &self.f, depth.unwrap_or(self.options.s_search_depth))?)
    }

    pub fn specialize(&self, s: &Rational) -> Result<SpecializationSummary, PipelineError> {
        let family = specialize_family(&self.table, s)?;
        Ok(SpecializationSummary {
            at: s.clone(),
            report: structure_report(&family)?,
            generation_dim: Some(generation_dimension_at(&self.f, s)?),
        })
    }

    /// Report carrying the basis, table digest, associativity, fiber and polynomial type.
    pub fn table_report(&self) -> Result<RunReport, PipelineError> {
        let mut r = table_report(&self.name, &self.table)?;
        r.basis = Some(self.basis_summary());
        Ok(r)
    }

    /// All stages; the family is inspected at `s_max`, `s_max/2` and `s_max/4`.
    pub fn full_report(&self, relations: Option<&[FreePolynomial<Rational>]>) -> Result<RunReport, PipelineError> {
        let mut r = self.table_report()?;
        if let Some(rels) = relations {
            r.presentation = Some(self.presentation(rels, self.grading(), self.options.degree_bound)?);
        }
        let cert = self.flatness(None)?;
        let mut s = cert.s_max.clone();
        for _ in 0..3 {
            r.specializations.push(self.specialize(&s)?);
            s /= Rational::from_integer(2.into());
        }
        r.flatness = Some(cert);
        Ok(r)
    }
}

/// The table-only stages, usable on imported tables.
pub fn table_report(name: &str, table: &DeformationTable) -> Result<RunReport, PipelineError> {
    let export = TableExport::from_table(table);
    let associative = check_associativity_formal(table);
    let fiber = special_fiber(table);
    // A non-associative fiber has no meaningful radical.
    let fiber_report: Option<StructureReport> = if associative { Some(structure_report(&fiber)?) } else { None };
    Ok(RunReport {
        scenario: name.to_string(),
        table_digest: Some(export.digest()),
        associative: Some(associative),
        fiber: fiber_report,
        poly_type: Some(poly_type_summary(table)),
        ..RunReport::default()
    })
}

pub fn poly_type_summary(table: &DeformationTable) -> PolyTypeSummary {
    let pt = to_polynomial_type(table);
    let n = table.n();
    let at_zero = |p: &crate::arith::poly::Poly<Rational>| p.coeffs().first().cloned().unwrap_or_else(Rational::zero);
    let mut sigma_ok = true;
    for i in 0..n {
        for k in 0..n {
            for m in 0..n {
                sigma_ok &= at_zero(pt.sigma(i, k, m)) == table.zeta(i, k, m);
            }
        }
    }
    PolyTypeSummary {
        h: pt.h.coeffs().iter().map(format_rational).collect(),
        h_at_zero_is_one: at_zero(&pt.h) == Rational::from_integer(1.into()),
        sigma_at_zero_is_zeta: sigma_ok,
        digest: TableExport::from_poly_type(&pt).digest(),
    }
}
