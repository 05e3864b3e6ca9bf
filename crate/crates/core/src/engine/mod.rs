//! The deformation pipeline: image basis, structure constants, fibers and certificates.

pub mod basis;
pub mod certify;
pub mod hom;
pub mod table;

use thiserror::Error;

use crate::ambient::AmbientError;
use crate::arith::field::Rational;
use crate::arith::ArithError;
use crate::free::QuotientError;

pub use basis::{closure_certificate, compute_image_basis, BasisEntry, Expression, ImageBasis};
pub use certify::{
    discriminant, evaluate_in_fiber, fiber_coordinates, flatness_certificate, generation_dimension_at, master_polynomials,
    relation_in_jprime, verify_presentation, FlatnessCertificate, PresentationCheck, Verdict,
};
pub use hom::HomomorphismSpec;
pub use table::{
    associativity_witness, check_associativity_formal, special_fiber, specialize_family, structure_constants,
    to_polynomial_type, DeformationTable, PolyTypeTable,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error("image of {generator} has a coordinate that is not a Laurent polynomial in t")]
    NotLaurent { generator: char },
    #[error("word budget exhausted at rank {rank} (pivot orders {orders:?})")]
    BudgetExhausted { rank: usize, orders: Vec<i64> },
    #[error("image rank exceeds the expected {expected} (found {found})")]
    RankExceeded { expected: usize, found: usize },
    #[error("image rank is {found}, expected {expected}")]
    RankMismatch { expected: usize, found: usize },
    #[error("the identity would leave the first basis position (negative pivot orders)")]
    IdentityDisplaced,
    #[error("vector is not in the span of the basis images")]
    NotInSpan,
    #[error("vector is in the span but not in the image module")]
    NotInModule,
    #[error("structure coefficient c({i},{k},{m}) has a pole at 0")]
    PoleInTable { i: usize, k: usize, m: usize },
    #[error("malformed table")]
    TableShape,
    #[error("trace form of the family is degenerate")]
    DegenerateTraceForm,
    #[error("generated algebra at t = {at} has dimension {dim}, expected {expected}")]
    GenerationDeficient { at: Rational, dim: usize, expected: usize },
    #[error("no certified interval after {depth} halvings (roots: denominator {denominator_roots}, semisimplicity {semisimple_roots})")]
    SearchExhausted { depth: u32, denominator_roots: usize, semisimple_roots: usize },
    #[error("internal error: {0}")]
    Internal(&'static str),
    #[error(transparent)]
    Ambient(#[from] AmbientError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
}
