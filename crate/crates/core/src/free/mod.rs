//! The free algebra on `x` and `y`.

pub mod poly;
pub mod quotient;
pub mod word;

pub use poly::FreePolynomial;
pub use quotient::{normal_form, quotient_dimension, BoundedQuotient, Presentation, QuotientDimension, QuotientError};
pub use word::{shortlex_compare, shortlex_enumerate, weighted_degree, Letter, WeightedGrading, Word};
