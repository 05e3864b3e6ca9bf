//! Flat deformations of finite-dimensional algebras from homomorphisms of the free
//! algebra on two generators into block algebras over `Q(t)`.

pub mod ambient;
pub mod analysis;
pub mod arith;
pub mod engine;
pub mod expr;
pub mod pipeline;
pub mod free;
pub mod problem;
pub mod report;
pub mod scenario;
