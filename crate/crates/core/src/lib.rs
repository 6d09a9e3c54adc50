pub mod abelian;
pub mod algebra;
pub mod classify;
pub mod error;
pub mod exact;
pub mod geometry;
pub mod isospectral;

pub use algebra::{ElementVector, MetricTwoStepAlgebra};
pub use exact::{Matrix, Poly, Rational, RationalMatrix};
