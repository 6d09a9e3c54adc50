//! Exact scalar, matrix, polynomial and lattice arithmetic.

pub mod charpoly;
pub mod lattice;
pub mod linalg;
pub mod matrix;
pub mod poly;
pub mod scalar;

pub use charpoly::{charpoly, UniPoly};
pub use lattice::{hermite_normal_form, integer_kernel, IntegerLattice, DEFAULT_SPECTRUM_BOUND};
pub use linalg::{determinant, inverse, kernel_basis, rank, rref, solve_linear, LinearSolution};
pub use matrix::{dot, Matrix, RationalMatrix};
pub use poly::Poly;
pub use scalar::{format_rational, frac, parse_rational, rat, serde_rational, Rational, Scalar};
