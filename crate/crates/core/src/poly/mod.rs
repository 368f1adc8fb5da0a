//! Sparse multivariate polynomials over ℚ.

mod fischer;
mod monomial;
mod sparse;
pub mod text;

pub use fischer::{expand_decomposition, fischer_decompose};
pub use monomial::Monomial;
pub use sparse::SparsePoly;
pub use text::{format_poly, parse_expression, parse_poly};
