//! Deterministic computation of the low-degree irreducible factors of
//! multivariate polynomials over ℚ, with multiplicities.

pub mod cli;
pub mod divres;
pub mod engine;
pub mod error;
pub mod formula;
pub mod hensel;
pub mod hitting;
pub mod linalg;
pub mod poly;
pub mod rational;
pub mod uni;

pub use error::{Error, Result};
pub use poly::{Monomial, SparsePoly};
pub use rational::Rational;
