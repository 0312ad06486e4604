//! Multivariate polynomial rings over exact fields.

mod monomial;
pub(crate) mod parse;
mod poly;
mod ring;

pub use monomial::{monomials_of_degree, Monomial, MonomialOrder, MAX_VARS};
pub use parse::parse_polynomial;
pub use poly::Polynomial;
pub use ring::Ring;
