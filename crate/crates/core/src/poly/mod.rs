//! Sparse polynomials over the rationals, monomial orderings, ideals and the
//! input-language parser.

mod ideal;
mod monomial;
mod order;
mod parse;
mod polynomial;
mod ring;

pub use ideal::Ideal;
pub use monomial::Monomial;
pub use order::MonomialOrder;
pub use parse::{ideal_in, parse_input, parse_polynomial, parse_rational, ParsedInput};
pub use polynomial::{Filtration, Polynomial};
pub use ring::{Locus, RingContext};

/// Exact rational coefficients.
pub type Coeff = num_rational::BigRational;
