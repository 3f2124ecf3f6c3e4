//! Exact rational polynomials, Chebyshev polynomials and Chebyshev expansions.
//!
//! Coefficients are rationals rather than complex numbers. Membership in the
//! moment space is linear and is decided term by term in the Chebyshev basis,
//! so a problem with Gaussian-rational coefficients splits into its real and
//! imaginary rational parts, each handled here.

mod chebyshev;
mod parse;
mod rat_poly;

pub use chebyshev::{cheb, cheb_table, from_cheb, joukowski_identity_check, to_cheb, ChebExpansion};
pub use num_rational::BigRational;
pub use parse::{parse_poly, parse_rational};
pub use rat_poly::{antiderivative, compose, derivative, RatPoly};
