//! Exact tools for the polynomial moment problem with a Chebyshev polynomial.
//!
//! For `P = T_n` and endpoints `a != b` with `T_n(a) = T_n(b)`, the space of
//! polynomials `q` with `∫_a^b T_n(z)^i q(z) dz = 0` for every `i >= 0` is
//! spanned by the derivatives `T_m'` for which `T_d(a) = T_d(b)`, where
//! `d = gcd(n, m)`. This crate decides membership in that space with a
//! certificate, checks it against an exact moment oracle, builds the
//! two-term representation `∫q = A(T_d1) + B(T_d2)`, and carries the
//! cyclotomic and monodromy machinery that the decision relies on.

pub mod cli;
pub mod cyclotomic;
pub mod error;
pub mod moment_space;
pub mod moments;
pub mod monodromy;
pub mod numeric;
pub mod points;
pub mod poly_core;
pub mod representation;

pub use error::{Error, Result};
pub use poly_core::{BigRational, ChebExpansion, RatPoly};
