//! Exact arithmetic: rationals, polynomials in `x, h, z`, quotients of
//! polynomials, exponential-polynomials, a small expression parser and
//! rational linear algebra.

pub mod exppoly;
pub mod gcd;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod ratfunc;
pub mod rational;

pub use exppoly::{ExpPoly, Rate};
pub use linalg::Matrix;
pub use parse::{parse_expr, ParseError, ParseErrorKind};
pub use poly::{Monomial, Poly, Var};
pub use ratfunc::RatFunc;
pub use rational::Rational;
