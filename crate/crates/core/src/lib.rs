//! Exact computer-algebra engine for 3-dimensional Lorentz metrics.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactalg`]: rationals, sparse polynomials in `(x, h, z)`, exponential
//!   polynomials, rational functions, an expression parser and fraction-free
//!   linear algebra.
//! * [`geometry`]: Christoffel symbols, Riemann and Ricci curvature, scalar
//!   invariants, constant-curvature detection and signature checks.
//! * [`killing`]: the Killing equation, its polynomial/exponential solver,
//!   brackets, evaluation rank, isotropy and the volume determinant.
//! * [`liealg`]: Lie algebras given by structure constants and the classifier
//!   for the low-dimensional algebras that occur for these metrics.
//! * [`cartan`]: the pointwise curvature representation on adapted null frames.
//! * [`families`]: the two-parameter family `g_{C,D}` and its classification.

#![allow(clippy::needless_range_loop)]

pub mod cartan;
pub mod exactalg;
pub mod families;
pub mod geometry;
pub mod killing;
pub mod liealg;

pub use exactalg::{ExpPoly, Monomial, Poly, Rate, RatFunc, Rational, Var};
pub use geometry::Metric;
pub use killing::VectorField;
pub use liealg::LieAlgebra;
