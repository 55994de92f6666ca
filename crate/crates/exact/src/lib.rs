//! Exact arithmetic over the rationals: polynomials in `w`, polynomials in
//! `eta` over `Q[w]`, matrices over both, and the canonical forms
//! (Hermite bases, Pfaffians, characteristic polynomials, discriminants)
//! the spectral-data code is built on.
//!
//! No floating point is used anywhere; every predicate is a decision
//! procedure.

pub mod bipoly;
pub mod charpoly;
pub mod error;
pub mod factor;
pub mod hermite;
pub mod json;
pub mod matrix;
pub mod pfaffian;
pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod ring;

pub use bipoly::{BiPoly, SpectralPolynomial};
pub use charpoly::{char_poly, discriminant, eta_adjugate, resultant, squarefree};
pub use error::{ExactError, Result};
pub use hermite::hermite_basis;
pub use matrix::{BiMat, Matrix, PolyMat, RatMat};
pub use pfaffian::pfaffian;
pub use poly::UniPoly;
pub use ratfunc::RatFunc;
pub use rational::Rational;
pub use ring::{Field, Ring};
