//! Spectral data of Higgs bundles for the classical complex groups and
//! their real forms, computed exactly over the rationals.

pub mod correspondence;
pub mod curves;
pub mod divisors;
pub mod error;
pub mod invariants;
pub mod lie;
pub mod real_forms;
pub mod sampling;

pub use error::{CoreError, Result};
