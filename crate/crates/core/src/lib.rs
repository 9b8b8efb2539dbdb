//! Exact computer algebra for monomial curves: polynomials, Gröbner bases,
//! monomial ideals, toric ideals of curves, the Backelin, Bresinsky and
//! Arslan families, and free resolution checks.

pub mod cli;
pub mod error;
pub mod families;
pub mod groebner;
pub mod monomial_ideal;
pub mod poly;
pub mod resolution;
pub mod toric;

pub use error::{Error, Result};
