//! Exact sparse polynomials over the rationals.

mod division;
mod monomial;
mod ops;
mod order;
mod parse;
mod polynomial;
mod ring;

pub use division::{divide, normal_form};
pub use monomial::{ExponentVector, Monomial};
pub use ops::{
    homogenize_dehomogenize, leading_term, normal_form_in, polynomial_arithmetic, ArithOp,
    Homogenization,
};
pub use order::{compare_monomials, MonomialOrder};
pub use polynomial::{coeff_int, Coeff, Polynomial};
pub use ring::Ring;

pub(crate) use polynomial::{coeff_mod, inv_mod};

#[cfg(test)]
mod tests;
