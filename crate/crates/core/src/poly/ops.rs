use super::{normal_form, Coeff, Monomial, MonomialOrder, Polynomial, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    /// `f` times the constant polynomial `g`.
    ScalarMul,
}

pub fn polynomial_arithmetic(op: ArithOp, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    match op {
        ArithOp::Add => f.try_add(g),
        ArithOp::Sub => f.try_sub(g),
        ArithOp::Mul => f.try_mul(g),
        ArithOp::ScalarMul => {
            if !f.ring().same_as(g.ring()) {
                return Err(Error::RingMismatch);
            }
            if !g.is_constant() {
                return Err(Error::Contract("scalar factor is not a constant".into()));
            }
            Ok(f.scale(&g.constant_coeff()))
        }
    }
}

/// Leading term of `f` under an arbitrary order on the ring's variables.
pub fn leading_term(order: &MonomialOrder, f: &Polynomial) -> Result<(Coeff, Monomial)> {
    order.validate(f.ring().nvars())?;
    if order == f.ring().order() {
        let (m, c) = f.leading_term().ok_or(Error::ZeroPolynomial)?;
        return Ok((c.clone(), m.clone()));
    }
    let (m, c) = f
        .terms()
        .iter()
        .max_by(|a, b| order.compare(&a.0, &b.0))
        .ok_or(Error::ZeroPolynomial)?;
    Ok((c.clone(), m.clone()))
}

/// Normal form of `f` with respect to `divisors` under `order`. Zero divisors
/// are ignored. The result lives in the ring of `f`.
pub fn normal_form_in(
    order: &MonomialOrder,
    f: &Polynomial,
    divisors: &[Polynomial],
) -> Result<Polynomial> {
    let ring = f.ring().with_order(order.clone())?;
    let g: Vec<Polynomial> = divisors
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| {
            if !p.ring().same_vars(&ring) {
                Err(Error::RingMismatch)
            } else {
                p.reorder(&ring)
            }
        })
        .collect::<Result<_>>()?;
    let r = normal_form(&f.reorder(&ring)?, &g);
    r.reorder(f.ring())
}

#[derive(Clone, Debug)]
pub enum Homogenization {
    /// Homogenize into `target` using its variable `var`.
    Homogenize { target: Ring, var: String },
    /// Set `var` to 1 and move into `target`.
    Dehomogenize { target: Ring, var: String },
}

pub fn homogenize_dehomogenize(f: &Polynomial, mode: &Homogenization) -> Result<Polynomial> {
    match mode {
        Homogenization::Homogenize { target, var } => f.homogenize(target, var),
        Homogenization::Dehomogenize { target, var } => f.dehomogenize(var, target),
    }
}
