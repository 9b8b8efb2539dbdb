use std::fmt;
use std::sync::Arc;

use super::{Monomial, MonomialOrder, Polynomial};
use crate::error::{Error, Result};

#[derive(PartialEq, Eq, Hash, Debug)]
struct RingData {
    vars: Vec<String>,
    order: MonomialOrder,
}

/// A polynomial ring over the rationals: an ordered list of variable names
/// plus the default monomial order used to keep terms sorted.
#[derive(Clone)]
pub struct Ring(Arc<RingData>);

impl Ring {
    pub fn new<S: AsRef<str>>(vars: &[S], order: MonomialOrder) -> Result<Ring> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        order.validate(vars.len())?;
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::InvalidParameters(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Ring(Arc::new(RingData { vars, order })))
    }

    /// Degrevlex with the variables in the given (decreasing) order.
    pub fn degrevlex<S: AsRef<str>>(vars: &[S]) -> Ring {
        Ring::new(vars, MonomialOrder::degrevlex(vars.len())).expect("identity order is valid")
    }

    /// Same variables, different default order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Ring> {
        if &order == self.order() {
            return Ok(self.clone());
        }
        Ring::new(&self.0.vars, order)
    }

    pub fn vars(&self) -> &[String] {
        &self.0.vars
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.0.order
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.0
            .vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// The variable `name` as a polynomial.
    pub fn var(&self, name: &str) -> Result<Polynomial> {
        let i = self.var_index(name)?;
        Ok(Polynomial::from_monomial(
            self,
            Monomial::var_power(self.nvars(), i, 1),
        ))
    }

    /// Builds `x^a` from `(name, exponent)` pairs.
    pub fn monomial(&self, powers: &[(&str, u32)]) -> Result<Monomial> {
        let mut m = Monomial::one(self.nvars());
        for (name, e) in powers {
            let i = self.var_index(name)?;
            let cur = m.exponent(i);
            m.set_exponent(i, cur.checked_add(*e).expect("exponent overflow"));
        }
        Ok(m)
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        super::parse::parse_polynomial(self, text)
    }

    pub fn same_as(&self, other: &Ring) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }

    /// Same variable list (orders may differ).
    pub fn same_vars(&self, other: &Ring) -> bool {
        self.0.vars == other.0.vars
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({:?}, {:?})", self.0.vars, self.0.order)
    }
}
