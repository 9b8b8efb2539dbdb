use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::Monomial;
use crate::error::{Error, Result};

/// A monomial order on exponent vectors.
///
/// Variable lists name variables by index into the ambient ring, greatest
/// variable first. `DegRevLex(vec![1, 2, 3, 4, 0])` is degrevlex with
/// `x1 > x2 > x3 > x4 > x0` on the ring `x0..x4`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    DegRevLex(Vec<usize>),
    /// Elimination order: degrevlex on `first`, ties broken by degrevlex on `second`.
    Block { first: Vec<usize>, second: Vec<usize> },
}

impl MonomialOrder {
    /// Degrevlex with `x_0 > x_1 > ... > x_{n-1}` in ring index order.
    pub fn degrevlex(nvars: usize) -> Self {
        MonomialOrder::DegRevLex((0..nvars).collect())
    }

    pub fn nvars(&self) -> usize {
        match self {
            MonomialOrder::DegRevLex(p) => p.len(),
            MonomialOrder::Block { first, second } => first.len() + second.len(),
        }
    }

    /// Checks that the variable lists form a permutation of `0..nvars`.
    pub fn validate(&self, nvars: usize) -> Result<()> {
        let mut seen = vec![false; nvars];
        let all: Vec<usize> = match self {
            MonomialOrder::DegRevLex(p) => p.clone(),
            MonomialOrder::Block { first, second } => {
                first.iter().chain(second.iter()).copied().collect()
            }
        };
        if all.len() != nvars {
            return Err(Error::InvalidOrder(format!(
                "order lists {} variables, ring has {}",
                all.len(),
                nvars
            )));
        }
        for v in all {
            if v >= nvars || seen[v] {
                return Err(Error::InvalidOrder(format!(
                    "variable index {v} repeated or out of range"
                )));
            }
            seen[v] = true;
        }
        Ok(())
    }

    /// Compares two exponent vectors. Lengths must agree (checked in debug builds).
    #[inline]
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), b.nvars());
        match self {
            MonomialOrder::DegRevLex(p) => degrevlex_cmp(p, a.exponents(), b.exponents()),
            MonomialOrder::Block { first, second } => {
                degrevlex_cmp(first, a.exponents(), b.exponents())
                    .then_with(|| degrevlex_cmp(second, a.exponents(), b.exponents()))
            }
        }
    }

    /// Like [`compare`](Self::compare) but reports length mismatches.
    pub fn try_compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        let n = self.nvars();
        for m in [a, b] {
            if m.nvars() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: m.nvars(),
                });
            }
        }
        Ok(self.compare(a, b))
    }

    /// The variables in decreasing priority (first block first for block orders).
    pub fn variable_priority(&self) -> Vec<usize> {
        match self {
            MonomialOrder::DegRevLex(p) => p.clone(),
            MonomialOrder::Block { first, second } => {
                first.iter().chain(second.iter()).copied().collect()
            }
        }
    }

    /// Least variable of a degrevlex order.
    pub fn least_variable(&self) -> Option<usize> {
        match self {
            MonomialOrder::DegRevLex(p) => p.last().copied(),
            MonomialOrder::Block { second, .. } => second.last().copied(),
        }
    }
}

#[inline]
fn degrevlex_cmp(priority: &[usize], a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = priority.iter().map(|&i| a[i] as u64).sum();
    let db: u64 = priority.iter().map(|&i| b[i] as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for &i in priority.iter().rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => continue,
            // smaller power of the least variable wins
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

/// Order comparison with dimension checking.
pub fn compare_monomials(order: &MonomialOrder, a: &Monomial, b: &Monomial) -> Result<Ordering> {
    order.try_compare(a, b)
}
