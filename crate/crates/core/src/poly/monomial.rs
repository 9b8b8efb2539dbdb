use std::fmt;

use smallvec::SmallVec;

/// An exponent vector `x^a`, one entry per variable of the ambient ring.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[u32; 8]>);

/// Alias matching the usual name for `a` in `x^a`.
pub type ExponentVector = Monomial;

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn new(exponents: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exponents))
    }

    /// The monomial `x_var^exp`.
    pub fn var_power(nvars: usize, var: usize, exp: u32) -> Self {
        let mut m = Self::one(nvars);
        m.0[var] = exp;
        m
    }

    #[inline]
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn exponent(&self, var: usize) -> u32 {
        self.0[var]
    }

    pub fn set_exponent(&mut self, var: usize, exp: u32) {
        self.0[var] = exp;
    }

    /// Total degree. Panics on overflow.
    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    /// All monomials of total degree `d` in `nvars` variables, ascending
    /// lexicographically in the exponent vector.
    pub fn all_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        fn go(acc: &mut Vec<Monomial>, cur: &mut Vec<u32>, left: u32, nvars: usize) {
            if cur.len() + 1 == nvars {
                cur.push(left);
                acc.push(Monomial::new(cur));
                cur.pop();
                return;
            }
            for e in 0..=left {
                cur.push(e);
                go(acc, cur, left - e, nvars);
                cur.pop();
            }
        }
        let mut acc = Vec::new();
        if nvars == 0 {
            if d == 0 {
                acc.push(Monomial::new(&[]));
            }
            return acc;
        }
        go(&mut acc, &mut Vec::with_capacity(nvars), d, nvars);
        acc
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Product of monomials; exponent overflow aborts.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    /// Raise to a power; exponent overflow aborts.
    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(
            self.0
                .iter()
                .map(|a| a.checked_mul(k).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self | other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial(
                other.0.iter().zip(self.0.iter()).map(|(b, a)| b - a).collect(),
            ))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0
            .iter()
            .zip(other.0.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// `self / gcd(self, other)`, the generator of `(self) : other`.
    pub fn colon(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a.saturating_sub(*b))
                .collect(),
        )
    }

    /// Variables with a nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, _)| i)
    }

    /// Support as a bit set (at most 64 variables).
    pub fn support_mask(&self) -> u64 {
        self.support().fold(0u64, |acc, i| acc | (1u64 << i))
    }

    /// Writes the monomial as `x1^3*x3^2` using the given names; `1` for the unit.
    pub fn format_with(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, e)| {
                if *e == 1 {
                    names[i].clone()
                } else {
                    format!("{}^{}", names[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lcm_gcd_divides() {
        let a = Monomial::new(&[2, 0, 1]);
        let b = Monomial::new(&[1, 3, 0]);
        assert_eq!(a.lcm(&b), Monomial::new(&[2, 3, 1]));
        assert_eq!(a.gcd(&b), Monomial::new(&[1, 0, 0]));
        assert!(a.gcd(&b).divides(&a));
        assert_eq!(a.quotient_of(&a.lcm(&b)), Some(Monomial::new(&[0, 3, 0])));
        assert!(!a.divides(&b));
    }

    #[test]
    fn colon_subtracts_componentwise() {
        let g = Monomial::new(&[0, 1, 3, 0]);
        let m = Monomial::new(&[0, 1, 0, 0]);
        assert_eq!(g.colon(&m), Monomial::new(&[0, 0, 3, 0]));
    }

    #[test]
    #[should_panic(expected = "exponent overflow")]
    fn overflow_aborts() {
        let a = Monomial::new(&[u32::MAX]);
        let _ = a.mul(&Monomial::new(&[1]));
    }
}
