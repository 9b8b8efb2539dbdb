use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Monomial, MonomialOrder, Ring};
use crate::error::{Error, Result};

pub type Coeff = BigRational;

pub fn coeff_int(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

/// Sparse polynomial with terms kept sorted descending by the ring's order.
/// No zero coefficients are stored.
#[derive(Clone)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(Monomial, Coeff)>,
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Polynomial {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &Ring) -> Polynomial {
        Polynomial::from_monomial(ring, Monomial::one(ring.nvars()))
    }

    pub fn constant(ring: &Ring, c: Coeff) -> Polynomial {
        Polynomial::term(ring, c, Monomial::one(ring.nvars()))
    }

    pub fn from_monomial(ring: &Ring, m: Monomial) -> Polynomial {
        Polynomial::term(ring, Coeff::one(), m)
    }

    pub fn term(ring: &Ring, c: Coeff, m: Monomial) -> Polynomial {
        assert_eq!(m.nvars(), ring.nvars(), "monomial length does not match ring");
        if c.is_zero() {
            return Polynomial::zero(ring);
        }
        Polynomial { ring: ring.clone(), terms: vec![(m, c)] }
    }

    /// `m1 - m2`, the usual binomial shape.
    pub fn binomial(ring: &Ring, m1: Monomial, m2: Monomial) -> Polynomial {
        Polynomial::from_terms(ring, vec![(m1, Coeff::one()), (m2, -Coeff::one())])
    }

    /// Collects terms in any order, combining duplicates and dropping zeros.
    pub fn from_terms(ring: &Ring, mut terms: Vec<(Monomial, Coeff)>) -> Polynomial {
        let order = ring.order();
        for (m, _) in &terms {
            assert_eq!(m.nvars(), ring.nvars(), "monomial length does not match ring");
        }
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        let mut out: Vec<(Monomial, Coeff)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 += c,
                _ => {
                    if let Some(last) = out.last() {
                        if last.1.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if out.last().is_some_and(|t| t.1.is_zero()) {
            out.pop();
        }
        Polynomial { ring: ring.clone(), terms: out }
    }

    fn from_sorted(ring: &Ring, terms: Vec<(Monomial, Coeff)>) -> Polynomial {
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Constant term (zero if absent).
    pub fn constant_coeff(&self) -> Coeff {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Coeff::zero(),
        }
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Coeff)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&Coeff> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn leading_monomial_or_err(&self) -> Result<&Monomial> {
        self.leading_monomial().ok_or(Error::ZeroPolynomial)
    }

    pub fn coeff_of(&self, m: &Monomial) -> Coeff {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Coeff::zero)
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => self.terms.iter().all(|(m, _)| m.degree() == m0.degree()),
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring.same_as(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.add_scaled(&Coeff::one(), &Monomial::one(self.ring.nvars()), other))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.add_scaled(&-Coeff::one(), &Monomial::one(self.ring.nvars()), other))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return Ok(other.mul_term(c, m));
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return Ok(self.mul_term(c, m));
        }
        let mut acc = Polynomial::zero(&self.ring);
        let (small, big) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        for (m, c) in &small.terms {
            acc = acc.add_scaled(c, m, big);
        }
        Ok(acc)
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial::from_sorted(
            &self.ring,
            self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        )
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial::from_sorted(
            &self.ring,
            self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        )
    }

    /// `c * m * self`. Multiplying by a monomial preserves the term order.
    pub fn mul_term(&self, c: &Coeff, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial::from_sorted(
            &self.ring,
            self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&base).expect("same ring");
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base).expect("same ring");
            }
        }
        acc
    }

    /// `self + c * m * g` (g assumed to live in the same ring).
    pub fn add_scaled(&self, c: &Coeff, m: &Monomial, g: &Polynomial) -> Polynomial {
        let terms = merge_scaled(self.ring.order(), &self.terms, c, m, &g.terms);
        Polynomial::from_sorted(&self.ring, terms)
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Re-sorts the terms under the default order of `ring`, which must have
    /// the same variables.
    pub fn reorder(&self, ring: &Ring) -> Result<Polynomial> {
        if !self.ring.same_vars(ring) {
            return Err(Error::RingMismatch);
        }
        if self.ring.same_as(ring) {
            return Ok(self.clone());
        }
        let mut terms = self.terms.clone();
        let order = ring.order();
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        Ok(Polynomial::from_sorted(ring, terms))
    }

    /// Moves the polynomial into `target`, matching variables by name.
    /// Variables missing from `target` must not occur.
    pub fn map_to(&self, target: &Ring) -> Result<Polynomial> {
        if self.ring.same_as(target) {
            return Ok(self.clone());
        }
        let mut index = Vec::with_capacity(self.ring.nvars());
        for v in self.ring.vars() {
            index.push(target.var_index(v).ok());
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut t = Monomial::one(target.nvars());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match index[i] {
                    Some(j) => t.set_exponent(j, e),
                    None => return Err(Error::UnknownVariable(self.ring.vars()[i].clone())),
                }
            }
            terms.push((t, c.clone()));
        }
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Homogenizes with respect to `var` of `target`; the other variables of
    /// `target` must contain those of `self`.
    pub fn homogenize(&self, target: &Ring, var: &str) -> Result<Polynomial> {
        let h = target.var_index(var)?;
        let lifted = self.map_to(target)?;
        let d = match lifted.total_degree() {
            None => return Ok(lifted),
            Some(d) => d,
        };
        let terms = lifted
            .terms
            .into_iter()
            .map(|(mut m, c)| {
                let gap = u32::try_from(d - m.degree()).expect("exponent overflow");
                let e = m.exponent(h).checked_add(gap).expect("exponent overflow");
                m.set_exponent(h, e);
                (m, c)
            })
            .collect();
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Sets `var` to 1 and moves the result into `target`.
    pub fn dehomogenize(&self, var: &str, target: &Ring) -> Result<Polynomial> {
        let h = self.ring.var_index(var)?;
        let mut stripped = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut m = m.clone();
            m.set_exponent(h, 0);
            stripped.push((m, c.clone()));
        }
        let tmp = Polynomial::from_terms(&self.ring, stripped);
        let mut terms = Vec::with_capacity(tmp.terms.len());
        let index: Vec<Option<usize>> =
            self.ring.vars().iter().map(|v| target.var_index(v).ok()).collect();
        for (m, c) in tmp.terms {
            let mut t = Monomial::one(target.nvars());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 || i == h {
                    continue;
                }
                match index[i] {
                    Some(j) => t.set_exponent(j, e),
                    None => return Err(Error::UnknownVariable(self.ring.vars()[i].clone())),
                }
            }
            terms.push((t, c));
        }
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Ring homomorphism sending variable `i` to `images[i]`.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.ring.nvars(),
                found: images.len(),
            });
        }
        let target = match images.first() {
            Some(p) => p.ring.clone(),
            None => return Ok(self.clone()),
        };
        if images.iter().any(|p| !p.ring.same_as(&target)) {
            return Err(Error::RingMismatch);
        }
        // monomial images: compute each term directly
        if images.iter().all(|p| p.terms.len() == 1) {
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                let mut t = Monomial::one(target.nvars());
                let mut coef = c.clone();
                for (i, &e) in m.exponents().iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    let (im, ic) = &images[i].terms[0];
                    t = t.mul(&im.pow(e));
                    if !ic.is_one() {
                        coef *= num_traits::pow(ic.clone(), e as usize);
                    }
                }
                terms.push((t, coef));
            }
            return Ok(Polynomial::from_terms(&target, terms));
        }
        let mut acc = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = t.try_mul(&images[i].pow(e))?;
                }
            }
            acc = acc.try_add(&t)?;
        }
        Ok(acc)
    }

    /// Evaluates at an integer point modulo a prime `p < 2^32`.
    /// Returns `None` if a coefficient denominator vanishes mod `p`.
    pub fn eval_mod(&self, point: &[u64], p: u64) -> Option<u64> {
        let mut acc = 0u64;
        for (m, c) in &self.terms {
            let mut v = coeff_mod(c, p)?;
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    v = v * pow_mod(point[i] % p, e as u64, p) % p;
                }
            }
            acc = (acc + v) % p;
        }
        Some(acc)
    }

    /// Value at the point where every variable is zero.
    pub fn eval_at_origin(&self) -> Coeff {
        self.constant_coeff()
    }

    /// Largest exponent of any variable.
    pub fn max_exponent(&self) -> u32 {
        self.terms
            .iter()
            .flat_map(|(m, _)| m.exponents().iter().copied())
            .max()
            .unwrap_or(0)
    }

    pub fn content_is_integral(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer())
    }

    /// Largest monomial dividing every term (`1` for the zero polynomial).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::one(self.ring.nvars()),
            Some((m0, _)) => it.fold(m0.clone(), |g, (m, _)| g.gcd(m)),
        }
    }

    /// Exact division by a monomial; panics if some term is not divisible.
    pub fn div_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial::from_sorted(
            &self.ring,
            self.terms
                .iter()
                .map(|(t, c)| (m.quotient_of(t).expect("monomial does not divide"), c.clone()))
                .collect(),
        )
    }

    /// Exact polynomial division: returns `q` with `self = q * d` or `None`.
    pub fn exact_div(&self, d: &Polynomial) -> Option<Polynomial> {
        let (q, r) = super::division::divide(self, std::slice::from_ref(d));
        if r.is_zero() {
            q.into_iter().next()
        } else {
            None
        }
    }

    /// Canonical string used for hashing/caching.
    pub fn canonical_string(&self) -> String {
        self.to_string()
    }

    /// Same polynomial up to a nonzero scalar.
    pub fn proportional_to(&self, other: &Polynomial) -> bool {
        if self.terms.len() != other.terms.len() {
            return false;
        }
        if self.is_zero() {
            return true;
        }
        let ratio = &self.terms[0].1 / &other.terms[0].1;
        self.terms
            .iter()
            .zip(&other.terms)
            .all(|((m1, c1), (m2, c2))| m1 == m2 && c1 == &(c2 * &ratio))
    }

    pub fn ordering_in(&self, order: &MonomialOrder, other: &Polynomial) -> Ordering {
        match (self.leading_monomial(), other.leading_monomial()) {
            (None, None) => Ordering::Equal,
            (None, _) => Ordering::Less,
            (_, None) => Ordering::Greater,
            (Some(a), Some(b)) => order.compare(a, b),
        }
    }
}

pub(crate) fn coeff_mod(c: &Coeff, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let n = mod_big(c.numer(), &pb);
    let d = mod_big(c.denom(), &pb);
    if d == 0 {
        return None;
    }
    Some(n * inv_mod(d, p) % p)
}

fn mod_big(x: &BigInt, p: &BigInt) -> u64 {
    let r = x % p;
    let r = if r.is_negative() { r + p } else { r };
    r.to_u64().expect("residue fits")
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Merges `a + c * m * b` where both term lists are sorted descending.
pub(crate) fn merge_scaled(
    order: &MonomialOrder,
    a: &[(Monomial, Coeff)],
    c: &Coeff,
    m: &Monomial,
    b: &[(Monomial, Coeff)],
) -> Vec<(Monomial, Coeff)> {
    if c.is_zero() || b.is_empty() {
        return a.to_vec();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut bi = b.iter().map(|(t, k)| (t.mul(m), k * c)).peekable();
    while i < a.len() {
        let Some((bm, _)) = bi.peek() else { break };
        match order.compare(&a[i].0, bm) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => out.push(bi.next().expect("peeked")),
            Ordering::Equal => {
                let (bm, bc) = bi.next().expect("peeked");
                let s = &a[i].1 + bc;
                if !s.is_zero() {
                    out.push((bm, s));
                }
                i += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend(bi);
    out
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_vars(&other.ring)
            && if self.ring.same_as(&other.ring) {
                self.terms == other.terms
            } else {
                match other.reorder(&self.ring) {
                    Ok(o) => self.terms == o.terms,
                    Err(_) => false,
                }
            }
    }
}

impl Eq for Polynomial {}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let vars = self.ring.vars();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", m.format_with(vars))?;
            } else {
                write!(f, "{a}*{}", m.format_with(vars))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
