//! Monomial ideals: minimal generators, colons, standard monomials, Hilbert
//! numerators and dimension.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Monomial;

/// A monomial ideal stored by its minimal generators, sorted ascending
/// lexicographically on the reversed exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

fn reversed_lex(a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
    a.exponents().iter().rev().cmp(b.exponents().iter().rev())
}

/// Divisibility-minimal, deduplicated generating set.
pub fn minimal_generators(nvars: usize, monomials: &[Monomial]) -> MonomialIdeal {
    MonomialIdeal::new(nvars, monomials.to_vec())
}

impl MonomialIdeal {
    pub fn new(nvars: usize, mut gens: Vec<Monomial>) -> MonomialIdeal {
        for g in &gens {
            assert_eq!(g.nvars(), nvars, "generator length does not match");
        }
        // degree first so that a divisor is always seen before its multiples
        gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| reversed_lex(a, b)));
        gens.dedup();
        let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
        for g in gens {
            if !kept.iter().any(|k| k.divides(&g)) {
                kept.push(g);
            }
        }
        kept.sort_by(reversed_lex);
        MonomialIdeal { nvars, gens: kept }
    }

    pub fn zero(nvars: usize) -> MonomialIdeal {
        MonomialIdeal { nvars, gens: Vec::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.is_one())
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// `I : m`, generated by `g / gcd(g, m)`.
    pub fn colon(&self, m: &Monomial) -> MonomialIdeal {
        MonomialIdeal::new(self.nvars, self.gens.iter().map(|g| g.colon(m)).collect())
    }

    /// `I + (m)`.
    pub fn with_generator(&self, m: Monomial) -> MonomialIdeal {
        let mut g = self.gens.clone();
        g.push(m);
        MonomialIdeal::new(self.nvars, g)
    }

    /// Pure power `x_var^e` in the ideal with the smallest `e`.
    pub fn pure_power(&self, var: usize) -> Option<u32> {
        self.gens
            .iter()
            .filter(|g| g.support().all(|i| i == var) && !g.is_one())
            .map(|g| g.exponent(var))
            .min()
    }

    /// Finite iff every variable has a pure power in the ideal.
    pub fn standard_monomials(&self, enumerate: bool) -> StandardMonomials {
        if self.is_unit() {
            return StandardMonomials::Finite {
                count: 0,
                monomials: enumerate.then(Vec::new),
            };
        }
        let mut bounds = Vec::with_capacity(self.nvars);
        for v in 0..self.nvars {
            match self.pure_power(v) {
                Some(e) => bounds.push(e),
                None => return StandardMonomials::Infinite { witness_var: v },
            }
        }
        let mut out = enumerate.then(Vec::new);
        let mut count = 0u64;
        let mut cur = Monomial::one(self.nvars);
        self.walk(0, &bounds, None, &mut cur, &mut count, &mut out);
        StandardMonomials::Finite { count, monomials: out }
    }

    /// Number of standard monomials of total degree `d`.
    pub fn hilbert_function(&self, d: u64) -> u64 {
        if self.is_unit() {
            return 0;
        }
        let bounds = vec![u32::try_from(d + 1).unwrap_or(u32::MAX); self.nvars];
        let mut count = 0u64;
        let mut cur = Monomial::one(self.nvars);
        self.walk(0, &bounds, Some(d), &mut cur, &mut count, &mut None);
        count
    }

    fn walk(
        &self,
        var: usize,
        bounds: &[u32],
        degree: Option<u64>,
        cur: &mut Monomial,
        count: &mut u64,
        out: &mut Option<Vec<Monomial>>,
    ) {
        if self.contains(cur) {
            return;
        }
        if var == self.nvars {
            if degree.is_none_or(|d| cur.degree() == d) {
                *count += 1;
                if let Some(list) = out.as_mut() {
                    list.push(cur.clone());
                }
            }
            return;
        }
        let used = cur.degree();
        let mut e = 0u32;
        while e < bounds[var] {
            if let Some(d) = degree {
                if used + e as u64 > d {
                    break;
                }
                // the last variable must take up the remaining degree exactly
                if var + 1 == self.nvars && used + (e as u64) < d {
                    e += 1;
                    continue;
                }
            }
            cur.set_exponent(var, e);
            if e > 0 && self.contains(cur) {
                break;
            }
            self.walk(var + 1, bounds, degree, cur, count, out);
            e += 1;
        }
        cur.set_exponent(var, 0);
    }

    /// Hilbert series numerator over `(1 - t)^nvars`, via
    /// `p(I + (m)) = p(I) - t^|m| p(I : m)` with pivots in generator order.
    pub fn hilbert_numerator(&self) -> HilbertNumerator {
        let mut memo = HashMap::new();
        numerator_rec(&self.gens, self.nvars, &mut memo)
    }

    /// Same recursion on an explicitly ordered generator list (no sorting).
    pub fn hilbert_numerator_ordered(nvars: usize, gens: &[Monomial]) -> HilbertNumerator {
        let mut acc = HilbertNumerator::one();
        let mut memo = HashMap::new();
        let mut prefix: Vec<Monomial> = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            if i == 0 {
                acc = HilbertNumerator::one().sub(&HilbertNumerator::monomial(g.degree(), 1));
            } else {
                let colon = MonomialIdeal::new(
                    nvars,
                    prefix.iter().map(|p| p.colon(g)).collect(),
                );
                let inner = numerator_rec(&colon.gens, nvars, &mut memo);
                acc = acc.sub(&inner.shift(g.degree()));
            }
            prefix.push(g.clone());
        }
        acc
    }

    /// Krull dimension of the quotient: the largest set of variables
    /// containing the support of no generator.
    pub fn dimension(&self) -> Result<usize> {
        if self.is_unit() {
            return Err(Error::UnitIdeal);
        }
        if self.nvars > 24 {
            return Err(Error::ScaleGuard("too many variables for subset search".into()));
        }
        let masks: Vec<u64> = self.gens.iter().map(|g| g.support_mask()).collect();
        let mut best = 0usize;
        for set in 0u64..(1u64 << self.nvars) {
            let size = set.count_ones() as usize;
            if size > best && masks.iter().all(|m| m & !set != 0) {
                best = size;
            }
        }
        Ok(best)
    }

    /// `nvars - dimension`.
    pub fn codimension(&self) -> Result<usize> {
        Ok(self.nvars - self.dimension()?)
    }

    pub fn format_with(&self, names: &[String]) -> Vec<String> {
        self.gens.iter().map(|g| g.format_with(names)).collect()
    }
}

/// Krull dimension of the quotient by a monomial ideal.
pub fn dimension_monomial(ideal: &MonomialIdeal) -> Result<usize> {
    ideal.dimension()
}

/// `I : m`.
pub fn colon_by_monomial(ideal: &MonomialIdeal, m: &Monomial) -> MonomialIdeal {
    ideal.colon(m)
}

/// Hilbert numerator of a monomial ideal.
pub fn hilbert_numerator(ideal: &MonomialIdeal) -> HilbertNumerator {
    ideal.hilbert_numerator()
}

fn numerator_rec(
    gens: &[Monomial],
    nvars: usize,
    memo: &mut HashMap<Vec<Monomial>, HilbertNumerator>,
) -> HilbertNumerator {
    if gens.is_empty() {
        return HilbertNumerator::one();
    }
    if gens.iter().any(|g| g.is_one()) {
        return HilbertNumerator::zero();
    }
    if gens.len() == 1 {
        return HilbertNumerator::one().sub(&HilbertNumerator::monomial(gens[0].degree(), 1));
    }
    if let Some(hit) = memo.get(gens) {
        return hit.clone();
    }
    // p(I) = p(I') - t^|m| p(I' : m) with m the last generator
    let (last, rest) = gens.split_last().expect("nonempty");
    let first = numerator_rec(rest, nvars, memo);
    let colon = MonomialIdeal::new(nvars, rest.iter().map(|g| g.colon(last)).collect());
    let second = numerator_rec(&colon.gens, nvars, memo);
    let out = first.sub(&second.shift(last.degree()));
    memo.insert(gens.to_vec(), out.clone());
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StandardMonomials {
    Finite { count: u64, monomials: Option<Vec<Monomial>> },
    Infinite { witness_var: usize },
}

impl StandardMonomials {
    pub fn count(&self) -> Option<u64> {
        match self {
            StandardMonomials::Finite { count, .. } => Some(*count),
            StandardMonomials::Infinite { .. } => None,
        }
    }
}

/// An integer polynomial in `t`, stored sparsely by degree.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct HilbertNumerator {
    coeffs: BTreeMap<u64, i64>,
}

impl HilbertNumerator {
    pub fn zero() -> Self {
        HilbertNumerator { coeffs: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(degree: u64, c: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if c != 0 {
            coeffs.insert(degree, c);
        }
        HilbertNumerator { coeffs }
    }

    pub fn from_pairs(pairs: &[(u64, i64)]) -> Self {
        let mut out = Self::zero();
        for &(d, c) in pairs {
            out.add_term(d, c);
        }
        out
    }

    pub fn add_term(&mut self, degree: u64, c: i64) {
        let e = self.coeffs.entry(degree).or_insert(0);
        *e = e.checked_add(c).expect("numerator coefficient overflow");
        if *e == 0 {
            self.coeffs.remove(&degree);
        }
    }

    pub fn coeff(&self, degree: u64) -> i64 {
        self.coeffs.get(&degree).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.coeffs.iter().map(|(d, c)| (*d, *c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, c) in other.terms() {
            out.add_term(d, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, c) in other.terms() {
            out.add_term(d, c.checked_neg().expect("numerator coefficient overflow"));
        }
        out
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: u64) -> Self {
        HilbertNumerator {
            coeffs: self.coeffs.iter().map(|(d, c)| (d + k, *c)).collect(),
        }
    }

    /// Value at `t = 1`.
    pub fn at_one(&self) -> i64 {
        self.coeffs
            .values()
            .try_fold(0i64, |a, c| a.checked_add(*c))
            .expect("numerator coefficient overflow")
    }

    /// First `upto + 1` coefficients of `self / (1 - t)^n` as a power series.
    pub fn series(&self, n: usize, upto: u64) -> Vec<i128> {
        (0..=upto)
            .map(|d| {
                self.terms()
                    .filter(|(k, _)| *k <= d)
                    .map(|(k, c)| c as i128 * binomial((d - k) as u128 + n as u128 - 1, n as u128 - 1))
                    .sum()
            })
            .collect()
    }
}

fn binomial(n: u128, k: u128) -> i128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    i128::try_from(acc).expect("binomial overflow")
}

impl fmt::Display for HilbertNumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (d, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{d}:{c}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for HilbertNumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl std::str::FromStr for HilbertNumerator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("expected braces in `{s}`")))?;
        let mut out = HilbertNumerator::zero();
        for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (d, c) = part
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected `degree:coeff`, got `{part}`")))?;
            let d: u64 = d.trim().parse().map_err(|_| Error::Parse(format!("bad degree `{d}`")))?;
            let c: i64 = c.trim().parse().map_err(|_| Error::Parse(format!("bad coefficient `{c}`")))?;
            out.add_term(d, c);
        }
        Ok(out)
    }
}

impl From<HilbertNumerator> for String {
    fn from(h: HilbertNumerator) -> String {
        h.to_string()
    }
}

impl TryFrom<String> for HilbertNumerator {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e)
    }

    #[test]
    fn minimalization() {
        let i = minimal_generators(2, &[m(&[2, 0]), m(&[2, 1]), m(&[0, 3]), m(&[2, 0])]);
        assert_eq!(i.gens(), &[m(&[2, 0]), m(&[0, 3])]);
        assert!(minimal_generators(3, &[]).is_zero());
    }

    #[test]
    fn colon_examples() {
        // (x1^10) : x1^9 x2 = (x1)
        let i = MonomialIdeal::new(4, vec![m(&[10, 0, 0, 0])]);
        assert_eq!(i.colon(&m(&[9, 1, 0, 0])).gens(), &[m(&[1, 0, 0, 0])]);
        let g = m(&[1, 2, 0, 1]);
        assert!(MonomialIdeal::new(4, vec![g.clone()]).colon(&g).is_unit());
        // (x2x3^3, x1x4^3) : x2 = (x3^3, x1x4^3)
        let i = MonomialIdeal::new(4, vec![m(&[0, 1, 3, 0]), m(&[1, 0, 0, 3])]);
        let c = i.colon(&m(&[0, 1, 0, 0]));
        assert_eq!(
            c,
            MonomialIdeal::new(4, vec![m(&[0, 0, 3, 0]), m(&[1, 0, 0, 3])])
        );
    }

    #[test]
    fn standard_monomial_counts() {
        let i = MonomialIdeal::new(2, vec![m(&[1, 0])]);
        assert_eq!(i.standard_monomials(false), StandardMonomials::Infinite { witness_var: 1 });
        let i = MonomialIdeal::new(2, vec![m(&[2, 0]), m(&[1, 1]), m(&[0, 3])]);
        match i.standard_monomials(true) {
            StandardMonomials::Finite { count, monomials } => {
                assert_eq!(count, 4);
                let mut got = monomials.unwrap();
                got.sort();
                let mut want = vec![m(&[0, 0]), m(&[1, 0]), m(&[0, 1]), m(&[0, 2])];
                want.sort();
                assert_eq!(got, want);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn numerators() {
        let i = MonomialIdeal::new(4, vec![m(&[10, 0, 0, 0])]);
        assert_eq!(i.hilbert_numerator(), HilbertNumerator::from_pairs(&[(0, 1), (10, -1)]));
        assert_eq!(MonomialIdeal::zero(3).hilbert_numerator(), HilbertNumerator::one());
        let unit = MonomialIdeal::new(2, vec![m(&[0, 0])]);
        assert_eq!(unit.hilbert_numerator(), HilbertNumerator::zero());
        // (x, y) in k[x, y]: (1 - t)^2
        let i = MonomialIdeal::new(2, vec![m(&[1, 0]), m(&[0, 1])]);
        assert_eq!(
            i.hilbert_numerator(),
            HilbertNumerator::from_pairs(&[(0, 1), (1, -2), (2, 1)])
        );
    }

    #[test]
    fn series_matches_counts() {
        let i = MonomialIdeal::new(3, vec![m(&[2, 0, 0]), m(&[1, 1, 1]), m(&[0, 3, 0]), m(&[0, 1, 2])]);
        let series = i.hilbert_numerator().series(3, 10);
        for (d, s) in series.iter().enumerate() {
            assert_eq!(*s, i.hilbert_function(d as u64) as i128, "degree {d}");
        }
    }

    #[test]
    fn dimensions() {
        let i = MonomialIdeal::new(5, vec![m(&[0, 1, 0, 0, 0]), m(&[0, 0, 0, 0, 1])]);
        assert_eq!(i.dimension().unwrap(), 3);
        assert_eq!(i.codimension().unwrap(), 2);
        let unit = MonomialIdeal::new(2, vec![m(&[0, 0])]);
        assert_eq!(unit.dimension(), Err(Error::UnitIdeal));
        assert_eq!(MonomialIdeal::zero(3).dimension().unwrap(), 3);
    }

    #[test]
    fn text_format() {
        let h = HilbertNumerator::from_pairs(&[(4, -1), (0, 1)]);
        assert_eq!(h.to_string(), "{0:1, 4:-1}");
        assert_eq!("{0:1, 4:-1}".parse::<HilbertNumerator>().unwrap(), h);
        assert_eq!(serde_json::to_string(&h).unwrap(), "\"{0:1, 4:-1}\"");
    }
}
