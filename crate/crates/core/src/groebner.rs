//! S-polynomials, Buchberger's algorithm, reduced bases, elimination and
//! codimension.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::sync::{Mutex, OnceLock};

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial_ideal::MonomialIdeal;
use crate::poly::{normal_form, Monomial, MonomialOrder, Polynomial, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GbStatus {
    Unverified,
    Verified,
    Reduced,
}

/// A list of polynomials together with the order under which it is claimed
/// (or known) to be a Gröbner basis. The elements live in a ring whose
/// default order is `order`.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    elements: Vec<Polynomial>,
    order: MonomialOrder,
    status: GbStatus,
}

impl GroebnerBasis {
    /// Wraps polynomials without checking anything.
    pub fn unverified(elements: Vec<Polynomial>, order: MonomialOrder) -> Result<GroebnerBasis> {
        let elements = to_order(&elements, &order)?;
        Ok(GroebnerBasis { elements, order, status: GbStatus::Unverified })
    }

    /// Runs the S-pair check and upgrades the status if it passes.
    pub fn verify(mut self) -> Result<GroebnerBasis> {
        let (ok, _) = is_groebner_basis(&self.elements, &self.order)?;
        if !ok {
            return Err(Error::Contract("not a Gröbner basis".into()));
        }
        if self.status == GbStatus::Unverified {
            self.status = if is_reduced(&self.elements) { GbStatus::Reduced } else { GbStatus::Verified };
        }
        Ok(self)
    }

    /// Tags the basis with a status established elsewhere (e.g. by a proof
    /// whose hypotheses were checked by the caller).
    pub(crate) fn assume_status(mut self, status: GbStatus) -> GroebnerBasis {
        self.status = status;
        self
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<Polynomial> {
        self.elements
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn status(&self) -> GbStatus {
        self.status
    }

    pub fn ring(&self) -> Option<&Ring> {
        self.elements.first().map(|p| p.ring())
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .filter_map(|p| p.leading_monomial().cloned())
            .collect()
    }

    /// Reduces `f` to its normal form (zero iff `f` is in the ideal).
    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial> {
        let ring = match self.ring() {
            Some(r) => r.clone(),
            None => return Ok(f.clone()),
        };
        Ok(normal_form(&f.reorder(&ring)?, &self.elements))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.reduce(f)?.is_zero())
    }

    /// Same ideal: each basis reduces the other's elements to zero.
    pub fn same_ideal(&self, other: &GroebnerBasis) -> Result<bool> {
        for p in other.elements() {
            if !self.contains(p)? {
                return Ok(false);
            }
        }
        for p in self.elements() {
            if !other.contains(p)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.elements.iter().map(|p| p.to_string()).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SkipReason {
    CoprimeLeads,
}

#[derive(Clone, Debug)]
pub struct SPolyReport {
    pub pair: (usize, usize),
    pub spoly: Polynomial,
    pub reduced_to_zero: bool,
    pub skip_reason: Option<SkipReason>,
}

/// Whether coprime-lead pairs are skipped (default) or reduced anyway.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CheckMode {
    #[default]
    Standard,
    Audit,
}

fn to_order(polys: &[Polynomial], order: &MonomialOrder) -> Result<Vec<Polynomial>> {
    let Some(first) = polys.first() else { return Ok(Vec::new()) };
    let ring = first.ring().with_order(order.clone())?;
    polys.iter().map(|p| p.reorder(&ring)).collect()
}

/// `(L / LT(f)) f - (L / LT(g)) g` with `L = lcm(LM(f), LM(g))`; the leading
/// terms cancel. The result lives in the ring of `f` re-ordered by `order`.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: &MonomialOrder) -> Result<Polynomial> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.ring().same_vars(g.ring()) {
        return Err(Error::RingMismatch);
    }
    let v = to_order(&[f.clone(), g.clone()], order)?;
    Ok(spoly_same_ring(&v[0], &v[1]))
}

fn spoly_same_ring(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (fm, fc) = f.leading_term().expect("nonzero");
    let (gm, gc) = g.leading_term().expect("nonzero");
    let l = fm.lcm(gm);
    let a = fm.quotient_of(&l).expect("lcm");
    let b = gm.quotient_of(&l).expect("lcm");
    let left = f.mul_term(&fc.recip(), &a);
    left.add_scaled(&-gc.recip(), &b, g)
}

/// Buchberger's criterion. Pairs with coprime leading monomials are skipped
/// (and recorded as such) unless `mode` is `Audit`.
pub fn is_groebner_basis_with(
    gens: &[Polynomial],
    order: &MonomialOrder,
    mode: CheckMode,
) -> Result<(bool, Vec<SPolyReport>)> {
    if gens.iter().any(|g| g.is_zero()) {
        return Err(Error::ZeroPolynomial);
    }
    let g = to_order(gens, order)?;
    let mut reports = Vec::new();
    let mut all = true;
    for j in 0..g.len() {
        for i in 0..j {
            let s = spoly_same_ring(&g[i], &g[j]);
            let coprime = g[i]
                .leading_monomial()
                .expect("nonzero")
                .is_coprime(g[j].leading_monomial().expect("nonzero"));
            if coprime && mode == CheckMode::Standard {
                reports.push(SPolyReport {
                    pair: (i, j),
                    spoly: s,
                    reduced_to_zero: true,
                    skip_reason: Some(SkipReason::CoprimeLeads),
                });
                continue;
            }
            let zero = normal_form(&s, &g).is_zero();
            all &= zero;
            reports.push(SPolyReport { pair: (i, j), spoly: s, reduced_to_zero: zero, skip_reason: None });
        }
    }
    Ok((all, reports))
}

pub fn is_groebner_basis(gens: &[Polynomial], order: &MonomialOrder) -> Result<(bool, Vec<SPolyReport>)> {
    is_groebner_basis_with(gens, order, CheckMode::Standard)
}

fn is_reduced(g: &[Polynomial]) -> bool {
    g.iter().enumerate().all(|(i, p)| {
        p.leading_coeff().is_some_and(|c| c.is_one())
            && g.iter().enumerate().all(|(j, q)| {
                i == j
                    || p.terms()
                        .iter()
                        .all(|(m, _)| !q.leading_monomial().expect("nonzero").divides(m))
            })
    })
}

type CacheKey = (Vec<String>, MonomialOrder, Option<Vec<u64>>, Vec<String>);

fn cache() -> &'static Mutex<HashMap<CacheKey, Vec<Polynomial>>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Vec<Polynomial>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Reduced Gröbner basis of the ideal generated by `gens` under `order`.
/// Pairs are processed by smallest lcm, ties broken by pair index; the
/// output is monic, interreduced and sorted descending by leading monomial.
pub fn buchberger_complete(gens: &[Polynomial], order: &MonomialOrder) -> Result<GroebnerBasis> {
    complete_with(gens, order, None)
}

/// Like [`buchberger_complete`], for input that is homogeneous for the given
/// variable weights; pairs are then taken by smallest weighted degree. The
/// reduced basis is the same, only the route differs.
pub fn buchberger_complete_weighted(
    gens: &[Polynomial],
    order: &MonomialOrder,
    weights: &[u64],
) -> Result<GroebnerBasis> {
    if weights.len() != order.nvars() {
        return Err(Error::DimensionMismatch { expected: order.nvars(), found: weights.len() });
    }
    complete_with(gens, order, Some(weights))
}

fn complete_with(
    gens: &[Polynomial],
    order: &MonomialOrder,
    weights: Option<&[u64]>,
) -> Result<GroebnerBasis> {
    let g = to_order(gens, order)?;
    let g: Vec<Polynomial> = g.into_iter().filter(|p| !p.is_zero()).collect();
    let Some(ring) = g.first().map(|p| p.ring().clone()) else {
        return Ok(GroebnerBasis { elements: Vec::new(), order: order.clone(), status: GbStatus::Reduced });
    };
    let key_gens: Vec<String> = g.iter().map(|p| p.monic().to_string()).collect();
    let key = (ring.vars().to_vec(), order.clone(), weights.map(<[u64]>::to_vec), key_gens);
    if let Some(hit) = cache().lock().expect("cache lock").get(&key) {
        let elements = hit.iter().map(|p| p.reorder(&ring)).collect::<Result<_>>()?;
        return Ok(GroebnerBasis { elements, order: order.clone(), status: GbStatus::Reduced });
    }
    let elements = reduce_basis(buchberger_raw(g, weights));
    cache().lock().expect("cache lock").insert(key, elements.clone());
    Ok(GroebnerBasis { elements, order: order.clone(), status: GbStatus::Reduced })
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u64,
}

fn weighted_degree(m: &Monomial, weights: Option<&[u64]>) -> u64 {
    match weights {
        None => m.degree(),
        Some(w) => m.exponents().iter().zip(w).map(|(&e, &w)| e as u64 * w).sum(),
    }
}

fn poly_sugar(p: &Polynomial, weights: Option<&[u64]>) -> u64 {
    p.terms().iter().map(|(m, _)| weighted_degree(m, weights)).max().unwrap_or(0)
}

/// Buchberger's algorithm with the product and chain criteria. Without
/// weights pairs are taken by smallest lcm; with weights by smallest
/// weighted sugar first.
fn buchberger_raw(input: Vec<Polynomial>, weights: Option<&[u64]>) -> Vec<Polynomial> {
    let order = input[0].ring().order().clone();
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut leads: Vec<Monomial> = Vec::new();
    let mut sugars: Vec<u64> = Vec::new();
    let mut pending: Vec<Pair> = Vec::new();
    let mut pending_set: HashSet<(usize, usize)> = HashSet::new();
    let add = |p: Polynomial,
               sugar: u64,
               basis: &mut Vec<Polynomial>,
               leads: &mut Vec<Monomial>,
               sugars: &mut Vec<u64>,
               pending: &mut Vec<Pair>,
               pending_set: &mut HashSet<(usize, usize)>| {
        let p = p.monic();
        let k = basis.len();
        let lk = p.leading_monomial().expect("nonzero").clone();
        for i in 0..k {
            let lcm = leads[i].lcm(&lk);
            let si = sugars[i] + weighted_degree(&leads[i].quotient_of(&lcm).expect("lcm"), weights);
            let sk = sugar + weighted_degree(&lk.quotient_of(&lcm).expect("lcm"), weights);
            pending.push(Pair { i, j: k, lcm, sugar: si.max(sk) });
            pending_set.insert((i, k));
        }
        leads.push(lk);
        sugars.push(sugar);
        basis.push(p);
    };
    for p in input {
        let r = normal_form(&p, &basis);
        if !r.is_zero() {
            let s = poly_sugar(&r, weights);
            add(r, s, &mut basis, &mut leads, &mut sugars, &mut pending, &mut pending_set);
        }
    }
    while !pending.is_empty() {
        let mut best = 0;
        for k in 1..pending.len() {
            let (a, b) = (&pending[k], &pending[best]);
            let key = if weights.is_some() { a.sugar.cmp(&b.sugar) } else { Ordering::Equal };
            let c = key
                .then_with(|| order.compare(&a.lcm, &b.lcm))
                .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)));
            if c == Ordering::Less {
                best = k;
            }
        }
        let Pair { i, j, lcm, sugar } = pending.swap_remove(best);
        pending_set.remove(&(i, j));
        if leads[i].is_coprime(&leads[j]) {
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && leads[k].divides(&lcm)
                && !pending_set.contains(&(i.min(k), i.max(k)))
                && !pending_set.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = spoly_same_ring(&basis[i], &basis[j]);
        let r = normal_form(&s, &basis);
        if !r.is_zero() {
            add(r, sugar, &mut basis, &mut leads, &mut sugars, &mut pending, &mut pending_set);
        }
    }
    basis
}

/// Minimalizes, interreduces, normalizes and sorts a Gröbner basis.
fn reduce_basis(basis: Vec<Polynomial>) -> Vec<Polynomial> {
    let Some(ring) = basis.first().map(|p| p.ring().clone()) else { return basis };
    let order = ring.order().clone();
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (i, p) in basis.iter().enumerate() {
        let lm = p.leading_monomial().expect("nonzero");
        let redundant = basis.iter().enumerate().any(|(j, q)| {
            let lq = q.leading_monomial().expect("nonzero");
            j != i && lq.divides(lm) && (lq != lm || j < i)
        });
        if !redundant {
            minimal.push(p.monic());
        }
    }
    minimal.sort_by(|a, b| order.compare(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let lead = Polynomial::from_terms(&ring, vec![minimal[i].terms()[0].clone()]);
        let tail = minimal[i].try_sub(&lead).expect("same ring");
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| p.clone())
            .collect();
        let reduced = lead.try_add(&normal_form(&tail, &others)).expect("same ring");
        out.push(reduced);
    }
    out
}

/// Minimal generators of the initial ideal of a verified basis.
pub fn initial_ideal(gb: &GroebnerBasis) -> Result<MonomialIdeal> {
    if gb.status == GbStatus::Unverified {
        return Err(Error::Contract("initial ideal of an unverified basis".into()));
    }
    let nvars = gb.order.nvars();
    Ok(MonomialIdeal::new(nvars, gb.leading_monomials()))
}

/// Generators of the elimination ideal: the reduced basis elements under a
/// block order (dropped variables first) that are free of dropped variables.
/// Results are returned in a ring without the dropped variables, ordered by
/// degrevlex on the remaining variables in their original order.
pub fn eliminate(gens: &[Polynomial], drop_vars: &[&str]) -> Result<Vec<Polynomial>> {
    eliminate_with(gens, drop_vars, None)
}

/// [`eliminate`] for input homogeneous with respect to `weights`.
pub fn eliminate_weighted(
    gens: &[Polynomial],
    drop_vars: &[&str],
    weights: &[u64],
) -> Result<Vec<Polynomial>> {
    eliminate_with(gens, drop_vars, Some(weights))
}

fn eliminate_with(
    gens: &[Polynomial],
    drop_vars: &[&str],
    weights: Option<&[u64]>,
) -> Result<Vec<Polynomial>> {
    let Some(first) = gens.first() else { return Ok(Vec::new()) };
    let ring = first.ring();
    let mut drop = Vec::new();
    for v in drop_vars {
        drop.push(ring.var_index(v)?);
    }
    let keep: Vec<usize> = (0..ring.nvars()).filter(|i| !drop.contains(i)).collect();
    let order = MonomialOrder::Block { first: drop.clone(), second: keep.clone() };
    let gb = match weights {
        Some(w) => buchberger_complete_weighted(gens, &order, w)?,
        None => buchberger_complete(gens, &order)?,
    };
    let names: Vec<&str> = keep.iter().map(|&i| ring.vars()[i].as_str()).collect();
    let target = Ring::degrevlex(&names);
    gb.elements()
        .iter()
        .filter(|p| p.terms().iter().all(|(m, _)| drop.iter().all(|&d| m.exponent(d) == 0)))
        .map(|p| p.map_to(&target))
        .collect()
}

/// `nvars - dim` of the quotient. Monomial factors are split off first
/// (`V(m g) = V(m) ∪ V(g)`), the remaining ideals go through a Gröbner basis.
pub fn codimension(gens: &[Polynomial], order: &MonomialOrder) -> Result<usize> {
    if gens.iter().all(|g| g.is_zero()) {
        return Ok(0);
    }
    let mut memo = HashMap::new();
    codim_split(gens.to_vec(), order, &mut memo)?.ok_or(Error::UnitIdeal)
}

fn vanish_var(p: &Polynomial, var: usize) -> Polynomial {
    let terms = p.terms().iter().filter(|(m, _)| m.exponent(var) == 0).cloned().collect();
    Polynomial::from_terms(p.ring(), terms)
}

/// `None` when the zero set is empty.
fn codim_split(
    mut gens: Vec<Polynomial>,
    order: &MonomialOrder,
    memo: &mut HashMap<Vec<String>, Option<usize>>,
) -> Result<Option<usize>> {
    gens.retain(|g| !g.is_zero());
    if gens.iter().any(|g| g.is_constant()) {
        return Ok(None);
    }
    if gens.is_empty() {
        return Ok(Some(0));
    }
    let mut key: Vec<String> = gens.iter().map(|g| g.monic().to_string()).collect();
    key.sort();
    key.dedup();
    if let Some(hit) = memo.get(&key) {
        return Ok(*hit);
    }
    let out = match gens.iter().position(|g| !g.monomial_content().is_one()) {
        None => codimension_gb(&gens, order)?,
        Some(k) => {
            let content = gens[k].monomial_content();
            let mut best: Option<usize> = None;
            for v in content.support() {
                let rest: Vec<Polynomial> = gens.iter().map(|g| vanish_var(g, v)).collect();
                if let Some(c) = codim_split(rest, order, memo)? {
                    best = Some(best.map_or(c + 1, |b| b.min(c + 1)));
                }
            }
            let mut rest = gens.clone();
            rest[k] = rest[k].div_monomial(&content);
            if let Some(c) = codim_split(rest, order, memo)? {
                best = Some(best.map_or(c, |b| b.min(c)));
            }
            best
        }
    };
    memo.insert(key, out);
    Ok(out)
}

fn codimension_gb(gens: &[Polynomial], order: &MonomialOrder) -> Result<Option<usize>> {
    let gb = buchberger_complete(gens, order)?;
    let ideal = initial_ideal(&gb)?;
    if ideal.is_unit() {
        return Ok(None);
    }
    Ok(Some(order.nvars() - ideal.dimension()?))
}
