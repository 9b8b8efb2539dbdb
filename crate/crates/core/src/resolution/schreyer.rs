use std::cmp::Ordering;

use itertools::Itertools;
use num_traits::One;
use serde::Serialize;

use super::matrix::PolynomialMatrix;
use crate::error::{Error, Result};
use crate::groebner::buchberger_complete;
use crate::poly::{Coeff, Monomial, MonomialOrder, Polynomial, Ring};

/// Inputs beyond this size are refused.
pub const MAX_SCHREYER_VARS: usize = 5;
pub const MAX_SCHREYER_GENERATORS: usize = 40;

/// Order in which unit entries are split off during minimization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinimizationOrder {
    /// Differentials from `d1` upward, cells row by row.
    RowMajor,
    /// Differentials from the top down, cells column by column.
    ColumnMajor,
}

/// A graded free resolution `F_0 <- F_1 <- ...` of `R / I` with the degrees
/// of the basis elements of each `F_i`.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    pub differentials: Vec<PolynomialMatrix>,
    pub degrees: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedBetti {
    /// `(homological index, degree, count)` with positive counts.
    pub entries: Vec<(usize, u64, usize)>,
}

impl FreeResolution {
    /// `(rank F_0, rank F_1, ...)` without trailing zeros.
    pub fn ranks(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.degrees.iter().map(Vec::len).collect();
        while v.len() > 1 && v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    pub fn graded(&self) -> GradedBetti {
        let mut entries = Vec::new();
        for (i, degs) in self.degrees.iter().enumerate() {
            let mut sorted = degs.clone();
            sorted.sort_unstable();
            for (d, group) in &sorted.into_iter().chunk_by(|d| *d) {
                entries.push((i, d, group.count()));
            }
        }
        GradedBetti { entries }
    }
}

#[derive(Clone)]
struct Lead {
    comp: usize,
    mono: Monomial,
    coeff: Coeff,
}

/// Schreyer order on a free module whose basis carries `marks`.
struct ModuleOrder<'a> {
    order: &'a MonomialOrder,
    marks: &'a [Monomial],
}

impl ModuleOrder<'_> {
    fn cmp(&self, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
        let ka = a.1.mul(&self.marks[a.0]);
        let kb = b.1.mul(&self.marks[b.0]);
        self.order.compare(&ka, &kb).then_with(|| b.0.cmp(&a.0))
    }

    fn lead(&self, v: &[Polynomial]) -> Option<Lead> {
        let mut best: Option<Lead> = None;
        for (i, p) in v.iter().enumerate() {
            let Some((m, c)) = p.leading_term() else { continue };
            let better = match &best {
                None => true,
                Some(b) => self.cmp((i, m), (b.comp, &b.mono)) == Ordering::Greater,
            };
            if better {
                best = Some(Lead { comp: i, mono: m.clone(), coeff: c.clone() });
            }
        }
        best
    }
}

fn sub_multiple(f: &mut [Polynomial], c: &Coeff, m: &Monomial, g: &[Polynomial]) {
    let neg = -c.clone();
    for (fi, gi) in f.iter_mut().zip(g) {
        if !gi.is_zero() {
            *fi = fi.add_scaled(&neg, m, gi);
        }
    }
}

/// Reduces `f` to zero against `basis`, returning the quotients; errors if
/// a nonzero remainder is left.
fn standard_representation(
    mut f: Vec<Polynomial>,
    basis: &[Vec<Polynomial>],
    leads: &[Lead],
    ord: &ModuleOrder,
    ring: &Ring,
) -> Result<Vec<Polynomial>> {
    let mut q = vec![Polynomial::zero(ring); basis.len()];
    while let Some(lt) = ord.lead(&f) {
        let Some(k) = leads.iter().position(|l| l.comp == lt.comp && l.mono.divides(&lt.mono)) else {
            return Err(Error::Contract("syzygy generators are not a Groebner basis".into()));
        };
        let m = leads[k].mono.quotient_of(&lt.mono).expect("divides");
        let c = &lt.coeff / &leads[k].coeff;
        sub_multiple(&mut f, &c, &m, &basis[k]);
        q[k] = q[k].try_add(&Polynomial::term(ring, c, m))?;
    }
    Ok(q)
}

/// One Schreyer step: generators of the syzygies of `basis`, which must be
/// a Groebner basis for the order given by `marks`.
fn syzygies(
    basis: &[Vec<Polynomial>],
    marks: &[Monomial],
    order: &MonomialOrder,
    ring: &Ring,
) -> Result<Vec<Vec<Polynomial>>> {
    let ord = ModuleOrder { order, marks };
    let leads: Vec<Lead> = basis.iter().map(|v| ord.lead(v).expect("nonzero element")).collect();
    let mut out = Vec::new();
    for a in 0..basis.len() {
        for b in a + 1..basis.len() {
            if leads[a].comp != leads[b].comp {
                continue;
            }
            let l = leads[a].mono.lcm(&leads[b].mono);
            let ma = leads[a].mono.quotient_of(&l).expect("divides");
            let mb = leads[b].mono.quotient_of(&l).expect("divides");
            let ca = Coeff::one() / &leads[a].coeff;
            let cb = Coeff::one() / &leads[b].coeff;
            let mut s = vec![Polynomial::zero(ring); basis[a].len()];
            sub_multiple(&mut s, &-ca.clone(), &ma, &basis[a]);
            sub_multiple(&mut s, &cb, &mb, &basis[b]);
            let q = standard_representation(s, basis, &leads, &ord, ring)?;
            let mut syz: Vec<Polynomial> = q.into_iter().map(|p| p.neg()).collect();
            syz[a] = syz[a].try_add(&Polynomial::term(ring, ca, ma))?;
            syz[b] = syz[b].try_sub(&Polynomial::term(ring, cb, mb))?;
            out.push(syz);
        }
    }
    Ok(out)
}

/// Drops elements whose lead is divisible by an earlier kept lead and
/// sorts by component, then lexicographically descending in the monomial.
fn prune_and_sort(elems: Vec<Vec<Polynomial>>, ord: &ModuleOrder) -> Vec<(Vec<Polynomial>, Lead)> {
    let mut with_leads: Vec<(Vec<Polynomial>, Lead)> = elems
        .into_iter()
        .filter_map(|v| ord.lead(&v).map(|l| (v, l)))
        .collect();
    with_leads.sort_by(|x, y| {
        x.1.comp
            .cmp(&y.1.comp)
            .then(x.1.mono.degree().cmp(&y.1.mono.degree()))
            .then(y.1.mono.exponents().cmp(x.1.mono.exponents()))
    });
    let mut kept: Vec<(Vec<Polynomial>, Lead)> = Vec::new();
    for (v, l) in with_leads {
        if !kept.iter().any(|(_, k)| k.comp == l.comp && k.mono.divides(&l.mono)) {
            kept.push((v, l));
        }
    }
    kept.sort_by(|x, y| x.1.comp.cmp(&y.1.comp).then(y.1.mono.exponents().cmp(x.1.mono.exponents())));
    kept
}

fn check_input(gens: &[Polynomial]) -> Result<Ring> {
    let first = gens.first().ok_or_else(|| Error::InvalidParameters("no generators".into()))?;
    let ring = first.ring().clone();
    if ring.nvars() > MAX_SCHREYER_VARS || gens.len() > MAX_SCHREYER_GENERATORS {
        return Err(Error::ScaleGuard(format!(
            "syzygy computation limited to {MAX_SCHREYER_VARS} variables and {MAX_SCHREYER_GENERATORS} generators"
        )));
    }
    if let Some(g) = gens.iter().find(|g| !g.is_homogeneous()) {
        return Err(Error::NonHomogeneous(g.to_string()));
    }
    Ok(ring)
}

/// Schreyer's resolution of `R / <gens>` (not minimal).
pub fn schreyer_resolution(gens: &[Polynomial], order: &MonomialOrder) -> Result<FreeResolution> {
    let ring = check_input(gens)?.with_order(order.clone())?;
    let gb = buchberger_complete(gens, order)?;
    let gb: Vec<Polynomial> = gb.into_elements().into_iter().map(|p| p.reorder(&ring)).collect::<Result<_>>()?;
    if gb.iter().any(|p| p.is_constant()) {
        return Err(Error::UnitIdeal);
    }
    let nvars = ring.nvars();
    let mut degrees = vec![vec![0u64]];
    let mut differentials = Vec::new();
    let mut marks = vec![Monomial::one(nvars)];
    let mut level: Vec<Vec<Polynomial>> = gb.into_iter().map(|p| vec![p]).collect();
    while !level.is_empty() {
        if differentials.len() > nvars + 1 {
            return Err(Error::Contract("Schreyer resolution did not terminate".into()));
        }
        let ord = ModuleOrder { order, marks: &marks };
        let kept = prune_and_sort(level, &ord);
        let prev_degrees = degrees.last().expect("nonempty");
        let mut d = PolynomialMatrix::zeros(&ring, marks.len(), kept.len());
        let mut new_marks = Vec::with_capacity(kept.len());
        let mut new_degrees = Vec::with_capacity(kept.len());
        for (j, (v, l)) in kept.iter().enumerate() {
            d.set_column(j, v);
            new_marks.push(l.mono.mul(&marks[l.comp]));
            new_degrees.push(l.mono.degree() + prev_degrees[l.comp]);
        }
        let basis: Vec<Vec<Polynomial>> = kept.into_iter().map(|(v, _)| v).collect();
        differentials.push(d);
        degrees.push(new_degrees);
        level = syzygies(&basis, &marks, order, &ring)?;
        marks = new_marks;
    }
    Ok(FreeResolution { differentials, degrees })
}

fn all_but(skip: usize, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| i != skip).collect()
}

fn find_unit(res: &FreeResolution, how: MinimizationOrder) -> Option<(usize, usize, usize)> {
    let levels: Vec<usize> = match how {
        MinimizationOrder::RowMajor => (0..res.differentials.len()).collect(),
        MinimizationOrder::ColumnMajor => (0..res.differentials.len()).rev().collect(),
    };
    for i in levels {
        let d = &res.differentials[i];
        let mut cells: Vec<(usize, usize)> = d
            .entries()
            .filter(|(_, p)| p.is_constant() && !p.is_zero())
            .map(|(rc, _)| rc)
            .collect();
        if how == MinimizationOrder::ColumnMajor {
            cells.sort_by_key(|&(r, c)| (c, r));
        }
        if let Some(&(r, c)) = cells.first() {
            return Some((i, r, c));
        }
    }
    None
}

/// Splits off unit entries until every entry lies in the maximal ideal.
pub fn minimize(mut res: FreeResolution, how: MinimizationOrder) -> Result<FreeResolution> {
    while let Some((i, r, c)) = find_unit(&res, how) {
        let d = &res.differentials[i];
        let u = d.entry(r, c).constant_coeff();
        let col = d.column_entries(c).into_iter().map(|(k, p)| (k, p.clone())).collect::<Vec<_>>();
        let row: Vec<(usize, Polynomial)> = (0..d.cols())
            .filter_map(|j| d.get(r, j).map(|p| (j, p.clone())))
            .collect();
        let mut nd = d.clone();
        let inv = Coeff::one() / u;
        for (k, a) in &col {
            if *k == r {
                continue;
            }
            let a = a.scale(&inv);
            for (j, b) in &row {
                if *j == c {
                    continue;
                }
                let v = nd.entry(*k, *j).try_sub(&a.try_mul(b)?)?;
                nd.set(*k, *j, v);
            }
        }
        let keep_rows = all_but(r, nd.rows());
        let keep_cols = all_but(c, nd.cols());
        res.differentials[i] = nd.submatrix(&keep_rows, &keep_cols)?;
        if i > 0 {
            let prev = &res.differentials[i - 1];
            let all_rows: Vec<usize> = (0..prev.rows()).collect();
            res.differentials[i - 1] = prev.submatrix(&all_rows, &all_but(r, prev.cols()))?;
        }
        if i + 1 < res.differentials.len() {
            let next = &res.differentials[i + 1];
            let all_cols: Vec<usize> = (0..next.cols()).collect();
            res.differentials[i + 1] = next.submatrix(&all_but(c, next.rows()), &all_cols)?;
        }
        res.degrees[i].remove(r);
        res.degrees[i + 1].remove(c);
    }
    while res.differentials.last().is_some_and(|d| d.cols() == 0) {
        res.differentials.pop();
        res.degrees.pop();
    }
    Ok(res)
}

/// Minimal free resolution of `R / <gens>`.
pub fn minimal_resolution(gens: &[Polynomial], order: &MonomialOrder, how: MinimizationOrder) -> Result<FreeResolution> {
    minimize(schreyer_resolution(gens, order)?, how)
}

/// Betti numbers `(b_0, b_1, ...)` of `R / <gens>`.
pub fn betti_via_schreyer(gens: &[Polynomial], order: &MonomialOrder) -> Result<Vec<usize>> {
    betti_via_schreyer_with(gens, order, MinimizationOrder::RowMajor)
}

pub fn betti_via_schreyer_with(gens: &[Polynomial], order: &MonomialOrder, how: MinimizationOrder) -> Result<Vec<usize>> {
    Ok(minimal_resolution(gens, order, how)?.ranks())
}
