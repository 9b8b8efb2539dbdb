use std::collections::{BTreeMap, HashMap};

use itertools::Itertools;
use num_traits::Zero;
use serde::Serialize;

use super::complex::FreeComplex;
use super::linalg::{solve_sparse, Equation, Fp, PRIME};
use super::matrix::PolynomialMatrix;
use crate::error::Result;
use crate::poly::{coeff_mod, Coeff, Monomial, Polynomial};

/// Largest number of extra rows a repaired column may touch.
pub const MAX_REPAIR_ROWS: usize = 3;

/// One changed cell, 1-based, with stated and repaired entries.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RepairRecord {
    pub level: usize,
    pub row: usize,
    pub col: usize,
    pub stated: String,
    pub repaired: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct RepairLog {
    pub records: Vec<RepairRecord>,
    /// `(level, column)` pairs, 1-based, for which no syzygy was found.
    pub failed: Vec<(usize, usize)>,
}

impl RepairLog {
    pub fn is_clean(&self) -> bool {
        self.records.is_empty() && self.failed.is_empty()
    }
}

fn entry_degree(p: &Polynomial) -> Option<u64> {
    if p.is_homogeneous() {
        p.total_degree()
    } else {
        None
    }
}

/// Most frequent value; ties go to the one seen first.
fn majority(values: &[u64]) -> Option<u64> {
    let mut counts: Vec<(u64, usize)> = Vec::new();
    for &v in values {
        match counts.iter_mut().find(|(x, _)| *x == v) {
            Some((_, c)) => *c += 1,
            None => counts.push((v, 1)),
        }
    }
    let best = counts.iter().map(|(_, c)| *c).max()?;
    counts.into_iter().find(|(_, c)| *c == best).map(|(v, _)| v)
}

struct System {
    unknowns: Vec<(usize, Monomial)>,
    equations: Vec<Equation<Coeff>>,
}

/// Equations for `sum_k prev[:, k] * q_k = target` with each `q_k` a
/// homogeneous polynomial of degree `degree - src[k]`.
fn build_system(
    prev: &PolynomialMatrix,
    rows: &[usize],
    src: &[Option<u64>],
    degree: u64,
    target: &[Polynomial],
) -> System {
    let nvars = prev.ring().nvars();
    let mut unknowns = Vec::new();
    let mut index: HashMap<(usize, Monomial), usize> = HashMap::new();
    let mut lhs: Vec<BTreeMap<usize, Coeff>> = Vec::new();
    let mut rhs: Vec<Coeff> = Vec::new();
    let mut eq_of = |i: usize, m: &Monomial, lhs: &mut Vec<BTreeMap<usize, Coeff>>, rhs: &mut Vec<Coeff>| {
        *index.entry((i, m.clone())).or_insert_with(|| {
            lhs.push(BTreeMap::new());
            rhs.push(Coeff::zero());
            lhs.len() - 1
        })
    };
    for &k in rows {
        let d = degree - src[k].expect("row has a degree");
        let column = prev.column_entries(k);
        for m in Monomial::all_of_degree(nvars, d as u32) {
            let u = unknowns.len();
            unknowns.push((k, m.clone()));
            for (i, p) in &column {
                for (t, c) in p.terms() {
                    let e = eq_of(*i, &t.mul(&m), &mut lhs, &mut rhs);
                    let cell = lhs[e].entry(u).or_insert_with(Coeff::zero);
                    *cell += c;
                }
            }
        }
    }
    for (i, p) in target.iter().enumerate() {
        for (t, c) in p.terms() {
            let e = eq_of(i, t, &mut lhs, &mut rhs);
            rhs[e] += c;
        }
    }
    System { unknowns, equations: lhs.into_iter().zip(rhs).collect() }
}

fn to_fp(eqs: &[Equation<Coeff>]) -> Option<Vec<Equation<Fp>>> {
    eqs.iter()
        .map(|(l, r)| {
            let l = l
                .iter()
                .map(|(j, c)| coeff_mod(c, PRIME).map(|v| (*j, Fp(v))))
                .collect::<Option<BTreeMap<_, _>>>()?;
            Some((l, Fp(coeff_mod(r, PRIME)?)))
        })
        .collect()
}

fn proportional_columns(a: &[Polynomial], b: &[Polynomial]) -> bool {
    let Some(r0) = a.iter().position(|p| !p.is_zero()) else { return false };
    if b[r0].is_zero() {
        return false;
    }
    let ratio = a[r0].leading_coeff().expect("nonzero") / b[r0].leading_coeff().expect("nonzero");
    a.iter().zip(b).all(|(x, y)| *x == y.scale(&ratio))
}

/// Replaces every column of `m` with `prev * col != 0` by a homogeneous
/// syzygy of `prev` that agrees with the stated column outside at most
/// [`MAX_REPAIR_ROWS`] rows. `src[k]` is the degree of the `k`-th basis
/// element of the source of `prev`. Returns the repaired matrix, the column
/// degrees, and the log entries for this level.
pub fn repair_differential(
    prev: &PolynomialMatrix,
    m: &PolynomialMatrix,
    src: &[Option<u64>],
    level: usize,
) -> Result<(PolynomialMatrix, Vec<Option<u64>>, RepairLog)> {
    let ring = m.ring().clone();
    let mut out = m.clone();
    let mut log = RepairLog::default();
    let mut col_degrees = Vec::with_capacity(m.cols());
    for j in 0..m.cols() {
        let stated = m.column(j);
        let degs: Vec<u64> = (0..m.rows())
            .filter(|&k| !stated[k].is_zero())
            .filter_map(|k| Some(src[k]? + entry_degree(&stated[k])?))
            .collect();
        let degree = majority(&degs);
        col_degrees.push(degree);
        let Some(degree) = degree else {
            if stated.iter().all(Polynomial::is_zero) {
                continue;
            }
            log.failed.push((level, j + 1));
            continue;
        };
        let fits = |k: usize| matches!(src[k], Some(s) if s <= degree);
        let forced: Vec<usize> = (0..m.rows())
            .filter(|&k| {
                !stated[k].is_zero()
                    && !matches!((src[k], entry_degree(&stated[k])), (Some(s), Some(e)) if s + e == degree)
            })
            .collect();
        let mut base = stated.clone();
        for &k in &forced {
            base[k] = Polynomial::zero(&ring);
        }
        let image = prev.apply(&base)?;
        if forced.is_empty() && image.iter().all(Polynomial::is_zero) {
            continue;
        }
        let forced_fit: Vec<usize> = forced.iter().copied().filter(|&k| fits(k)).collect();
        let candidates: Vec<usize> = (0..m.rows())
            .filter(|&k| !forced.contains(&k) && fits(k) && !prev.column_entries(k).is_empty())
            .collect();
        let mut found: Option<Vec<Polynomial>> = None;
        'search: for size in 0..=MAX_REPAIR_ROWS {
            for subset in candidates.iter().copied().combinations(size) {
                let rows: Vec<usize> = subset.into_iter().chain(forced_fit.iter().copied()).collect();
                let system = build_system(prev, &rows, src, degree, &image);
                if system.unknowns.is_empty() {
                    if image.iter().all(Polynomial::is_zero) {
                        if let Some(col) = accept(&base, &out, j) {
                            found = Some(col);
                            break 'search;
                        }
                    }
                    continue;
                }
                if let Some(fp) = to_fp(&system.equations) {
                    if solve_sparse(fp, system.unknowns.len()).is_none() {
                        continue;
                    }
                }
                let Some(sol) = solve_sparse(system.equations, system.unknowns.len()) else { continue };
                let mut col = base.clone();
                for ((k, mono), c) in system.unknowns.iter().zip(sol) {
                    if !c.is_zero() {
                        col[*k] = col[*k].try_sub(&Polynomial::term(&ring, c, mono.clone()))?;
                    }
                }
                if let Some(col) = accept(&col, &out, j) {
                    found = Some(col);
                    break 'search;
                }
            }
        }
        match found {
            Some(col) => {
                for (r, (old, new)) in stated.iter().zip(&col).enumerate() {
                    if old != new {
                        log.records.push(RepairRecord {
                            level,
                            row: r + 1,
                            col: j + 1,
                            stated: old.to_string(),
                            repaired: new.to_string(),
                        });
                    }
                }
                out.set_column(j, &col);
            }
            None => log.failed.push((level, j + 1)),
        }
    }
    Ok((out, col_degrees, log))
}

/// A candidate column is kept if it is nonzero, has no constant entries and
/// is not a multiple of another column.
fn accept(col: &[Polynomial], m: &PolynomialMatrix, j: usize) -> Option<Vec<Polynomial>> {
    if col.iter().all(Polynomial::is_zero) {
        return None;
    }
    if col.iter().any(|p| !p.is_zero() && !p.constant_coeff().is_zero()) {
        return None;
    }
    for other in (0..m.cols()).filter(|&c| c != j) {
        if proportional_columns(col, &m.column(other)) {
            return None;
        }
    }
    Some(col.to_vec())
}

/// Repairs `d2, d3, ...` in turn; `d1` is never changed.
pub fn repair_complex(c: &FreeComplex) -> Result<(FreeComplex, RepairLog)> {
    let mut fixed = c.clone();
    let mut log = RepairLog::default();
    let Some(d1) = c.differentials().first() else { return Ok((fixed, log)) };
    let mut src: Vec<Option<u64>> = (0..d1.cols())
        .map(|k| d1.column_entries(k).first().and_then(|(_, p)| entry_degree(p)))
        .collect();
    for level in 2..=c.len() {
        let prev = fixed.differential(level - 1).clone();
        let (m, degs, l) = repair_differential(&prev, fixed.differential(level), &src, level)?;
        fixed.replace(level, m)?;
        log.records.extend(l.records);
        log.failed.extend(l.failed);
        src = degs;
    }
    Ok((fixed, log))
}
