use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{Coeff, Polynomial, Ring};

/// A sparse matrix of polynomials; absent cells are zero. Indices are
/// 0-based in the API and 1-based in serialized form.
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Polynomial>,
}

/// Serialized form: shape plus `[row, col, "poly"]` triples.
#[derive(Clone, Debug, Serialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, String)>,
}

impl PolynomialMatrix {
    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Self {
        PolynomialMatrix { ring: ring.clone(), rows, cols, entries: BTreeMap::new() }
    }

    pub fn row_vector(ring: &Ring, polys: &[Polynomial]) -> Result<Self> {
        let mut m = Self::zeros(ring, 1, polys.len());
        for (j, p) in polys.iter().enumerate() {
            m.set(0, j, p.map_to(ring)?);
        }
        Ok(m)
    }

    pub fn from_rows(ring: &Ring, rows: &[Vec<Polynomial>]) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(ring, rows.len(), ncols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::ShapeMismatch("ragged rows".into()));
            }
            for (j, p) in row.iter().enumerate() {
                m.set(i, j, p.map_to(ring)?);
            }
        }
        Ok(m)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&Polynomial> {
        self.entries.get(&(r, c))
    }

    /// Entry as an owned polynomial (zero if absent).
    pub fn entry(&self, r: usize, c: usize) -> Polynomial {
        self.get(r, c).cloned().unwrap_or_else(|| Polynomial::zero(&self.ring))
    }

    /// Sets a cell; zero removes it. Panics when out of range.
    pub fn set(&mut self, r: usize, c: usize, p: Polynomial) {
        assert!(r < self.rows && c < self.cols, "cell ({r}, {c}) out of range");
        assert!(p.ring().same_as(&self.ring), "entry in a different ring");
        if p.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), p);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &Polynomial)> {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn column(&self, c: usize) -> Vec<Polynomial> {
        (0..self.rows).map(|r| self.entry(r, c)).collect()
    }

    pub fn set_column(&mut self, c: usize, col: &[Polynomial]) {
        assert_eq!(col.len(), self.rows);
        for (r, p) in col.iter().enumerate() {
            self.set(r, c, p.clone());
        }
    }

    pub fn column_entries(&self, c: usize) -> Vec<(usize, &Polynomial)> {
        self.entries
            .iter()
            .filter(|((_, cc), _)| *cc == c)
            .map(|((r, _), p)| (*r, p))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn mul(&self, other: &PolynomialMatrix) -> Result<PolynomialMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if !self.ring.same_as(&other.ring) {
            return Err(Error::RingMismatch);
        }
        let mut by_row: BTreeMap<usize, Vec<(usize, &Polynomial)>> = BTreeMap::new();
        for ((r, c), p) in &other.entries {
            by_row.entry(*r).or_default().push((*c, p));
        }
        let mut acc: BTreeMap<(usize, usize), Polynomial> = BTreeMap::new();
        for ((i, k), a) in &self.entries {
            if let Some(row) = by_row.get(k) {
                for (j, b) in row {
                    let prod = a.try_mul(b)?;
                    let cell = acc.entry((*i, *j)).or_insert_with(|| Polynomial::zero(&self.ring));
                    *cell = cell.try_add(&prod)?;
                }
            }
        }
        acc.retain(|_, p| !p.is_zero());
        Ok(PolynomialMatrix { ring: self.ring.clone(), rows: self.rows, cols: other.cols, entries: acc })
    }

    /// Matrix times a column vector.
    pub fn apply(&self, v: &[Polynomial]) -> Result<Vec<Polynomial>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        let mut out = vec![Polynomial::zero(&self.ring); self.rows];
        for ((r, c), p) in &self.entries {
            if !v[*c].is_zero() {
                out[*r] = out[*r].try_add(&p.try_mul(&v[*c])?)?;
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> PolynomialMatrix {
        PolynomialMatrix {
            ring: self.ring.clone(),
            rows: self.cols,
            cols: self.rows,
            entries: self.entries.iter().map(|((r, c), p)| ((*c, *r), p.clone())).collect(),
        }
    }

    /// Submatrix on the given (0-based) rows and columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<PolynomialMatrix> {
        check_indices(rows, self.rows, "row")?;
        check_indices(cols, self.cols, "column")?;
        let mut m = Self::zeros(&self.ring, rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                if let Some(p) = self.get(r, c) {
                    m.set(i, j, p.clone());
                }
            }
        }
        Ok(m)
    }

    pub fn to_dense(&self) -> Vec<Vec<Polynomial>> {
        (0..self.rows).map(|r| (0..self.cols).map(|c| self.entry(r, c)).collect()).collect()
    }

    /// Entries evaluated at an integer point modulo `p`; `None` if a
    /// denominator vanishes.
    pub fn eval_mod(&self, point: &[u64], p: u64) -> Option<Vec<Vec<u64>>> {
        let mut out = vec![vec![0u64; self.cols]; self.rows];
        for ((r, c), q) in &self.entries {
            out[*r][*c] = q.eval_mod(point, p)?;
        }
        Some(out)
    }

    /// Cells with a nonzero constant term.
    pub fn constant_cells(&self) -> Vec<(usize, usize, Coeff)> {
        self.entries
            .iter()
            .filter_map(|((r, c), p)| {
                let k = p.constant_coeff();
                (!k.is_zero()).then_some((*r, *c, k))
            })
            .collect()
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|((r, c), p)| (r + 1, c + 1, p.to_string())).collect(),
        }
    }
}

/// Checks a minor index list: in range and strictly increasing.
pub fn check_indices(idx: &[usize], bound: usize, what: &str) -> Result<()> {
    for (k, &i) in idx.iter().enumerate() {
        if i >= bound {
            return Err(Error::BadIndexList(format!("{what} index {} out of range 1..={bound}", i + 1)));
        }
        if k > 0 && idx[k - 1] >= i {
            return Err(Error::BadIndexList(format!("{what} indices are not strictly increasing")));
        }
    }
    Ok(())
}
