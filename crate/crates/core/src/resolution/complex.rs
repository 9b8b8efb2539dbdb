use serde::Serialize;

use super::matrix::{MatrixJson, PolynomialMatrix};
use crate::error::{Error, Result};

/// Differentials `d1, ..., dk` of a finite free complex, `d_i: F_i -> F_{i-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeComplex {
    differentials: Vec<PolynomialMatrix>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplexJson {
    pub ranks: Vec<usize>,
    pub expected_ranks: Vec<usize>,
    pub differentials: Vec<MatrixJson>,
}

/// A nonzero cell of `d_i * d_{i+1}` (0-based cell indices).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompositionDefect {
    pub level: usize,
    pub row: usize,
    pub col: usize,
    pub value: String,
}

impl FreeComplex {
    pub fn new(differentials: Vec<PolynomialMatrix>) -> Result<Self> {
        for (i, w) in differentials.windows(2).enumerate() {
            if w[0].cols() != w[1].rows() {
                return Err(Error::ShapeMismatch(format!(
                    "d{} has {} columns but d{} has {} rows",
                    i + 1,
                    w[0].cols(),
                    i + 2,
                    w[1].rows()
                )));
            }
            if !w[0].ring().same_as(w[1].ring()) {
                return Err(Error::RingMismatch);
            }
        }
        Ok(FreeComplex { differentials })
    }

    pub fn len(&self) -> usize {
        self.differentials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.differentials.is_empty()
    }

    pub fn differentials(&self) -> &[PolynomialMatrix] {
        &self.differentials
    }

    /// `d_level`, 1-based.
    pub fn differential(&self, level: usize) -> &PolynomialMatrix {
        &self.differentials[level - 1]
    }

    pub fn replace(&mut self, level: usize, d: PolynomialMatrix) -> Result<()> {
        let old = &self.differentials[level - 1];
        if old.shape() != d.shape() {
            return Err(Error::ShapeMismatch(format!("replacement for d{level} changes its shape")));
        }
        self.differentials[level - 1] = d;
        Ok(())
    }

    /// Ranks of `F_0, ..., F_k`.
    pub fn module_ranks(&self) -> Vec<usize> {
        let mut out = vec![self.differentials.first().map_or(0, |d| d.rows())];
        out.extend(self.differentials.iter().map(|d| d.cols()));
        out
    }

    /// `r_i = sum_{j >= i} (-1)^(j-i) rank F_j` for `i = 1..k`. Negative
    /// values are clamped to zero (they make the complex non-exact anyway).
    pub fn expected_ranks(&self) -> Vec<usize> {
        let f = self.module_ranks();
        let k = self.differentials.len();
        let mut out = vec![0usize; k];
        let mut acc: i64 = 0;
        for i in (1..=k).rev() {
            acc = f[i] as i64 - acc;
            out[i - 1] = acc.max(0) as usize;
        }
        out
    }

    pub fn to_json(&self, ranks: Vec<usize>) -> ComplexJson {
        ComplexJson {
            ranks,
            expected_ranks: self.expected_ranks(),
            differentials: self.differentials.iter().map(PolynomialMatrix::to_json).collect(),
        }
    }
}

/// Nonzero cells of consecutive products; empty means the complex is one.
pub fn composition_defects(c: &FreeComplex) -> Result<Vec<CompositionDefect>> {
    let mut out = Vec::new();
    for (i, w) in c.differentials.windows(2).enumerate() {
        let prod = w[0].mul(&w[1])?;
        for ((r, col), p) in prod.entries() {
            out.push(CompositionDefect { level: i + 1, row: r, col, value: p.to_string() });
        }
    }
    Ok(out)
}

/// True iff every `d_i * d_{i+1}` vanishes.
pub fn compose_check(c: &FreeComplex) -> Result<bool> {
    Ok(composition_defects(c)?.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Ring;

    #[test]
    fn koszul_in_two_variables() {
        let r = Ring::degrevlex(&["x", "y"]);
        let p = |s: &str| r.parse(s).unwrap();
        let d1 = PolynomialMatrix::row_vector(&r, &[p("x"), p("y")]).unwrap();
        let d2 = PolynomialMatrix::from_rows(&r, &[vec![p("-y")], vec![p("x")]]).unwrap();
        let c = FreeComplex::new(vec![d1.clone(), d2]).unwrap();
        assert!(compose_check(&c).unwrap());
        assert_eq!(c.expected_ranks(), vec![1, 1]);
        let bad = FreeComplex::new(vec![d1.clone(), PolynomialMatrix::from_rows(&r, &[vec![p("y")], vec![p("x")]]).unwrap()]).unwrap();
        let defects = composition_defects(&bad).unwrap();
        assert_eq!(defects.len(), 1);
        assert_eq!(defects[0].value, "2*x*y");
        let zero = FreeComplex::new(vec![d1, PolynomialMatrix::zeros(&r, 2, 3)]).unwrap();
        assert!(compose_check(&zero).unwrap());
        assert!(FreeComplex::new(vec![PolynomialMatrix::zeros(&r, 1, 2), PolynomialMatrix::zeros(&r, 3, 1)]).is_err());
    }
}
