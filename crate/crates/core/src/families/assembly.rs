use std::collections::BTreeMap;

use serde::Serialize;

use crate::poly::{Polynomial, Ring};
use crate::resolution::PolynomialMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiagnosticKind {
    /// A second rule named a different value for an occupied cell.
    Conflict,
    /// A rule named a cell outside the matrix.
    OutOfRange,
}

/// An assembly problem; indices are 1-based as in the entry rules.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Diagnostic {
    pub matrix: String,
    pub kind: DiagnosticKind,
    pub rule: String,
    pub row: usize,
    pub col: usize,
    pub kept: Option<String>,
    pub rejected: String,
}

/// Builds a sparse matrix from 1-based entry rules. The first rule to name
/// a cell wins; later disagreeing rules and out-of-range cells are recorded.
pub struct MatrixAssembler {
    name: String,
    matrix: PolynomialMatrix,
    writers: BTreeMap<(usize, usize), String>,
    diagnostics: Vec<Diagnostic>,
}

impl MatrixAssembler {
    pub fn new(name: impl Into<String>, ring: &Ring, rows: usize, cols: usize) -> Self {
        MatrixAssembler {
            name: name.into(),
            matrix: PolynomialMatrix::zeros(ring, rows, cols),
            writers: BTreeMap::new(),
            diagnostics: Vec::new(),
        }
    }

    pub fn put(&mut self, rule: &str, row: usize, col: usize, value: Polynomial) {
        let (rows, cols) = self.matrix.shape();
        if row == 0 || col == 0 || row > rows || col > cols {
            self.diagnostics.push(Diagnostic {
                matrix: self.name.clone(),
                kind: DiagnosticKind::OutOfRange,
                rule: rule.to_string(),
                row,
                col,
                kept: None,
                rejected: value.to_string(),
            });
            return;
        }
        let cell = (row - 1, col - 1);
        if let Some(prev) = self.writers.get(&cell) {
            let current = self.matrix.entry(cell.0, cell.1);
            if current != value {
                self.diagnostics.push(Diagnostic {
                    matrix: self.name.clone(),
                    kind: DiagnosticKind::Conflict,
                    rule: format!("{rule} (after {prev})"),
                    row,
                    col,
                    kept: Some(current.to_string()),
                    rejected: value.to_string(),
                });
            }
            return;
        }
        self.writers.insert(cell, rule.to_string());
        self.matrix.set(cell.0, cell.1, value);
    }

    pub fn finish(self) -> (PolynomialMatrix, Vec<Diagnostic>) {
        (self.matrix, self.diagnostics)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_writer() {
        let r = Ring::degrevlex(&["x", "y"]);
        let mut a = MatrixAssembler::new("M", &r, 2, 2);
        a.put("a", 1, 1, r.parse("x").unwrap());
        a.put("b", 1, 1, r.parse("x").unwrap());
        a.put("c", 1, 1, r.parse("y").unwrap());
        a.put("d", 3, 1, r.parse("y").unwrap());
        let (m, diags) = a.finish();
        assert_eq!(m.entry(0, 0).to_string(), "x");
        assert_eq!(diags.len(), 2);
        assert_eq!(diags[0].kind, DiagnosticKind::Conflict);
        assert_eq!(diags[0].kept.as_deref(), Some("x"));
        assert_eq!(diags[1].kind, DiagnosticKind::OutOfRange);
    }
}
