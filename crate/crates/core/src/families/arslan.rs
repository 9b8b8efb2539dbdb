use crate::error::{Error, Result};
use crate::poly::{coeff_int, Monomial, Polynomial, Ring};
use crate::resolution::{FreeComplex, MinorSpec, PolynomialMatrix};
use crate::toric::{affine_ring, projective_ring, Family, Mode, MonomialCurveSpec};

use super::assembly::{Diagnostic, MatrixAssembler};
use super::{polys, FamilyComplex, InstanceJson, Labeled};

/// The curve with exponents `(h(h+1), h(h+1)+1, (h+1)^2, (h+1)^2+1)`.
#[derive(Clone, Debug)]
pub struct ArslanInstance {
    pub h: u32,
    pub spec: MonomialCurveSpec,
    pub ring: Ring,
    /// `w, g_0..g_h, q_0..q_h` in the projective ring.
    pub gb: Vec<Labeled>,
    pub matrices: Vec<PolynomialMatrix>,
    pub diagnostics: Vec<Diagnostic>,
}

fn poly(ring: &Ring, terms: &[(i64, [u32; 5])]) -> Polynomial {
    Polynomial::from_terms(ring, terms.iter().map(|(c, e)| (Monomial::new(e), coeff_int(*c))).collect())
}

pub fn arslan_system(h: u32) -> Result<ArslanInstance> {
    if h < 2 {
        return Err(Error::InvalidParameters(format!("need h >= 2, got h={h}")));
    }
    let spec = MonomialCurveSpec::for_family(Family::Arslan { h }, Mode::Projective)?;
    let ring = projective_ring(4);
    let p = |t: &[(i64, [u32; 5])]| poly(&ring, t);
    let mut gb = vec![Labeled::new("w", p(&[(1, [0, 0, 1, 1, 0]), (-1, [0, 1, 0, 0, 1])]))];
    for i in 0..h {
        gb.push(Labeled::new(
            format!("g{i}"),
            p(&[(1, [0, i, 0, h - i + 1, 0]), (-1, [0, 0, i + 1, 0, h - i])]),
        ));
    }
    gb.push(Labeled::new(format!("g{h}"), p(&[(1, [0, 0, h + 1, 0, 0]), (-1, [0, h, 0, 1, 0])])));
    for j in 0..=h {
        gb.push(Labeled::new(
            format!("q{j}"),
            p(&[(1, [0, j + 1, h - j, 0, 0]), (-1, [1, 0, 0, j, h - j])]),
        ));
    }
    let mut inst = ArslanInstance { h, spec, ring, gb, matrices: Vec::new(), diagnostics: Vec::new() };
    inst.assemble();
    Ok(inst)
}

impl ArslanInstance {
    pub fn gb_polys(&self) -> Vec<Polynomial> {
        polys(&self.gb)
    }

    /// The basis with `x0 = 1`, generating the affine curve ideal.
    pub fn affine_generators(&self) -> Result<Vec<Polynomial>> {
        let a = affine_ring(4);
        self.gb.iter().map(|l| l.poly.dehomogenize("x0", &a)).collect()
    }

    pub fn affine_spec(&self) -> MonomialCurveSpec {
        self.spec.with_mode(Mode::Affine).expect("valid")
    }

    fn assemble(&mut self) {
        let r = &self.ring;
        let h = self.h as usize;
        let e = self.h;
        let n = 2 * h + 3;
        let p = |t: &[(i64, [u32; 5])]| poly(r, t);
        let x = |i: usize| {
            let mut m = [0u32; 5];
            m[i] = 1;
            m
        };
        let neg = |i: usize| p(&[(-1, x(i))]);
        let var = |i: usize| p(&[(1, x(i))]);

        let mut a1 = MatrixAssembler::new("A1", r, 1, n);
        for (k, l) in self.gb.iter().enumerate() {
            a1.put("A1", 1, k + 1, l.poly.clone());
        }

        let mut phi = MatrixAssembler::new("A2", r, n, 4 * h + 1);
        phi.put("1", h + 2, 1, var(1));
        phi.put("1", h + 3, 1, neg(2));
        phi.put("1", 2 * h + 3, 1, var(3));
        phi.put("1", 2, 1, var(0));
        for i in 0..h {
            let iu = i as u32;
            phi.put("2", 1, 2 + i, p(&[(1, [1, 0, 0, iu, e - iu - 1])]));
            phi.put("2", h + 3 + i, 2 + i, neg(1));
            phi.put("2", h + 4 + i, 2 + i, var(2));
        }
        for i in 0..h - 1 {
            let iu = i as u32;
            phi.put("3", 1, h + 2 + i, p(&[(1, [0, 0, iu + 1, 0, e - iu - 1])]));
            phi.put("3", 2 + i, h + 2 + i, neg(1));
            phi.put("3", 3 + i, h + 2 + i, var(3));
        }
        phi.put("4", 1, 2 * h + 1, p(&[(1, [0, 0, e, 0, 0])]));
        phi.put("4", h + 1, 2 * h + 1, neg(1));
        phi.put("4", h + 2, 2 * h + 1, neg(3));
        for i in 0..h - 1 {
            let iu = i as u32;
            phi.put("5", 1, 2 * h + 2 + i, p(&[(1, [0, iu, 0, e - iu, 0])]));
            phi.put("5", 2 + i, 2 * h + 2 + i, neg(2));
            phi.put("5", 3 + i, 2 * h + 2 + i, var(4));
        }
        phi.put("6", 1, 3 * h + 1, p(&[(1, [0, e - 1, 0, 1, 0])]));
        phi.put("6", h + 1, 3 * h + 1, neg(2));
        phi.put("6", h + 2, 3 * h + 1, neg(4));
        for i in 0..h {
            let iu = i as u32;
            phi.put("7", 1, 3 * h + 2 + i, p(&[(1, [0, iu + 1, e - iu - 1, 0, 0])]));
            phi.put("7", h + 3 + i, 3 * h + 2 + i, neg(3));
            phi.put("7", h + 4 + i, 3 * h + 2 + i, var(4));
        }

        let mut psi = MatrixAssembler::new("A3", r, 4 * h + 1, 2 * h - 1);
        for i in 0..h - 1 {
            psi.put("a", 2 * h + 2 + i, 1 + i, var(1));
            psi.put("a", h + 2 + i, 1 + i, neg(2));
            psi.put("a", 2 * h + 3 + i, 1 + i, neg(3));
            psi.put("a", h + 3 + i, 1 + i, var(4));
        }
        for i in 0..h - 1 {
            psi.put("b", 3 * h + 2 + i, h + i, var(1));
            psi.put("b", 3 * h + 3 + i, h + i, neg(2));
            psi.put("b", 2 + i, h + i, neg(3));
            psi.put("b", 3 + i, h + i, var(4));
        }
        let c = 2 * h - 1;
        let rules: [(usize, i64, [u32; 5]); 10] = [
            (3 * h + 1, 1, [0, 2, 0, 0, 0]),
            (2 * h + 1, -1, [0, 1, 1, 0, 0]),
            (3 * h + 2, 1, [0, 0, 2, 0, 0]),
            (4 * h + 1, -1, [0, 1, 0, 1, 0]),
            (1, -1, [0, 0, 1, 1, 0]),
            (h + 1, 1, [0, 0, 0, 2, 0]),
            (1, 1, [0, 1, 0, 0, 1]),
            (2, -1, [0, 0, 1, 0, 1]),
            (2 * h + 2, -1, [1, 0, 0, 1, 0]),
            (h + 2, 1, [1, 0, 0, 0, 1]),
        ];
        for (row, coef, m) in rules {
            psi.put("c", row, c, p(&[(coef, m)]));
        }

        self.matrices.clear();
        self.diagnostics.clear();
        for asm in [a1, phi, psi] {
            let (m, d) = asm.finish();
            self.matrices.push(m);
            self.diagnostics.extend(d);
        }
    }

    /// Grade certificates: `w`; two maximal minors of `A2`; three of `A3`.
    pub fn certificates(&self) -> Vec<Vec<MinorSpec>> {
        let h = self.h as usize;
        let range = |a: usize, b: usize| (a..=b).collect::<Vec<_>>();
        let cat = |parts: &[Vec<usize>]| parts.concat();
        vec![
            vec![MinorSpec::new("w", vec![1], vec![1])],
            vec![
                MinorSpec::new("D21", cat(&[vec![1], range(3, 2 * h + 3)]), range(1, 2 * h + 2)),
                MinorSpec::new("D22", range(2, 2 * h + 3), cat(&[vec![1, 2], range(2 * h + 2, 4 * h + 1)])),
            ],
            vec![
                MinorSpec::new("D31", cat(&[range(2, h), range(2 * h + 2, 3 * h + 1)]), range(1, 2 * h - 1)),
                MinorSpec::new("D32", range(2, 2 * h), range(1, 2 * h - 1)),
                MinorSpec::new("D33", cat(&[range(h + 2, 2 * h + 1), range(3 * h + 2, 4 * h)]), range(1, 2 * h - 1)),
            ],
        ]
    }

    pub fn family_complex(&self) -> FamilyComplex {
        FamilyComplex {
            complex: FreeComplex::new(self.matrices.clone()).expect("shapes agree"),
            certificates: self.certificates(),
            diagnostics: self.diagnostics.clone(),
        }
    }

    /// The displayed values of the `D` minors.
    pub fn stated_minors(&self) -> Vec<(String, Polynomial)> {
        let e = self.h;
        let p = |t: &[(i64, [u32; 5])]| poly(&self.ring, t);
        let mul = |fs: &[Polynomial]| fs.iter().skip(1).fold(fs[0].clone(), |acc, f| acc.try_mul(f).expect("same ring"));
        vec![
            (
                "D21".into(),
                mul(&[
                    p(&[(1, [0, 0, e + 1, 0, 0]), (-1, [0, e, 0, 1, 0])]),
                    p(&[(-1, [0, 0, 0, e + 1, 0]), (1, [0, 0, 1, 0, e])]),
                    p(&[(1, [0, 0, 0, e - 1, 0])]),
                ]),
            ),
            (
                "D22".into(),
                mul(&[
                    p(&[(1, [0, 0, 1, 1, 0]), (-1, [0, 1, 0, 0, 1])]),
                    p(&[(-1, [0, 1, e, 0, 0]), (1, [1, 0, 0, 0, e])]),
                    p(&[(1, [0, 0, 0, 0, e - 1])]),
                ]),
            ),
            ("D31".into(), p(&[(1, [0, e + 1, 0, e - 1, 0]), (-1, [1, 0, 0, 2 * e - 1, 0])])),
            ("D32".into(), p(&[(1, [0, 0, e - 1, e + 1, 0]), (-1, [0, 0, 2 * e, 0, 2 * e])])),
            ("D33".into(), p(&[(1, [0, e, e, 0, 0]), (-1, [1, e - 1, 0, 0, e])])),
        ]
    }

    pub fn to_json(&self) -> InstanceJson {
        InstanceJson {
            family: format!("arslan(h={})", self.h),
            exponents: self.spec.exponents().to_vec(),
            generators: self.gb.clone(),
            groebner_basis: Vec::new(),
            matrices: self.matrices.iter().map(PolynomialMatrix::to_json).collect(),
            diagnostics: self.diagnostics.clone(),
        }
    }
}
