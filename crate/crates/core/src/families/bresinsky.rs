use crate::error::{Error, Result};
use crate::poly::{coeff_int, Monomial, Polynomial, Ring};
use crate::resolution::{FreeComplex, MinorSpec, PolynomialMatrix};
use crate::toric::{affine_ring, projective_ring, Family, Mode, MonomialCurveSpec};

use super::assembly::{Diagnostic, MatrixAssembler};
use super::{polys, FamilyComplex, InstanceJson, Labeled};

/// The curve with exponents `((2h-1)2h, (2h-1)(2h+1), 2h(2h+1), 2h(2h+1)+2h-1)`.
#[derive(Clone, Debug)]
pub struct BresinskyInstance {
    pub h: u32,
    pub spec: MonomialCurveSpec,
    pub affine_ring: Ring,
    pub ring: Ring,
    /// Affine Groebner basis: `p1, p2, p3,j, p4,i, p5, p6,i, p7, p8`.
    pub gb: Vec<Labeled>,
    /// The `4h+3` generators of the projective closure, in matrix row order.
    pub projective_generators: Vec<Labeled>,
    pub matrices: Vec<PolynomialMatrix>,
    pub diagnostics: Vec<Diagnostic>,
}

/// Sum of signed monomials `c * x0^a0 x1^a1 ... x4^a4`.
fn poly(ring: &Ring, terms: &[(i64, [u32; 5])]) -> Polynomial {
    Polynomial::from_terms(ring, terms.iter().map(|(c, e)| (Monomial::new(e), coeff_int(*c))).collect())
}

fn affine_binomial(ring: &Ring, u: [u32; 4], v: [u32; 4]) -> Polynomial {
    Polynomial::binomial(ring, Monomial::new(&u), Monomial::new(&v))
}

pub fn bresinsky_system(h: u32) -> Result<BresinskyInstance> {
    if h < 2 {
        return Err(Error::InvalidParameters(format!("need h >= 2, got h={h}")));
    }
    let spec = MonomialCurveSpec::for_family(Family::Bresinsky { h }, Mode::Affine)?;
    let a = affine_ring(4);
    let ring = projective_ring(4);
    let b = |u, v| affine_binomial(&a, u, v);
    let hh = 2 * h;

    let p1 = Labeled::new("p1", b([0, 1, 1, 0], [1, 0, 0, 1]));
    let p2 = Labeled::new("p2", b([0, hh, 0, 0], [0, 0, hh - 1, 0]));
    let p3: Vec<Labeled> = (0..hh)
        .map(|j| Labeled::new(format!("p3,{j}"), b([j + 1, 0, hh - j, 0], [0, j, 0, hh - j])))
        .collect();
    let p4: Vec<Labeled> = (1..=hh)
        .map(|i| Labeled::new(format!("p4,{i}"), b([i + 1, hh - i, 0, 0], [0, 0, i - 1, hh - i])))
        .collect();
    let p5 = Labeled::new("p5", b([0, 0, 2 * hh, 0], [0, hh - 1, 0, hh + 1]));
    let p6: Vec<Labeled> = (0..hh - 2)
        .map(|i| Labeled::new(format!("p6,{i}"), b([2 + i, hh - 2 - i, 0, 2 + i], [0, 0, hh + 1 + i, 0])))
        .collect();
    let p7 = Labeled::new("p7", b([1, hh - 1, 0, 1], [0, 0, hh, 0]));
    let p8 = Labeled::new("p8", b([hh, 0, 0, hh], [0, 0, 2 * hh - 1, 0]));

    let mut gb = vec![p1.clone(), p2.clone()];
    gb.extend(p3.iter().cloned());
    gb.extend(p4.iter().cloned());
    gb.push(p5.clone());
    gb.extend(p6);
    gb.push(p7);
    gb.push(p8);

    let mut projective_generators = Vec::new();
    for l in std::iter::once(&p1).chain(&[p2]).chain(&p3).chain(&p4).chain(&[p5]) {
        projective_generators.push(Labeled::new(format!("{}^H", l.label), l.poly.homogenize(&ring, "x0")?));
    }

    let mut inst = BresinskyInstance {
        h,
        spec,
        affine_ring: a,
        ring,
        gb,
        projective_generators,
        matrices: Vec::new(),
        diagnostics: Vec::new(),
    };
    inst.assemble();
    Ok(inst)
}

impl BresinskyInstance {
    pub fn projective_spec(&self) -> MonomialCurveSpec {
        self.spec.with_mode(Mode::Projective).expect("largest exponent is last")
    }

    pub fn gb_polys(&self) -> Vec<Polynomial> {
        polys(&self.gb)
    }

    /// `𝔊_h` without the `p6,i`, the set as first listed.
    pub fn gb_without_p6(&self) -> Vec<Polynomial> {
        self.gb.iter().filter(|l| !l.label.starts_with("p6")).map(|l| l.poly.clone()).collect()
    }

    pub fn projective_polys(&self) -> Vec<Polynomial> {
        polys(&self.projective_generators)
    }

    fn assemble(&mut self) {
        let r = &self.ring;
        let h = self.h as usize;
        let e = self.h;
        let n = 4 * h + 3;
        let p = |t: &[(i64, [u32; 5])]| poly(r, t);
        let x = |i: usize| {
            let mut m = [0u32; 5];
            m[i] = 1;
            m
        };
        let neg = |i: usize| p(&[(-1, x(i))]);
        let var = |i: usize| p(&[(1, x(i))]);

        let mut d1 = MatrixAssembler::new("B1", r, 1, n);
        for (k, l) in self.projective_generators.iter().enumerate() {
            d1.put("B1", 1, k + 1, l.poly.clone());
        }

        let mut om = MatrixAssembler::new("B2", r, n, 8 * h + 4);
        om.put("a", 2, 1, p(&[(1, [1, 0, 0, 0, 1])]));
        om.put("a", 2 * h + 2, 1, var(2));
        om.put("a", 4 * h + 1, 1, neg(3));
        om.put("b", 2, 2, p(&[(1, [0, 2, 0, 0, 0])]));
        om.put("b", 4, 2, var(2));
        om.put("b", 2 * h + 3, 2, neg(2));
        for l in 0..(2 * h - 1) {
            let lu = l as u32;
            om.put("c", 1, 3 + l, p(&[(1, [1, 0, lu, 0, 2 * e - 1 - lu])]));
            om.put("c", 3 + l, 3 + l, neg(1));
            om.put("c", 4 + l, 3 + l, var(3));
        }
        for l in 1..(2 * h) {
            let lu = l as u32;
            om.put("d", 1, 2 * h + 1 + l, p(&[(1, [2, 0, 0, lu - 1, 2 * e - 1 - lu])]));
            om.put("d", 2 * h + 2 + l, 2 * h + 1 + l, neg(1));
            om.put("d", 2 * h + 3 + l, 2 * h + 1 + l, var(2));
        }
        for l in 0..(2 * h - 1) {
            let lu = l as u32;
            om.put("e", 1, 4 * h + 1 + l, p(&[(1, [0, lu + 1, 0, 2 * e - 1 - lu, 0])]));
            om.put("e", 3 + l, 4 * h + 1 + l, neg(2));
            om.put("e", 4 + l, 4 * h + 1 + l, var(4));
        }
        for l in 1..(2 * h) {
            let lu = l as u32;
            om.put("f", 1, 6 * h - 1 + l, p(&[(1, [0, lu + 1, 2 * e - 1 - lu, 0, 0])]));
            om.put("f", 2 * h + 2 + l, 6 * h - 1 + l, neg(3));
            om.put("f", 2 * h + 3 + l, 6 * h - 1 + l, var(4));
        }
        let c = 8 * h;
        om.put("g", 1, c - 1, p(&[(1, [0, 0, 2 * e, 0, 0]), (-1, [1, 0, 0, 2 * e - 1, 0])]));
        om.put("g", 2, c - 1, p(&[(-1, [0, 0, 1, 1, 0]), (1, [0, 1, 0, 0, 1])]));
        om.put("h", 1, c, p(&[(1, [0, 1, 2 * e - 1, 0, 0])]));
        om.put("h", 2, c, p(&[(-1, [0, 1, 0, 1, 0])]));
        om.put("h", 3, c, neg(0));
        om.put("h", 2 * h + 3, c, var(4));
        om.put("i", 1, c + 1, p(&[(1, [1, 0, 2 * e - 1, 0, 0])]));
        om.put("i", 2, c + 1, p(&[(-1, [1, 0, 0, 1, 0])]));
        om.put("i", 2 * h + 2, c + 1, neg(1));
        om.put("i", 4 * h + 2, c + 1, var(3));
        om.put("j", 1, c + 2, p(&[(1, [0, 0, 2 * e - 1, 0, 2 * e])]));
        om.put("j", 2, c + 2, p(&[(-1, [0, 0, 0, 1, 1])]));
        om.put("j", 3, c + 2, p(&[(1, [0, 0, 0, 2 * e, 0])]));
        om.put("j", 4 * h + 3, c + 2, neg(1));
        om.put("k", 1, c + 3, p(&[(1, [0, 0, 0, 4 * e - 1, 0])]));
        om.put("k", 2, c + 3, p(&[(-1, [0, 0, 0, 0, 2 * e + 1])]));
        om.put("k", 3, c + 3, p(&[(1, [0, 0, 0, 2 * e - 1, 1])]));
        om.put("k", 4 * h + 3, c + 3, neg(2));
        om.put("l", 1, c + 4, p(&[(1, [0, 0, 2 * e - 1, 2 * e, 0])]));
        om.put("l", 2, c + 4, p(&[(-1, [0, 0, 0, 2 * e + 1, 0])]));
        om.put("l", 3, c + 4, p(&[(1, [0, 0, 2 * e - 1, 0, 1])]));
        om.put("l", 4 * h + 3, c + 4, neg(0));

        let mut de = MatrixAssembler::new("B3", r, 8 * h + 4, n);
        for l in 0..=(2 * h - 3) {
            de.put("D1", 4 * h + l, l + 1, var(1));
            de.put("D1", 3 + l, l + 1, neg(2));
            de.put("D1", 4 * h + l + 1, l + 1, neg(3));
            de.put("D1", 4 + l, l + 1, var(4));
        }
        let col = 2 * h - 1;
        de.put("D2", 6 * h - 1, col, var(1));
        de.put("D2", 2 * h + 1, col, neg(2));
        de.put("D2", 8 * h - 2, col, neg(3));
        de.put("D2", 1, col, var(3));
        de.put("D2", 8 * h + 1, col, var(4));
        for l in 1..=(2 * h - 2) {
            let col = 2 * h - 1 + l;
            de.put("D3", 6 * h - 1 + l, col, var(1));
            de.put("D3", 6 * h + l, col, neg(2));
            de.put("D3", 2 * h + 1 + l, col, neg(3));
            de.put("D3", 2 * h + 2 + l, col, var(4));
        }
        let col = 4 * h - 2;
        de.put("D4", 3, col, var(0));
        de.put("D4", 8 * h, col, neg(1));
        de.put("D4", 6 * h, col, var(2));
        de.put("D4", 2, col, neg(3));
        de.put("D4", 2 * h + 2, col, neg(4));
        let col = 4 * h - 1;
        de.put("D5", 4 * h + 1, col, var(0));
        de.put("D5", 8 * h - 1, col, var(1));
        de.put("D5", 8 * h, col, neg(2));
        de.put("D5", 2, col, neg(4));
        let col = 4 * h;
        de.put("D6", 8 * h - 1, col, var(0));
        de.put("D6", 1, col, neg(1));
        de.put("D6", 8 * h + 1, col, neg(2));
        de.put("D6", 4 * h, col, var(3));
        let col = 4 * h + 1;
        de.put("D7", 4 * h + 1, col, p(&[(1, [0, 0, 0, 2 * e, 0])]));
        de.put("D7", 3, col, p(&[(-1, [0, 0, 0, 2 * e - 1, 1])]));
        de.put("D7", 8 * h - 1, col, p(&[(-1, [0, 0, 0, 0, 2 * e])]));
        de.put("D7", 8 * h + 3, col, neg(1));
        de.put("D7", 8 * h + 2, col, var(2));
        let col = 4 * h + 2;
        de.put("D8", 4 * h + 2, 8 * h - 1, p(&[(1, [0, 0, 0, 2 * e, 0])]));
        for i in 0..=(2 * h - 2) {
            let iu = i as u32;
            de.put("D8", 4 * h + 1 + i, col, p(&[(-1, [0, 0, 2 * e - 1 - iu, 0, iu + 1])]));
        }
        de.put("D8", 8 * h, col, p(&[(1, [0, 0, 0, 2 * e - 1, 1])]));
        for j in 1..=(2 * h - 2) {
            let ju = j as u32;
            de.put("D8", 6 * h - 1 + j, col, p(&[(1, [0, 0, 0, 2 * e - 1 - ju, ju + 1])]));
        }
        de.put("D8", 1, col, p(&[(1, [0, 0, 0, 0, 2 * e])]));
        de.put("D8", 8 * h + 3, col, var(0));
        de.put("D8", 8 * h + 4, col, neg(2));
        let col = 4 * h + 3;
        de.put("D9", 8 * h, col, p(&[(1, [0, 0, 0, 2 * e, 0])]));
        de.put("D9", 3, col, p(&[(-1, [0, 0, 2 * e - 1, 0, 1])]));
        for i in 0..=(2 * h - 2) {
            let iu = i as u32;
            de.put("D9", 4 * h + 1 + i, col, p(&[(-1, [0, 0, 2 * e - 1 - iu, 1, iu])]));
        }
        for i in 1..=(2 * h - 1) {
            let iu = i as u32;
            de.put("D9", 6 * h - 1 + i, col, p(&[(1, [0, 0, 0, 2 * e - iu, iu])]));
        }
        de.put("D9", 1, col, p(&[(1, [0, 0, 0, 1, 2 * e - 1])]));
        de.put("D9", 8 * h + 2, col, var(0));
        de.put("D9", 8 * h + 4, col, neg(1));

        let mut ga = MatrixAssembler::new("B4", r, n, 1);
        ga.put("G", 4 * h - 1, 1, p(&[(1, [0, 0, 0, 2 * e, 0])]));
        for m in 1..=(2 * h - 1) {
            let mu = m as u32;
            ga.put("G", m, 1, p(&[(-1, [0, 0, 2 * e - mu, 0, mu])]));
        }
        ga.put("G", 4 * h - 2, 1, p(&[(-1, [0, 0, 0, 2 * e - 1, 1])]));
        for k in 1..=(2 * h - 2) {
            let ku = k as u32;
            ga.put("G", 2 * h - 1 + k, 1, p(&[(1, [0, 0, 0, 2 * e - 1 - ku, ku + 1])]));
        }
        ga.put("G", 4 * h, 1, p(&[(-1, [0, 0, 0, 0, 2 * e])]));
        ga.put("G", 4 * h + 1, 1, neg(0));
        ga.put("G", 4 * h + 2, 1, neg(1));
        ga.put("G", 4 * h + 3, 1, var(2));

        self.matrices.clear();
        self.diagnostics.clear();
        for asm in [d1, om, de, ga] {
            let (m, d) = asm.finish();
            self.matrices.push(m);
            self.diagnostics.extend(d);
        }
    }

    /// Grade certificates: `p1^H`; two maximal minors of `B2`; three of
    /// `B3`; four entries of `B4`. Lists are 1-based.
    pub fn certificates(&self) -> Vec<Vec<MinorSpec>> {
        let h = self.h as usize;
        let range = |a: usize, b: usize| (a..=b).collect::<Vec<_>>();
        let cat = |parts: &[Vec<usize>]| parts.concat();
        let level2 = vec![
            MinorSpec::new(
                "L21",
                cat(&[vec![1], range(3, 4 * h + 3)]),
                cat(&[range(4 * h + 1, 8 * h - 2), vec![8 * h, 8 * h + 2, 8 * h + 3, 8 * h + 4]]),
            ),
            MinorSpec::new(
                "L22",
                range(2, 4 * h + 3),
                cat(&[vec![1], range(3, 4 * h), vec![8 * h + 1, 8 * h + 2, 8 * h + 4]]),
            ),
        ];
        let l31_rows: Vec<usize> = cat(&[
            vec![1],
            range(4 * h, 8 * h - 3).into_iter().filter(|&i| i != 6 * h - 2).collect(),
            vec![8 * h - 1, 8 * h, 8 * h + 3, 8 * h + 4],
        ]);
        let level3 = vec![
            MinorSpec::new("L31", l31_rows, cat(&[range(1, 4 * h + 1), vec![4 * h + 3]])),
            MinorSpec::new("L32", cat(&[range(1, 4 * h), vec![8 * h + 1, 8 * h + 2]]), range(1, 4 * h + 2)),
            MinorSpec::new(
                "L33",
                cat(&[range(3, 2 * h + 1), vec![4 * h + 1], range(6 * h, 8 * h), vec![8 * h + 3]]),
                range(1, 4 * h + 2),
            ),
        ];
        let level4 = (4 * h..=4 * h + 3)
            .map(|row| MinorSpec::new(format!("G{row}"), vec![row], vec![1]))
            .collect();
        vec![vec![MinorSpec::new("p1^H", vec![1], vec![1])], level2, level3, level4]
    }

    pub fn family_complex(&self) -> FamilyComplex {
        FamilyComplex {
            complex: FreeComplex::new(self.matrices.clone()).expect("shapes agree"),
            certificates: self.certificates(),
            diagnostics: self.diagnostics.clone(),
        }
    }

    /// The displayed values of the `L` minors.
    pub fn stated_minors(&self) -> Vec<(String, Polynomial)> {
        let r = &self.ring;
        let e = self.h;
        let p = |t: &[(i64, [u32; 5])]| poly(r, t);
        let mul = |fs: &[Polynomial]| fs.iter().skip(1).fold(fs[0].clone(), |acc, f| acc.try_mul(f).expect("same ring"));
        let l21 = mul(&[
            p(&[(1, [0, 0, 0, 0, 4 * e - 1])]),
            p(&[(-1, [0, 0, 2 * e, 0, 0]), (1, [1, 0, 0, 2 * e - 1, 0])]),
            p(&[(1, [0, 0, 0, 4 * e, 0]), (-1, [0, 0, 2 * e - 1, 0, 2 * e + 1])]),
        ]);
        let l22 = mul(&[
            p(&[(-1, [0, 2 * e - 2, 0, 0, 0])]),
            p(&[(-1, [0, 0, 1, 1, 0]), (1, [0, 1, 0, 0, 1])]),
            p(&[(-1, [0, 1, 2 * e - 1, 0, 1]), (1, [1, 0, 0, 2 * e, 0])]),
            p(&[(1, [1, 0, 0, 2 * e, 0])]),
        ]);
        let l31 = p(&[(1, [0, 4 * e + 2, 0, 0, 0])]);
        let l32 = mul(&[
            p(&[(1, [0, 0, 0, 0, 6 * e])]),
            p(&[(-1, [0, 0, 2 * e, 0, 0]), (1, [1, 0, 0, 2 * e - 1, 0])]),
        ]);
        let mut l33_terms = vec![
            (1, [0, 1, 6 * e - 3, 0, 1]),
            (-1, [1, 2 * e - 1, 2 * e - 1, 1, 2 * e - 1]),
            (1, [1, 2 * e - 1, 2 * e - 2, 1, 2 * e]),
            (1, [2, 2 * e - 2, 0, 2 * e + 1, 2 * e - 2]),
        ];
        for i in 0..2 * e {
            l33_terms.push((-1, [1, i, 4 * e - 2 - i, 2 * e - i, i]));
        }
        let l33 = p(&l33_terms);
        vec![
            ("L21".into(), l21),
            ("L22".into(), l22),
            ("L31".into(), l31),
            ("L32".into(), l32),
            ("L33".into(), l33),
        ]
    }

    pub fn to_json(&self) -> InstanceJson {
        InstanceJson {
            family: format!("bresinsky(h={})", self.h),
            exponents: self.spec.exponents().to_vec(),
            generators: self.projective_generators.clone(),
            groebner_basis: self.gb.clone(),
            matrices: self.matrices.iter().map(PolynomialMatrix::to_json).collect(),
            diagnostics: self.diagnostics.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toric::vanishes;

    #[test]
    fn shapes_and_counts() {
        let b = bresinsky_system(2).unwrap();
        assert_eq!(b.spec.exponents(), &[12, 15, 20, 23]);
        assert_eq!(b.gb.len(), 15);
        assert_eq!(b.projective_generators.len(), 11);
        let shapes: Vec<(usize, usize)> = b.matrices.iter().map(PolynomialMatrix::shape).collect();
        assert_eq!(shapes, vec![(1, 11), (11, 20), (20, 11), (11, 1)]);
        assert_eq!(b.matrices[3].entry(10, 0).to_string(), "x2");
        assert!(bresinsky_system(1).is_err());
    }

    #[test]
    fn generators_vanish() {
        for h in 2..=4 {
            let b = bresinsky_system(h).unwrap();
            for l in &b.gb {
                assert!(vanishes(&l.poly, &b.spec).unwrap(), "{}", l.label);
            }
            let proj = b.projective_spec();
            for l in &b.projective_generators {
                assert!(l.poly.is_homogeneous(), "{}", l.label);
                assert!(vanishes(&l.poly, &proj).unwrap(), "{}", l.label);
            }
        }
    }

    #[test]
    fn homogenized_forms() {
        let b = bresinsky_system(2).unwrap();
        let get = |label: &str| {
            b.projective_generators.iter().find(|l| l.label == label).unwrap().poly.to_string()
        };
        assert_eq!(get("p2^H"), "x2^4 - x0*x3^3");
        assert_eq!(get("p3,1^H"), "x1^2*x3^3 - x0*x2*x4^3");
        assert_eq!(get("p4,1^H"), "x1^2*x2^3 - x0^2*x4^3");
    }

    #[test]
    fn out_of_range_rule_is_reported() {
        let b = bresinsky_system(2).unwrap();
        assert!(b
            .diagnostics
            .iter()
            .any(|d| d.kind == super::super::DiagnosticKind::OutOfRange && d.matrix == "B3"));
    }
}
