use crate::error::{Error, Result};
use crate::monomial_ideal::{HilbertNumerator, MonomialIdeal};
use crate::poly::{Monomial, Polynomial, Ring};
use crate::toric::{affine_ring, Family, Mode, MonomialCurveSpec};

use super::Labeled;

/// The curve with exponents `(s, s+3, s+3n+1, s+3n+2)`, `s = r(3n+2)+3`.
#[derive(Clone, Debug)]
pub struct BackelinInstance {
    pub n: u32,
    pub r: u32,
    pub s: u64,
    pub spec: MonomialCurveSpec,
    pub ring: Ring,
    /// The `3n+4` minimal generators.
    pub generators: Vec<Labeled>,
    /// Generators with `f3,(n-1)` replaced by `g = x1^(r+2) - x2*x4^r`.
    pub gb: Vec<Labeled>,
}

fn mono(ring: &Ring, e: [u32; 4]) -> Monomial {
    debug_assert_eq!(ring.nvars(), 4);
    Monomial::new(&e)
}

pub fn backelin_system(n: u32, r: u32) -> Result<BackelinInstance> {
    if n < 2 || r < 3 * n + 2 {
        return Err(Error::InvalidParameters(format!(
            "need n >= 2 and r >= 3n+2, got n={n}, r={r}"
        )));
    }
    let spec = MonomialCurveSpec::for_family(Family::Backelin { n, r }, Mode::Affine)?;
    let ring = affine_ring(4);
    let b = |u: [u32; 4], v: [u32; 4]| Polynomial::binomial(&ring, mono(&ring, u), mono(&ring, v));
    let mut gens = vec![Labeled::new("f1", b([0, 1, 3, 0], [1, 0, 0, 3]))];
    for i in 1..=n {
        gens.push(Labeled::new(
            format!("f2,{i}"),
            b([n - i, 0, 3 * i - 1, 0], [0, n - i + 1, 0, 3 * i - 2]),
        ));
    }
    for j in 0..n {
        gens.push(Labeled::new(
            format!("f3,{j}"),
            b([r - n + 3 + j, n - 1 - j, 0, 0], [0, 0, 2 + 3 * j, r - 1 - 3 * j]),
        ));
    }
    for j in 0..n {
        gens.push(Labeled::new(
            format!("f4,{j}"),
            b([r - 2 * n + 3 + j, 2 * n - j, 0, 0], [0, 0, 3 * j + 1, r + 1 - 3 * j]),
        ));
    }
    gens.push(Labeled::new("f5", b([r - n + 2, n, 1, 0], [0, 0, 0, r + 2])));
    gens.push(Labeled::new("f6", b([0, n + 1, 1, 0], [n, 0, 0, 2])));
    gens.push(Labeled::new("f7", b([0, 2 * n + 1, 0, 0], [2 * n - 1, 0, 1, 1])));

    let g = b([r + 2, 0, 0, 0], [0, 1, 0, r]);
    let f3_last = &gens.iter().find(|l| l.label == format!("f3,{}", n - 1)).expect("present").poly;
    let f2_last = &gens.iter().find(|l| l.label == format!("f2,{n}")).expect("present").poly;
    let rebuilt = f3_last.add_scaled(
        &crate::poly::coeff_int(1),
        &mono(&ring, [0, 0, 0, r - 3 * n + 2]),
        f2_last,
    );
    if rebuilt != g {
        return Err(Error::Contract("replacement identity for g failed".into()));
    }
    let mut gb: Vec<Labeled> = gens
        .iter()
        .filter(|l| l.label != format!("f3,{}", n - 1))
        .cloned()
        .collect();
    gb.push(Labeled::new("g", g));
    let s = spec.exponents()[0];
    Ok(BackelinInstance { n, r, s, spec, ring, generators: gens, gb })
}

impl BackelinInstance {
    pub fn generator_polys(&self) -> Vec<Polynomial> {
        self.generators.iter().map(|l| l.poly.clone()).collect()
    }

    pub fn gb_polys(&self) -> Vec<Polynomial> {
        self.gb.iter().map(|l| l.poly.clone()).collect()
    }

    pub fn generator(&self, label: &str) -> Option<&Polynomial> {
        self.generators
            .iter()
            .chain(&self.gb)
            .find(|l| l.label == label)
            .map(|l| &l.poly)
    }

    /// The minimal generators of the initial ideal in closed form.
    pub fn expected_initial_ideal(&self) -> MonomialIdeal {
        let (n, r) = (self.n, self.r);
        let mut gens = vec![Monomial::new(&[0, 1, 3, 0])];
        for i in 1..=n {
            gens.push(Monomial::new(&[n - i, 0, 3 * i - 1, 0]));
        }
        for j in 0..n {
            gens.push(Monomial::new(&[r - n + 3 + j, n - 1 - j, 0, 0]));
            gens.push(Monomial::new(&[r - 2 * n + 3 + j, 2 * n - j, 0, 0]));
        }
        gens.push(Monomial::new(&[r - n + 2, n, 1, 0]));
        gens.push(Monomial::new(&[0, n + 1, 1, 0]));
        gens.push(Monomial::new(&[0, 2 * n + 1, 0, 0]));
        MonomialIdeal::new(4, gens)
    }

    /// `3nr + 3n + 2r + 4`, which equals `s + 3n + 1`.
    pub fn gastinger_target(&self) -> u64 {
        let (n, r) = (self.n as u64, self.r as u64);
        3 * n * r + 3 * n + 2 * r + 4
    }
}

/// Closed-form Hilbert series numerator of the curve's coordinate ring
/// (the form derived by expanding the colon recursion).
pub fn backelin_hilbert_formula(n: u32, r: u32) -> Result<HilbertNumerator> {
    if n < 2 || r < 3 * n + 2 {
        return Err(Error::InvalidParameters(format!("need n >= 2 and r >= 3n+2, got n={n}, r={r}")));
    }
    let (n, r) = (n as u64, r as u64);
    let ni = n as i64;
    let mut h = HilbertNumerator::one();
    h.add_term(r + 2, -ni);
    h.add_term(r + 3, -2);
    h.add_term(r + 4, 3 * ni + 4);
    h.add_term(r + 5, -(2 * ni + 2));
    h.add_term(2 * n + 3, -1);
    h.add_term(2 * n + 2, 2);
    h.add_term(2 * n + 1, -1);
    h.add_term(n + 4, 1);
    h.add_term(n + 3, 1);
    h.add_term(n + 2, -1);
    h.add_term(n + 1, -1);
    h.add_term(4, -1);
    for i in 2..=n {
        h.add_term(n + 2 * i - 1, -1);
        h.add_term(n + 2 * i + 1, -1);
        h.add_term(n + 2 * i, 2);
    }
    Ok(h)
}

/// The numerator exactly as displayed in the published statement. It differs
/// from [`backelin_hilbert_formula`] in the terms of degree `4`, `n+2` and
/// `2n+2`; kept so the discrepancy can be reported.
pub fn backelin_hilbert_statement(n: u32, r: u32) -> Result<HilbertNumerator> {
    if n < 2 || r < 3 * n + 2 {
        return Err(Error::InvalidParameters(format!("need n >= 2 and r >= 3n+2, got n={n}, r={r}")));
    }
    let (n, r) = (n as u64, r as u64);
    let ni = n as i64;
    let mut h = HilbertNumerator::one();
    h.add_term(r + 2, -ni);
    h.add_term(r + 3, -2);
    h.add_term(r + 4, 3 * ni + 4);
    h.add_term(r + 5, -(2 * ni + 2));
    h.add_term(2 * n + 1, -1);
    h.add_term(n + 2, -1);
    h.add_term(n + 2, 2);
    h.add_term(n + 1, -1);
    h.add_term(n + 3, 1);
    h.add_term(n + 4, 1);
    h.add_term(2 * n + 3, -1);
    for i in 2..=n {
        h.add_term(n + 2 * i - 1, -1);
        h.add_term(n + 2 * i + 1, -1);
        h.add_term(n + 2 * i, 2);
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toric::vanishes;

    #[test]
    fn instance_2_8() {
        let b = backelin_system(2, 8).unwrap();
        assert_eq!(b.s, 67);
        assert_eq!(b.spec.exponents(), &[67, 70, 74, 75]);
        assert_eq!(b.generators.len(), 10);
        assert_eq!(b.generator("f1").unwrap().to_string(), "x2*x3^3 - x1*x4^3");
        assert_eq!(b.generator("g").unwrap().to_string(), "x1^10 - x2*x4^8");
        assert_eq!(b.gastinger_target(), 74);
        for l in b.generators.iter().chain(&b.gb) {
            assert!(vanishes(&l.poly, &b.spec).unwrap(), "{}", l.label);
        }
    }

    #[test]
    fn instance_3_11() {
        let b = backelin_system(3, 11).unwrap();
        assert_eq!(b.s, 124);
        assert_eq!(b.generators.len(), 13);
        assert_eq!(b.gastinger_target(), b.s + 3 * 3 + 1);
    }

    #[test]
    fn bounds() {
        assert!(backelin_system(1, 8).is_err());
        assert!(backelin_system(2, 7).is_err());
        assert!(backelin_hilbert_formula(2, 7).is_err());
    }

    #[test]
    fn formula_coefficients() {
        let h = backelin_hilbert_formula(2, 8).unwrap();
        assert_eq!(h.coeff(12), 10);
        assert_eq!(h.coeff(0), 1);
    }
}
