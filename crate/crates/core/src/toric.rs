//! Monomial curves: parametrizations, toric ideals by elimination, the
//! Gastinger generating-set certificate and the ACM test.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{buchberger_complete, eliminate_weighted, initial_ideal, GbStatus, GroebnerBasis};
use crate::monomial_ideal::StandardMonomials;
use crate::poly::{Monomial, MonomialOrder, Polynomial, Ring};

/// Largest exponent accepted by [`toric_ideal`].
pub const MAX_ELIMINATION_EXPONENT: u64 = 300;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Affine,
    Projective,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Backelin { n: u32, r: u32 },
    Bresinsky { h: u32 },
    Arslan { h: u32 },
}

impl Family {
    pub fn exponents(&self) -> Vec<u64> {
        match *self {
            Family::Backelin { n, r } => {
                let (n, r) = (n as u64, r as u64);
                let s = r * (3 * n + 2) + 3;
                vec![s, s + 3, s + 3 * n + 1, s + 3 * n + 2]
            }
            Family::Bresinsky { h } => {
                let h = h as u64;
                vec![
                    (2 * h - 1) * 2 * h,
                    (2 * h - 1) * (2 * h + 1),
                    2 * h * (2 * h + 1),
                    2 * h * (2 * h + 1) + 2 * h - 1,
                ]
            }
            Family::Arslan { h } => {
                let h = h as u64;
                vec![h * (h + 1), h * (h + 1) + 1, (h + 1) * (h + 1), (h + 1) * (h + 1) + 1]
            }
        }
    }
}

/// Exponents `n_1 < ... ` of a monomial curve plus optional family data.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSpec")]
pub struct MonomialCurveSpec {
    exponents: Vec<u64>,
    mode: Mode,
    #[serde(skip_serializing_if = "Option::is_none")]
    family: Option<Family>,
}

#[derive(Deserialize)]
struct RawSpec {
    exponents: Vec<u64>,
    mode: Mode,
    #[serde(default)]
    family: Option<Family>,
}

impl TryFrom<RawSpec> for MonomialCurveSpec {
    type Error = Error;

    fn try_from(raw: RawSpec) -> Result<Self> {
        MonomialCurveSpec::new(raw.exponents, raw.mode, raw.family)
    }
}

impl MonomialCurveSpec {
    pub fn new(exponents: Vec<u64>, mode: Mode, family: Option<Family>) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::InvalidParameters("no exponents".into()));
        }
        if exponents.iter().any(|&e| e == 0) {
            return Err(Error::InvalidParameters("exponents must be positive".into()));
        }
        for (i, e) in exponents.iter().enumerate() {
            if exponents[..i].contains(e) {
                return Err(Error::InvalidParameters(format!("repeated exponent {e}")));
            }
        }
        if exponents.iter().fold(0u64, |g, &e| g.gcd(&e)) != 1 {
            return Err(Error::InvalidParameters("exponents must have gcd 1".into()));
        }
        if mode == Mode::Projective {
            let last = *exponents.last().expect("nonempty");
            if exponents[..exponents.len() - 1].iter().any(|&e| e >= last) {
                return Err(Error::InvalidParameters(
                    "the last exponent must be the largest in projective mode".into(),
                ));
            }
        }
        if let Some(f) = family {
            if f.exponents() != exponents {
                return Err(Error::InvalidParameters(format!(
                    "exponents {exponents:?} do not match {f:?}"
                )));
            }
        }
        Ok(MonomialCurveSpec { exponents, mode, family })
    }

    pub fn for_family(family: Family, mode: Mode) -> Result<Self> {
        Self::new(family.exponents(), mode, Some(family))
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn family(&self) -> Option<Family> {
        self.family
    }

    /// Number of curve coordinates `r`.
    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn with_mode(&self, mode: Mode) -> Result<Self> {
        Self::new(self.exponents.clone(), mode, self.family)
    }

    /// The ambient ring for this spec's mode.
    pub fn ring(&self) -> Ring {
        match self.mode {
            Mode::Affine => affine_ring(self.len()),
            Mode::Projective => projective_ring(self.len()),
        }
    }

    pub fn max_exponent(&self) -> u64 {
        *self.exponents.iter().max().expect("nonempty")
    }
}

/// `x1..xr` under degrevlex with `x1 > ... > xr`.
pub fn affine_ring(r: usize) -> Ring {
    let names: Vec<String> = (1..=r).map(|i| format!("x{i}")).collect();
    Ring::degrevlex(&names)
}

/// `x0..xr` under degrevlex with `x1 > ... > xr > x0`.
pub fn projective_ring(r: usize) -> Ring {
    let names: Vec<String> = (0..=r).map(|i| format!("x{i}")).collect();
    let mut priority: Vec<usize> = (1..=r).collect();
    priority.push(0);
    Ring::new(&names, MonomialOrder::DegRevLex(priority)).expect("valid order")
}

fn to_u32(e: u64) -> Result<u32> {
    u32::try_from(e).map_err(|_| Error::InvalidParameters(format!("exponent {e} too large")))
}

/// Images of the ring variables under the parametrization, in the ring
/// `t` (affine) or `t, s` (projective).
fn parametrization_images(spec: &MonomialCurveSpec) -> Result<Vec<Polynomial>> {
    match spec.mode {
        Mode::Affine => {
            let t = Ring::degrevlex(&["t"]);
            spec.exponents
                .iter()
                .map(|&e| Ok(Polynomial::from_monomial(&t, Monomial::new(&[to_u32(e)?]))))
                .collect()
        }
        Mode::Projective => {
            let ts = Ring::degrevlex(&["t", "s"]);
            let top = spec.max_exponent();
            let mut out = vec![Polynomial::from_monomial(&ts, Monomial::new(&[0, to_u32(top)?]))];
            for &e in &spec.exponents {
                out.push(Polynomial::from_monomial(
                    &ts,
                    Monomial::new(&[to_u32(e)?, to_u32(top - e)?]),
                ));
            }
            Ok(out)
        }
    }
}

/// Substitutes the parametrization; `f` lies in the defining ideal iff the
/// image is zero.
pub fn eval_parametrization(f: &Polynomial, spec: &MonomialCurveSpec) -> Result<Polynomial> {
    if !f.ring().same_vars(&spec.ring()) {
        return Err(Error::RingMismatch);
    }
    f.substitute(&parametrization_images(spec)?)
}

pub fn vanishes(f: &Polynomial, spec: &MonomialCurveSpec) -> Result<bool> {
    Ok(eval_parametrization(f, spec)?.is_zero())
}

/// Weighted degree of a monomial: `sum a_i n_i` (affine), or the pair
/// `(sum a_i n_i, sum a_i (n_r - n_i))` with `x0` weighted `(0, n_r)`.
pub fn semigroup_degree(m: &Monomial, spec: &MonomialCurveSpec) -> (u128, u128) {
    let e = m.exponents();
    match spec.mode {
        Mode::Affine => {
            let t = e.iter().zip(&spec.exponents).map(|(&a, &n)| a as u128 * n as u128).sum();
            (t, 0)
        }
        Mode::Projective => {
            let top = spec.max_exponent() as u128;
            let mut t = 0u128;
            let mut s = e[0] as u128 * top;
            for (&a, &n) in e[1..].iter().zip(&spec.exponents) {
                t += a as u128 * n as u128;
                s += a as u128 * (top - n as u128);
            }
            (t, s)
        }
    }
}

/// A binomial `c (x^u - x^v)` vanishes iff `x^u` and `x^v` have the same
/// weighted degree. Returns `None` when `f` is not of that shape.
pub fn binomial_degree_test(f: &Polynomial, spec: &MonomialCurveSpec) -> Option<bool> {
    match f.terms() {
        [(u, a), (v, b)] if *a == -b.clone() => {
            Some(semigroup_degree(u, spec) == semigroup_degree(v, spec))
        }
        _ => None,
    }
}

/// Reduced Gröbner basis of the defining ideal, computed by eliminating the
/// parameters from the graph ideal. Refuses exponents above
/// [`MAX_ELIMINATION_EXPONENT`].
pub fn toric_ideal(spec: &MonomialCurveSpec) -> Result<GroebnerBasis> {
    if spec.max_exponent() > MAX_ELIMINATION_EXPONENT {
        return Err(Error::ScaleGuard(format!(
            "exponent {} exceeds the elimination limit {}; use the Gastinger certificate instead",
            spec.max_exponent(),
            MAX_ELIMINATION_EXPONENT
        )));
    }
    let r = spec.len();
    let target = spec.ring();
    // graph ring: parameters first, then the curve variables with x0 last
    let mut names: Vec<String> = match spec.mode {
        Mode::Affine => vec!["t".into()],
        Mode::Projective => vec!["t".into(), "s".into()],
    };
    names.extend((1..=r).map(|i| format!("x{i}")));
    if spec.mode == Mode::Projective {
        names.push("x0".into());
    }
    let graph = Ring::degrevlex(&names);
    let nparams = if spec.mode == Mode::Affine { 1 } else { 2 };
    let top = spec.max_exponent();
    let mut gens = Vec::new();
    for (i, &e) in spec.exponents.iter().enumerate() {
        let mut param = Monomial::one(graph.nvars());
        param.set_exponent(0, to_u32(e)?);
        if spec.mode == Mode::Projective {
            param.set_exponent(1, to_u32(top - e)?);
        }
        let x = Monomial::var_power(graph.nvars(), nparams + i, 1);
        gens.push(Polynomial::binomial(&graph, x, param));
    }
    if spec.mode == Mode::Projective {
        let x0 = Monomial::var_power(graph.nvars(), graph.nvars() - 1, 1);
        let s = Monomial::var_power(graph.nvars(), 1, to_u32(top)?);
        gens.push(Polynomial::binomial(&graph, x0, s));
    }
    // the graph ideal is homogeneous when each curve variable gets the
    // degree of its image and the parameters get degree 1
    let mut weights = vec![1u64; nparams];
    match spec.mode {
        Mode::Affine => weights.extend(spec.exponents.iter().copied()),
        Mode::Projective => weights.extend(std::iter::repeat_n(top, r + 1)),
    }
    let drop: Vec<&str> = names[..nparams].iter().map(String::as_str).collect();
    let kernel = eliminate_weighted(&gens, &drop, &weights)?;
    let kernel: Vec<Polynomial> = kernel.iter().map(|p| p.map_to(&target)).collect::<Result<_>>()?;
    buchberger_complete(&kernel, target.order())
}

/// Outcome of the Gastinger test for a candidate generating set `J`.
#[derive(Clone, Debug, Serialize)]
pub struct GastingerCertificate {
    pub generators: Vec<String>,
    /// 1-based index of the variable added to `J`.
    pub variable: usize,
    pub count: Option<u64>,
    pub target: u64,
    pub all_vanish: bool,
    pub non_vanishing: Vec<usize>,
    pub infinite_witness: Option<String>,
    pub verdict: bool,
}

/// Checks `J` ⊆ I by substitution and compares `dim_k A/(J + (x_i))` with
/// `n_i`. `var` is 1-based.
pub fn gastinger_verify(
    j: &[Polynomial],
    spec: &MonomialCurveSpec,
    var: usize,
) -> Result<GastingerCertificate> {
    if spec.mode != Mode::Affine {
        return Err(Error::Contract("the Gastinger test needs an affine spec".into()));
    }
    if j.is_empty() || j.iter().all(|p| p.is_zero()) {
        return Err(Error::Contract("empty candidate ideal".into()));
    }
    if var == 0 || var > spec.len() {
        return Err(Error::InvalidParameters(format!("variable index {var} out of range")));
    }
    let ring = spec.ring();
    let j: Vec<Polynomial> = j.iter().map(|p| p.map_to(&ring)).collect::<Result<_>>()?;
    let mut non_vanishing = Vec::new();
    for (k, p) in j.iter().enumerate() {
        if !vanishes(p, spec)? {
            non_vanishing.push(k);
        }
    }
    let mut gens = j.clone();
    gens.push(ring.var(&format!("x{var}"))?);
    let gb = buchberger_complete(&gens, ring.order())?;
    let init = initial_ideal(&gb)?;
    let target = spec.exponents[var - 1];
    let (count, infinite_witness) = match init.standard_monomials(false) {
        StandardMonomials::Finite { count, .. } => (Some(count), None),
        StandardMonomials::Infinite { witness_var } => (None, Some(ring.vars()[witness_var].clone())),
    };
    let all_vanish = non_vanishing.is_empty();
    Ok(GastingerCertificate {
        generators: j.iter().map(|p| p.to_string()).collect(),
        variable: var,
        count,
        target,
        all_vanish,
        non_vanishing,
        infinite_witness,
        verdict: all_vanish && count == Some(target),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AcmVerdict {
    pub acm: bool,
    /// First minimal generator of the initial ideal divisible by the least variable.
    pub witness: Option<String>,
    pub offending: Vec<String>,
    #[serde(skip)]
    pub witness_monomial: Option<Monomial>,
}

/// ACM test on a reduced affine basis under degrevlex with the last curve
/// variable least: the projective closure is arithmetically Cohen-Macaulay
/// iff no minimal generator of the initial ideal involves that variable.
pub fn acm_test(affine_gb: &GroebnerBasis) -> Result<AcmVerdict> {
    let least = affine_gb
        .order()
        .least_variable()
        .ok_or_else(|| Error::Contract("empty order".into()))?;
    if !matches!(affine_gb.order(), MonomialOrder::DegRevLex(_)) {
        return Err(Error::Contract("the ACM test needs a degrevlex basis".into()));
    }
    let init = initial_ideal(affine_gb)?;
    let names = match affine_gb.ring() {
        Some(r) => r.vars().to_vec(),
        None => return Ok(AcmVerdict { acm: true, witness: None, offending: vec![], witness_monomial: None }),
    };
    let offending: Vec<&Monomial> = init.gens().iter().filter(|g| g.exponent(least) > 0).collect();
    Ok(AcmVerdict {
        acm: offending.is_empty(),
        witness: offending.first().map(|m| m.format_with(&names)),
        offending: offending.iter().map(|m| m.format_with(&names)).collect(),
        witness_monomial: offending.first().map(|m| (*m).clone()),
    })
}

/// Homogenizes a reduced affine basis (degrevlex, last variable least) by
/// `x0`. The result is a reduced basis of the homogenized ideal under the
/// order with `x0` least; its initial ideal is the affine one extended.
pub fn projective_closure_basis(affine_gb: &GroebnerBasis) -> Result<GroebnerBasis> {
    if affine_gb.status() != GbStatus::Reduced {
        return Err(Error::Contract("projective closure needs a reduced basis".into()));
    }
    let Some(ring) = affine_gb.ring() else {
        return Err(Error::Contract("empty basis".into()));
    };
    if ring.order() != &MonomialOrder::degrevlex(ring.nvars()) {
        return Err(Error::Contract("projective closure needs degrevlex in variable order".into()));
    }
    let proj = projective_ring(ring.nvars());
    let mut out = Vec::with_capacity(affine_gb.elements().len());
    for f in affine_gb.elements() {
        let h = f.homogenize(&proj, "x0")?;
        let lifted = f.leading_monomial_or_err()?.clone();
        let mut ext = Monomial::one(proj.nvars());
        for (i, &e) in lifted.exponents().iter().enumerate() {
            ext.set_exponent(i + 1, e);
        }
        if h.leading_monomial() != Some(&ext) {
            return Err(Error::Contract(format!("leading monomial changed when homogenizing {f}")));
        }
        out.push(h);
    }
    let gb = GroebnerBasis::unverified(out, proj.order().clone())?;
    Ok(gb.assume_status(GbStatus::Reduced))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_validation_and_json() {
        let spec = MonomialCurveSpec::for_family(Family::Backelin { n: 2, r: 8 }, Mode::Affine).unwrap();
        assert_eq!(spec.exponents(), &[67, 70, 74, 75]);
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(json, r#"{"exponents":[67,70,74,75],"mode":"affine","family":{"backelin":{"n":2,"r":8}}}"#);
        let back: MonomialCurveSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, spec);
        assert!(serde_json::from_str::<MonomialCurveSpec>(r#"{"exponents":[2,4],"mode":"affine"}"#).is_err());
        assert!(MonomialCurveSpec::new(vec![3, 2], Mode::Projective, None).is_err());
        assert!(MonomialCurveSpec::new(vec![67, 70, 74, 76], Mode::Affine, Some(Family::Backelin { n: 2, r: 8 })).is_err());
        assert_eq!(Family::Bresinsky { h: 2 }.exponents(), vec![12, 15, 20, 23]);
        assert_eq!(Family::Arslan { h: 3 }.exponents(), vec![12, 13, 16, 17]);
    }

    #[test]
    fn parametrization() {
        let spec = MonomialCurveSpec::new(vec![67, 70, 74, 75], Mode::Affine, None).unwrap();
        let r = spec.ring();
        assert_eq!(eval_parametrization(&r.parse("x1").unwrap(), &spec).unwrap().to_string(), "t^67");
        let f1 = r.parse("x2*x3^3 - x1*x4^3").unwrap();
        assert!(vanishes(&f1, &spec).unwrap());
        assert_eq!(binomial_degree_test(&f1, &spec), Some(true));
        let proj = MonomialCurveSpec::new(vec![6, 7, 9, 10], Mode::Projective, None).unwrap();
        let w = proj.ring().parse("x2*x3 - x1*x4").unwrap();
        assert!(vanishes(&w, &proj).unwrap());
        assert_eq!(eval_parametrization(&proj.ring().parse("x0").unwrap(), &proj).unwrap().to_string(), "s^10");
        assert!(eval_parametrization(&f1, &proj).is_err());
    }

    #[test]
    fn small_toric_ideal() {
        let spec = MonomialCurveSpec::new(vec![1, 2, 3], Mode::Affine, None).unwrap();
        let gb = toric_ideal(&spec).unwrap();
        let r = spec.ring();
        for s in ["x1^2 - x2", "x1*x2 - x3"] {
            assert!(gb.contains(&r.parse(s).unwrap()).unwrap());
        }
        for p in gb.elements() {
            assert!(vanishes(p, &spec).unwrap());
        }
        let cert = gastinger_verify(gb.elements(), &spec, 1).unwrap();
        assert!(cert.verdict);
        assert_eq!(cert.count, Some(1));
    }

    #[test]
    fn scale_guard() {
        let spec = MonomialCurveSpec::new(vec![301, 302], Mode::Affine, None).unwrap();
        assert!(matches!(toric_ideal(&spec), Err(Error::ScaleGuard(_))));
    }

    #[test]
    fn homogeneous_basis_is_unchanged() {
        let r = affine_ring(4);
        let gb = buchberger_complete(&[r.parse("x2*x3 - x1*x4").unwrap()], r.order()).unwrap();
        let proj = projective_closure_basis(&gb).unwrap();
        assert_eq!(proj.to_strings(), vec!["x2*x3 - x1*x4"]);
    }
}
