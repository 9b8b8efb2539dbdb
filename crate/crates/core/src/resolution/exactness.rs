use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::complex::{composition_defects, CompositionDefect, FreeComplex};
use super::linalg::{matrix_rank_seeded, minor_determinant, rank_mod_p, PRIME};
use super::matrix::PolynomialMatrix;
use super::repair::{repair_complex, RepairLog};
use crate::error::{Error, Result};
use crate::groebner::codimension;
use crate::poly::Polynomial;

/// Generic-point minor attempts per level.
pub const RANDOM_MINOR_ATTEMPTS: usize = 24;

/// A named minor; row and column lists are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinorSpec {
    pub label: String,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl MinorSpec {
    pub fn new(label: impl Into<String>, rows: Vec<usize>, cols: Vec<usize>) -> Self {
        MinorSpec { label: label.into(), rows, cols }
    }

    fn zero_based(v: &[usize]) -> Result<Vec<usize>> {
        v.iter()
            .map(|&i| i.checked_sub(1).ok_or_else(|| Error::BadIndexList("indices are 1-based".into())))
            .collect()
    }

    pub fn evaluate(&self, m: &PolynomialMatrix) -> Result<Polynomial> {
        minor_determinant(m, &Self::zero_based(&self.rows)?, &Self::zero_based(&self.cols)?)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MinorValue {
    pub label: String,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct GradeCertificate {
    pub level: usize,
    pub required: usize,
    /// "certificate", "random", or "certificate+random" when the listed
    /// minors fall short and random ones were added.
    pub source: String,
    pub minors: Vec<MinorValue>,
    /// Codimension of the ideal of the minors; `None` for the unit ideal.
    pub codim: Option<usize>,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactnessVerdict {
    pub composition_ok: bool,
    pub defects: Vec<CompositionDefect>,
    pub ranks: Vec<usize>,
    pub expected_ranks: Vec<usize>,
    pub rank_ok: Vec<bool>,
    pub grade_certificates: Vec<GradeCertificate>,
    pub minimal: bool,
    pub repairs: RepairLog,
    pub verdict: bool,
}

fn ideal_codim(minors: &[Polynomial]) -> Result<Option<usize>> {
    let Some(first) = minors.first() else { return Ok(Some(0)) };
    if minors.iter().any(|p| p.is_constant() && !p.is_zero()) {
        return Ok(None);
    }
    match codimension(minors, first.ring().order()) {
        Ok(c) => Ok(Some(c)),
        Err(Error::UnitIdeal) => Ok(None),
        Err(e) => Err(e),
    }
}

fn passes(codim: Option<usize>, level: usize) -> bool {
    codim.map_or(true, |c| c >= level)
}

fn certified_level(m: &PolynomialMatrix, level: usize, rank: usize, specs: &[MinorSpec]) -> Result<GradeCertificate> {
    let mut minors = Vec::new();
    let mut polys = Vec::new();
    for s in specs {
        if s.rows.len() != rank || s.cols.len() != rank {
            return Err(Error::BadIndexList(format!(
                "minor {} is {}x{}, expected {rank}x{rank}",
                s.label,
                s.rows.len(),
                s.cols.len()
            )));
        }
        let v = s.evaluate(m)?;
        if v.is_zero() {
            return Err(Error::CertificateRejected { level, label: s.label.clone() });
        }
        minors.push(MinorValue { label: s.label.clone(), rows: s.rows.clone(), cols: s.cols.clone(), value: v.to_string() });
        polys.push(v);
    }
    let codim = ideal_codim(&polys)?;
    Ok(GradeCertificate { level, required: level, source: "certificate".into(), minors, codim, ok: passes(codim, level) })
}

/// Collects nonzero maximal minors found from randomly permuted modular
/// eliminations until the codimension bound is met.
fn random_level(m: &PolynomialMatrix, level: usize, rank: usize, seed: u64) -> Result<GradeCertificate> {
    let cert = GradeCertificate {
        level,
        required: level,
        source: "random".into(),
        minors: Vec::new(),
        codim: Some(0),
        ok: false,
    };
    extend_randomly(m, rank, seed, cert)
}

/// Maximal minor picked by modular elimination of `values` with shuffled
/// row and column order; `None` if the rank there is below `rank`.
fn pivot_minor(values: &[Vec<u64>], rank: usize, rng: &mut ChaCha8Rng) -> Option<(Vec<usize>, Vec<usize>)> {
    let nrows = values.len();
    let ncols = values.first().map_or(0, Vec::len);
    let mut rows: Vec<usize> = (0..nrows).collect();
    let mut cols: Vec<usize> = (0..ncols).collect();
    rows.shuffle(rng);
    cols.shuffle(rng);
    let permuted: Vec<Vec<u64>> = rows.iter().map(|&r| cols.iter().map(|&c| values[r][c]).collect()).collect();
    let (r, pivots) = rank_mod_p(permuted, PRIME);
    if r < rank {
        return None;
    }
    let mut pr: Vec<usize> = pivots.iter().take(rank).map(|&(i, _)| rows[i] + 1).collect();
    let mut pc: Vec<usize> = pivots.iter().take(rank).map(|&(_, j)| cols[j] + 1).collect();
    pr.sort_unstable();
    pc.sort_unstable();
    Some((pr, pc))
}

/// Adds maximal minors to `cert` until it passes or attempts run out.
/// Points alternate between generic ones and points on coordinate subspaces
/// where all minors found so far vanish, so that a minor found there leaves
/// a component of their common zero set.
fn extend_randomly(m: &PolynomialMatrix, rank: usize, seed: u64, mut cert: GradeCertificate) -> Result<GradeCertificate> {
    let level = cert.level;
    if rank == 0 {
        cert.codim = None;
        cert.ok = true;
        return Ok(cert);
    }
    let nvars = m.ring().nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (level as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let mut polys: Vec<Polynomial> = cert
        .minors
        .iter()
        .map(|mv| MinorSpec::new(mv.label.clone(), mv.rows.clone(), mv.cols.clone()).evaluate(m))
        .collect::<Result<_>>()?;
    let start = cert.minors.len();
    if !polys.is_empty() {
        cert.codim = ideal_codim(&polys)?;
    }
    let mut zero_sets: Vec<Vec<usize>> = vec![Vec::new()];
    for size in 1..nvars {
        zero_sets.extend((0..nvars).combinations(size));
    }
    zero_sets.extend(std::iter::repeat(Vec::new()).take(RANDOM_MINOR_ATTEMPTS - 1));
    for size in 1..nvars {
        zero_sets.extend((0..nvars).combinations(size));
    }
    for zeros in zero_sets {
        if passes(cert.codim, level) && !polys.is_empty() {
            break;
        }
        let mut point: Vec<u64> = (0..nvars).map(|_| rng.gen_range(1..PRIME)).collect();
        for &v in &zeros {
            point[v] = 0;
        }
        if !zeros.is_empty() && polys.iter().any(|q| q.eval_mod(&point, PRIME) != Some(0)) {
            continue;
        }
        let Some(values) = m.eval_mod(&point, PRIME) else { continue };
        let Some((rows, cols)) = pivot_minor(&values, rank, &mut rng) else { continue };
        if cert.minors.iter().any(|mv| mv.rows == rows && mv.cols == cols) {
            continue;
        }
        let spec = MinorSpec::new(format!("random{}", cert.minors.len() - start + 1), rows, cols);
        let v = spec.evaluate(m)?;
        if v.is_zero() {
            continue;
        }
        cert.minors.push(MinorValue { label: spec.label, rows: spec.rows, cols: spec.cols, value: v.to_string() });
        polys.push(v);
        cert.codim = ideal_codim(&polys)?;
    }
    cert.ok = !polys.is_empty() && passes(cert.codim, level);
    Ok(cert)
}

/// Buchsbaum-Eisenbud check of `c`. `certificates[i]` lists the minors of
/// `d_{i+1}` to use; levels without one fall back to a seeded random search,
/// and listed minors that fall short of the bound are supplemented by it.
pub fn buchsbaum_eisenbud_verify(c: &FreeComplex, certificates: Option<&[Vec<MinorSpec>]>) -> Result<ExactnessVerdict> {
    buchsbaum_eisenbud_verify_seeded(c, certificates, super::seed())
}

pub fn buchsbaum_eisenbud_verify_seeded(
    c: &FreeComplex,
    certificates: Option<&[Vec<MinorSpec>]>,
    seed: u64,
) -> Result<ExactnessVerdict> {
    let defects = composition_defects(c)?;
    let expected = c.expected_ranks();
    let mut ranks = Vec::new();
    let mut rank_ok = Vec::new();
    let mut grades = Vec::new();
    for (i, d) in c.differentials().iter().enumerate() {
        let level = i + 1;
        let rank = matrix_rank_seeded(d, seed);
        ranks.push(rank);
        rank_ok.push(rank == expected[i]);
        let specs = certificates.and_then(|cs| cs.get(i)).filter(|s| !s.is_empty());
        grades.push(match specs {
            Some(s) => {
                let cert = certified_level(d, level, expected[i], s)?;
                if cert.ok {
                    cert
                } else {
                    let mut cert = extend_randomly(d, expected[i], seed, cert)?;
                    cert.source = "certificate+random".into();
                    cert
                }
            }
            None => random_level(d, level, expected[i], seed)?,
        });
    }
    let minimal = c.differentials().iter().all(|d| d.constant_cells().is_empty());
    let verdict = defects.is_empty() && rank_ok.iter().all(|&b| b) && grades.iter().all(|g| g.ok);
    Ok(ExactnessVerdict {
        composition_ok: defects.is_empty(),
        defects,
        ranks,
        expected_ranks: expected,
        rank_ok,
        grade_certificates: grades,
        minimal,
        repairs: RepairLog::default(),
        verdict,
    })
}

/// Repairs failing columns first, then verifies the repaired complex.
pub fn verify_with_repair(
    c: &FreeComplex,
    certificates: Option<&[Vec<MinorSpec>]>,
) -> Result<(FreeComplex, ExactnessVerdict)> {
    let (fixed, log) = repair_complex(c)?;
    let mut v = buchsbaum_eisenbud_verify(&fixed, certificates)?;
    v.verdict &= log.failed.is_empty();
    v.repairs = log;
    Ok((fixed, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Ring;

    fn koszul3() -> FreeComplex {
        let r = Ring::degrevlex(&["x", "y", "z"]);
        let p = |s: &str| r.parse(s).unwrap();
        let z = || p("0");
        let d1 = PolynomialMatrix::row_vector(&r, &[p("x"), p("y"), p("z")]).unwrap();
        let d2 = PolynomialMatrix::from_rows(
            &r,
            &[vec![p("-y"), p("-z"), z()], vec![p("x"), z(), p("-z")], vec![z(), p("x"), p("y")]],
        )
        .unwrap();
        let d3 = PolynomialMatrix::from_rows(&r, &[vec![p("z")], vec![p("-y")], vec![p("x")]]).unwrap();
        FreeComplex::new(vec![d1, d2, d3]).unwrap()
    }

    #[test]
    fn koszul_complex_is_exact() {
        let v = buchsbaum_eisenbud_verify_seeded(&koszul3(), None, 0).unwrap();
        assert!(v.verdict, "{v:?}");
        assert_eq!(v.ranks, vec![1, 2, 1]);
        assert!(v.minimal);
    }

    #[test]
    fn principal_ideal() {
        let r = Ring::degrevlex(&["x1", "x2", "x3", "x4"]);
        let f = r.parse("x2*x3 - x1*x4").unwrap();
        let c = FreeComplex::new(vec![PolynomialMatrix::row_vector(&r, &[f]).unwrap()]).unwrap();
        let cert = vec![vec![MinorSpec::new("f", vec![1], vec![1])]];
        let v = buchsbaum_eisenbud_verify_seeded(&c, Some(&cert), 0).unwrap();
        assert!(v.verdict);
        assert_eq!(v.grade_certificates[0].codim, Some(1));
    }

    #[test]
    fn non_exact_complex_fails() {
        // The syzygy column is x times the true one, so grade I_1(d2) = 1.
        let r = Ring::degrevlex(&["x", "y", "z"]);
        let p = |s: &str| r.parse(s).unwrap();
        let d1 = PolynomialMatrix::row_vector(&r, &[p("x*y"), p("x*z")]).unwrap();
        let d2 = PolynomialMatrix::from_rows(&r, &[vec![p("-x*z")], vec![p("x*y")]]).unwrap();
        let c = FreeComplex::new(vec![d1, d2]).unwrap();
        let cert = vec![
            vec![MinorSpec::new("a", vec![1], vec![1]), MinorSpec::new("b", vec![1], vec![2])],
            vec![MinorSpec::new("c", vec![1], vec![1]), MinorSpec::new("d", vec![2], vec![1])],
        ];
        let v = buchsbaum_eisenbud_verify_seeded(&c, Some(&cert), 0).unwrap();
        assert!(v.composition_ok);
        assert!(v.grade_certificates[0].ok);
        assert!(!v.grade_certificates[1].ok);
        assert!(!v.verdict);
    }

    #[test]
    fn zero_minor_is_rejected() {
        let r = Ring::degrevlex(&["x", "y"]);
        let d1 = PolynomialMatrix::row_vector(&r, &[r.parse("0").unwrap()]).unwrap();
        let c = FreeComplex::new(vec![d1]).unwrap();
        let cert = vec![vec![MinorSpec::new("bad", vec![1], vec![1])]];
        match buchsbaum_eisenbud_verify_seeded(&c, Some(&cert), 0) {
            Err(Error::CertificateRejected { level: 1, label }) => assert_eq!(label, "bad"),
            other => panic!("{other:?}"),
        }
    }
}
