use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::matrix::{check_indices, PolynomialMatrix};
use crate::error::Result;
use crate::poly::{inv_mod, Coeff, Polynomial, Ring};

/// Largest prime below `2^32`, used for modular pre-passes.
pub const PRIME: u64 = 4_294_967_291;

/// A random evaluation point in `[1, PRIME)`, deterministic in `seed`.
pub fn random_point(nvars: usize, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..nvars).map(|_| rng.gen_range(1..PRIME)).collect()
}

/// Rank of a dense matrix over `F_p`, with the pivot cells found.
pub fn rank_mod_p(mut a: Vec<Vec<u64>>, p: u64) -> (usize, Vec<(usize, usize)>) {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut row_of: Vec<usize> = (0..rows).collect();
    let mut pivots = Vec::new();
    let mut k = 0;
    for c in 0..cols {
        if k == rows {
            break;
        }
        let Some(pr) = (k..rows).find(|&r| a[r][c] != 0) else { continue };
        a.swap(k, pr);
        row_of.swap(k, pr);
        let inv = inv_mod(a[k][c], p);
        for r in k + 1..rows {
            if a[r][c] != 0 {
                let f = a[r][c] * inv % p;
                for j in c..cols {
                    let sub = f * a[k][j] % p;
                    a[r][j] = (a[r][j] + p - sub) % p;
                }
            }
        }
        pivots.push((row_of[k], c));
        k += 1;
    }
    (k, pivots)
}

/// Rank of `m` evaluated at a random point mod [`PRIME`]. This never exceeds
/// the symbolic rank, and each pivot set names a nonzero minor.
pub fn modular_rank(m: &PolynomialMatrix, seed: u64) -> (usize, Vec<(usize, usize)>) {
    let point = random_point(m.ring().nvars(), seed);
    match m.eval_mod(&point, PRIME) {
        Some(a) => rank_mod_p(a, PRIME),
        None => (0, Vec::new()),
    }
}

fn exact_quotient(num: &Polynomial, den: &Polynomial) -> Polynomial {
    if den.is_constant() {
        return num.scale(&(Coeff::one() / den.constant_coeff()));
    }
    if den.num_terms() == 1 {
        let (m, c) = den.leading_term().expect("nonzero");
        return num.div_monomial(m).scale(&(Coeff::one() / c));
    }
    num.exact_div(den).expect("Bareiss division is exact")
}

fn pivot_weight(p: &Polynomial) -> (usize, u64) {
    (p.num_terms(), p.total_degree().unwrap_or(0))
}

/// Fraction-free elimination; returns the rank and, for square input, the
/// determinant.
fn bareiss(mut a: Vec<Vec<Polynomial>>, ring: &Ring) -> (usize, Polynomial) {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = Polynomial::one(ring);
    let mut negate = false;
    let mut k = 0;
    for c in 0..cols {
        if k == rows {
            break;
        }
        let Some(pr) = (k..rows)
            .filter(|&r| !a[r][c].is_zero())
            .min_by_key(|&r| (pivot_weight(&a[r][c]), r))
        else {
            continue;
        };
        if pr != k {
            a.swap(k, pr);
            negate = !negate;
        }
        let (head, tail) = a.split_at_mut(k + 1);
        let pivot_row = &head[k];
        let piv = &pivot_row[c];
        for row in tail.iter_mut() {
            let lead = std::mem::replace(&mut row[c], Polynomial::zero(ring));
            for j in c + 1..cols {
                let mut v = piv.try_mul(&row[j]).expect("same ring");
                if !lead.is_zero() && !pivot_row[j].is_zero() {
                    v = v.try_sub(&lead.try_mul(&pivot_row[j]).expect("same ring")).expect("same ring");
                }
                row[j] = if v.is_zero() { v } else { exact_quotient(&v, &prev) };
            }
        }
        prev = piv.clone();
        k += 1;
    }
    let det = if rows == cols && k == rows {
        if rows == 0 {
            Polynomial::one(ring)
        } else if negate {
            a[rows - 1][cols - 1].neg()
        } else {
            a[rows - 1][cols - 1].clone()
        }
    } else {
        Polynomial::zero(ring)
    };
    (k, det)
}

/// Determinant of a square dense matrix by Bareiss elimination.
pub fn determinant(ring: &Ring, a: Vec<Vec<Polynomial>>) -> Polynomial {
    assert!(a.iter().all(|r| r.len() == a.len()), "square matrix required");
    bareiss(a, ring).1
}

/// Determinant of the submatrix on `rows` x `cols` (0-based, strictly
/// increasing).
pub fn minor_determinant(m: &PolynomialMatrix, rows: &[usize], cols: &[usize]) -> Result<Polynomial> {
    check_indices(rows, m.rows(), "row")?;
    check_indices(cols, m.cols(), "column")?;
    if rows.len() != cols.len() {
        return Err(crate::Error::BadIndexList(format!(
            "{} rows but {} columns",
            rows.len(),
            cols.len()
        )));
    }
    let sub = m.submatrix(rows, cols)?;
    Ok(determinant(m.ring(), sub.to_dense()))
}

/// Rank over the fraction field of the polynomial ring.
pub fn matrix_rank(m: &PolynomialMatrix) -> usize {
    matrix_rank_seeded(m, super::seed())
}

pub fn matrix_rank_seeded(m: &PolynomialMatrix, seed: u64) -> usize {
    let (lower, _) = modular_rank(m, seed);
    if lower == m.rows().min(m.cols()) {
        return lower;
    }
    // Drop zero rows and columns before the exact pass.
    let live_rows: Vec<usize> = (0..m.rows()).filter(|&r| (0..m.cols()).any(|c| m.get(r, c).is_some())).collect();
    let live_cols: Vec<usize> = (0..m.cols()).filter(|&c| (0..m.rows()).any(|r| m.get(r, c).is_some())).collect();
    let sub = m.submatrix(&live_rows, &live_cols).expect("valid indices");
    let (rank, _) = bareiss(sub.to_dense(), m.ring());
    debug_assert!(rank >= lower);
    rank
}

/// Field operations needed by [`solve_sparse`].
pub trait Field: Clone {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn inv(&self) -> Self;
}

impl Field for Coeff {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn inv(&self) -> Self {
        Coeff::one() / self
    }
}

/// Residue modulo [`PRIME`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp(pub u64);

impl Field for Fp {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, o: &Self) -> Self {
        Fp((self.0 + o.0) % PRIME)
    }
    fn sub(&self, o: &Self) -> Self {
        Fp((self.0 + PRIME - o.0) % PRIME)
    }
    fn mul(&self, o: &Self) -> Self {
        Fp(self.0 * o.0 % PRIME)
    }
    fn inv(&self) -> Self {
        Fp(inv_mod(self.0, PRIME))
    }
}

/// A linear equation `sum coeffs[j] * u_j = rhs`.
pub type Equation<F> = (BTreeMap<usize, F>, F);

/// Solves a sparse linear system, setting free unknowns to zero. `None` if
/// inconsistent.
pub fn solve_sparse<F: Field>(equations: Vec<Equation<F>>, nunknowns: usize) -> Option<Vec<F>> {
    // pivot column -> normalized row whose smallest column is the pivot
    let mut pivots: BTreeMap<usize, Equation<F>> = BTreeMap::new();
    for (mut lhs, mut rhs) in equations {
        lhs.retain(|_, v| !v.is_zero());
        let mut floor = 0;
        loop {
            let next = lhs.range(floor..).map(|(c, _)| *c).find(|c| pivots.contains_key(c));
            let Some(c) = next else { break };
            let f = lhs.remove(&c).expect("present");
            let (prow, prhs) = &pivots[&c];
            for (j, v) in prow.iter().filter(|(j, _)| **j != c) {
                let nv = lhs.get(j).cloned().unwrap_or_else(F::zero).sub(&f.mul(v));
                if nv.is_zero() {
                    lhs.remove(j);
                } else {
                    lhs.insert(*j, nv);
                }
            }
            rhs = rhs.sub(&f.mul(prhs));
            floor = c + 1;
        }
        match lhs.keys().next().copied() {
            None => {
                if !rhs.is_zero() {
                    return None;
                }
            }
            Some(c) => {
                let inv = lhs[&c].inv();
                let row: BTreeMap<usize, F> = lhs.iter().map(|(j, v)| (*j, v.mul(&inv))).collect();
                pivots.insert(c, (row, rhs.mul(&inv)));
            }
        }
    }
    let mut sol = vec![F::zero(); nunknowns];
    for (c, (row, rhs)) in pivots.iter().rev() {
        let mut v = rhs.clone();
        for (j, a) in row.iter().filter(|(j, _)| *j != c) {
            v = v.sub(&a.mul(&sol[*j]));
        }
        sol[*c] = v;
    }
    Some(sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::coeff_int;

    fn laplace(a: &[Vec<Polynomial>], ring: &Ring) -> Polynomial {
        let n = a.len();
        if n == 0 {
            return Polynomial::one(ring);
        }
        let mut acc = Polynomial::zero(ring);
        for j in 0..n {
            if a[0][j].is_zero() {
                continue;
            }
            let minor: Vec<Vec<Polynomial>> = a[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, p)| p.clone()).collect())
                .collect();
            let term = a[0][j].try_mul(&laplace(&minor, ring)).unwrap();
            acc = if j % 2 == 0 { acc.try_add(&term).unwrap() } else { acc.try_sub(&term).unwrap() };
        }
        acc
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let ring = Ring::degrevlex(&["x", "y", "z"]);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..30 {
            let n = rng.gen_range(1..=4);
            let a: Vec<Vec<Polynomial>> = (0..n)
                .map(|_| {
                    (0..n)
                        .map(|_| {
                            let terms = (0..rng.gen_range(0..3))
                                .map(|_| {
                                    let e = [rng.gen_range(0..3), rng.gen_range(0..3), rng.gen_range(0..2)];
                                    (crate::poly::Monomial::new(&e), coeff_int(rng.gen_range(-3..=3)))
                                })
                                .collect();
                            Polynomial::from_terms(&ring, terms)
                        })
                        .collect()
                })
                .collect();
            assert_eq!(determinant(&ring, a.clone()), laplace(&a, &ring));
        }
    }

    #[test]
    fn rank_of_dependent_rows() {
        let ring = Ring::degrevlex(&["x", "y"]);
        let p = |s: &str| ring.parse(s).unwrap();
        let m = PolynomialMatrix::from_rows(
            &ring,
            &[vec![p("x"), p("y"), p("0")], vec![p("x^2"), p("x*y"), p("0")], vec![p("0"), p("0"), p("y")]],
        )
        .unwrap();
        assert_eq!(matrix_rank(&m), 2);
        assert_eq!(matrix_rank(&PolynomialMatrix::zeros(&ring, 2, 3)), 0);
        assert_eq!(
            minor_determinant(&m, &[], &[]).unwrap(),
            Polynomial::one(&ring)
        );
        assert!(minor_determinant(&m, &[0, 1], &[0]).is_err());
    }

    #[test]
    fn sparse_solver() {
        let eq = |pairs: &[(usize, i64)], r: i64| {
            (pairs.iter().map(|(j, v)| (*j, coeff_int(*v))).collect::<BTreeMap<_, _>>(), coeff_int(r))
        };
        // u0 + u1 = 3, u1 - u2 = 1, free u2
        let sol = solve_sparse(vec![eq(&[(0, 1), (1, 1)], 3), eq(&[(1, 1), (2, -1)], 1)], 3).unwrap();
        assert_eq!(sol, vec![coeff_int(2), coeff_int(1), coeff_int(0)]);
        assert!(solve_sparse(vec![eq(&[(0, 1)], 1), eq(&[(0, 2)], 3)], 1).is_none());
        let fp = solve_sparse(vec![(BTreeMap::from([(0, Fp(2))]), Fp(4))], 1).unwrap();
        assert_eq!(fp, vec![Fp(2)]);
    }
}
