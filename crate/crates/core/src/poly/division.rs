use num_traits::Zero;

use super::polynomial::{merge_scaled, Coeff};
use super::{Monomial, Polynomial};

/// Multivariate division. Returns the quotients (one per divisor) and the
/// remainder, so that `f = sum q_i g_i + r` and no term of `r` is divisible
/// by a leading monomial of a divisor. Divisors are tried in list order.
///
/// All inputs must share the ring of `f`.
pub fn divide(f: &Polynomial, divisors: &[Polynomial]) -> (Vec<Polynomial>, Polynomial) {
    let ring = f.ring();
    let mut quotients: Vec<Vec<(Monomial, Coeff)>> = vec![Vec::new(); divisors.len()];
    let rem = reduce(f, divisors, Some(&mut quotients));
    let qs = quotients
        .into_iter()
        .map(|t| Polynomial::from_terms(ring, t))
        .collect();
    (qs, rem)
}

/// Full reduction of `f` by `divisors`; only the remainder is returned.
pub fn normal_form(f: &Polynomial, divisors: &[Polynomial]) -> Polynomial {
    reduce(f, divisors, None)
}

fn reduce(
    f: &Polynomial,
    divisors: &[Polynomial],
    mut quotients: Option<&mut Vec<Vec<(Monomial, Coeff)>>>,
) -> Polynomial {
    let ring = f.ring();
    let order = ring.order();
    for g in divisors {
        assert!(g.ring().same_as(ring), "divisor in a different ring");
    }
    let leads: Vec<Option<(&Monomial, &Coeff)>> =
        divisors.iter().map(|g| g.leading_term()).collect();
    let mut p: Vec<(Monomial, Coeff)> = f.terms().to_vec();
    let mut start = 0usize;
    let mut rem: Vec<(Monomial, Coeff)> = Vec::new();
    while start < p.len() {
        let (m, c) = &p[start];
        let hit = leads.iter().enumerate().find_map(|(i, l)| {
            l.and_then(|(lm, lc)| lm.quotient_of(m).map(|q| (i, q, lc)))
        });
        match hit {
            None => {
                rem.push(p[start].clone());
                start += 1;
            }
            Some((i, q, lc)) => {
                let coef = c / lc;
                let neg = -coef.clone();
                let tail = &divisors[i].terms()[1..];
                p = merge_scaled(order, &p[start + 1..], &neg, &q, tail);
                start = 0;
                if let Some(qs) = quotients.as_deref_mut() {
                    qs[i].push((q, coef));
                }
            }
        }
    }
    debug_assert!(rem.iter().all(|(_, c)| !c.is_zero()));
    Polynomial::from_terms(ring, rem)
}
