use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::polynomial::Coeff;
use super::{Monomial, Polynomial, Ring};
use crate::error::{Error, Result};

/// Parses sums of terms such as `x1^3*x3^2 - 2/3*x0*x4 + 5`.
/// Juxtaposition is not multiplication; factors are joined by `*`.
pub(super) fn parse_polynomial(ring: &Ring, text: &str) -> Result<Polynomial> {
    let src: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    if src.is_empty() {
        return Err(Error::Parse("empty input".into()));
    }
    let mut pos = 0;
    let mut terms = Vec::new();
    let mut first = true;
    while pos < src.len() {
        let mut sign = Coeff::one();
        match src[pos] {
            '+' => pos += 1,
            '-' => {
                sign = -sign;
                pos += 1;
            }
            _ if !first => return Err(Error::Parse(format!("expected `+` or `-` at {pos}"))),
            _ => {}
        }
        first = false;
        let (m, c) = parse_term(ring, &src, &mut pos)?;
        terms.push((m, c * sign));
    }
    Ok(Polynomial::from_terms(ring, terms))
}

fn parse_term(ring: &Ring, src: &[char], pos: &mut usize) -> Result<(Monomial, Coeff)> {
    let mut coeff = Coeff::one();
    let mut mono = Monomial::one(ring.nvars());
    let mut need_factor = true;
    while need_factor {
        if *pos >= src.len() {
            return Err(Error::Parse("unexpected end of input".into()));
        }
        if src[*pos].is_ascii_digit() {
            let n = read_int(src, pos)?;
            let mut c = Coeff::from_integer(n);
            if *pos < src.len() && src[*pos] == '/' {
                *pos += 1;
                let d = read_int(src, pos)?;
                if d.is_zero() {
                    return Err(Error::Parse("zero denominator".into()));
                }
                c /= Coeff::from_integer(d);
            }
            coeff *= c;
        } else if src[*pos].is_alphabetic() || src[*pos] == '_' {
            let start = *pos;
            while *pos < src.len() && (src[*pos].is_alphanumeric() || src[*pos] == '_') {
                *pos += 1;
            }
            let name: String = src[start..*pos].iter().collect();
            let var = ring.var_index(&name)?;
            let mut e = 1u32;
            if *pos < src.len() && src[*pos] == '^' {
                *pos += 1;
                let n = read_int(src, pos)?;
                e = u32::try_from(n).map_err(|_| Error::Parse("exponent too large".into()))?;
            }
            let cur = mono.exponent(var);
            mono.set_exponent(
                var,
                cur.checked_add(e).ok_or_else(|| Error::Parse("exponent too large".into()))?,
            );
        } else {
            return Err(Error::Parse(format!("unexpected `{}` at {}", src[*pos], *pos)));
        }
        need_factor = *pos < src.len() && src[*pos] == '*';
        if need_factor {
            *pos += 1;
        }
    }
    Ok((mono, coeff))
}

fn read_int(src: &[char], pos: &mut usize) -> Result<BigInt> {
    let start = *pos;
    while *pos < src.len() && src[*pos].is_ascii_digit() {
        *pos += 1;
    }
    if start == *pos {
        return Err(Error::Parse(format!("expected a number at {start}")));
    }
    let s: String = src[start..*pos].iter().collect();
    s.parse::<BigInt>().map_err(|e| Error::Parse(e.to_string()))
}
