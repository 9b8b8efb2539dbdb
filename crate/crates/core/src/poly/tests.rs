use super::*;
use num_traits::Zero;

fn affine() -> Ring {
    Ring::degrevlex(&["x1", "x2", "x3", "x4"])
}

fn projective() -> Ring {
    Ring::new(
        &["x0", "x1", "x2", "x3", "x4"],
        MonomialOrder::DegRevLex(vec![1, 2, 3, 4, 0]),
    )
    .unwrap()
}

#[test]
fn display_parse_round_trip() {
    let r = affine();
    for s in ["x2*x3^3 - x1*x4^3", "-2/3*x1^2 + 5", "0", "x1", "-x4^7 + 3*x2*x3"] {
        let p = r.parse(s).unwrap();
        assert_eq!(r.parse(&p.to_string()).unwrap(), p);
    }
    assert_eq!(r.parse("x2*x3^3 - x1*x4^3").unwrap().to_string(), "x2*x3^3 - x1*x4^3");
    assert_eq!(r.parse("x1*x4^3 + x3^3*x2").unwrap().to_string(), "x2*x3^3 + x1*x4^3");
}

#[test]
fn parse_errors() {
    let r = affine();
    assert!(matches!(r.parse("x9"), Err(crate::Error::UnknownVariable(_))));
    assert!(r.parse("x1 x2").is_err());
    assert!(r.parse("").is_err());
    assert!(r.parse("1/0").is_err());
}

#[test]
fn subtract_self_is_zero() {
    let r = affine();
    let f = r.parse("x2*x3 - x1*x4").unwrap();
    assert!(polynomial_arithmetic(ArithOp::Sub, &f, &f).unwrap().is_zero());
}

#[test]
fn monomial_multiple() {
    let r = affine();
    let f = r.parse("x2*x3 - x1*x4").unwrap();
    let m = r.parse("x3^3").unwrap();
    let p = polynomial_arithmetic(ArithOp::Mul, &f, &m).unwrap();
    assert_eq!(p.to_string(), "x2*x3^4 - x1*x3^3*x4");
}

#[test]
fn ring_mismatch_is_reported() {
    let a = affine().parse("x1").unwrap();
    let b = projective().parse("x1").unwrap();
    assert!(matches!(a.try_add(&b), Err(crate::Error::RingMismatch)));
}

#[test]
fn scalar_mul_needs_constant() {
    let r = affine();
    let f = r.parse("x1 - x2").unwrap();
    let c = r.parse("-3").unwrap();
    assert_eq!(
        polynomial_arithmetic(ArithOp::ScalarMul, &f, &c).unwrap().to_string(),
        "-3*x1 + 3*x2"
    );
    assert!(polynomial_arithmetic(ArithOp::ScalarMul, &f, &f).is_err());
}

#[test]
fn leading_terms() {
    let r = affine();
    let f = r.parse("x2*x3^3 - x1*x4^3").unwrap();
    let (c, m) = leading_term(r.order(), &f).unwrap();
    assert_eq!(c, coeff_int(1));
    assert_eq!(m, Monomial::new(&[0, 1, 3, 0]));
    let p6 = r.parse("x1^2*x2^2*x4^2 - x3^5").unwrap();
    assert_eq!(leading_term(r.order(), &p6).unwrap().1, Monomial::new(&[2, 2, 0, 2]));
    assert!(matches!(
        leading_term(r.order(), &Polynomial::zero(&r)),
        Err(crate::Error::ZeroPolynomial)
    ));
    // a different order on the same ring
    let x2_least = MonomialOrder::DegRevLex(vec![3, 2, 0, 1]);
    assert_eq!(leading_term(&x2_least, &f).unwrap().1, Monomial::new(&[1, 0, 0, 3]));
}

#[test]
fn normal_form_examples() {
    let r = affine();
    let f1 = r.parse("x2*x3^3 - x1*x4^3").unwrap();
    let m = r.parse("x1*x4^3").unwrap();
    assert_eq!(normal_form(&m, std::slice::from_ref(&f1)), m);
    assert!(normal_form(&Polynomial::zero(&r), std::slice::from_ref(&f1)).is_zero());
    let big = r.parse("x2^2*x3^4 + x1").unwrap();
    let nf = normal_form(&big, std::slice::from_ref(&f1));
    assert_eq!(nf.to_string(), "x1*x2*x3*x4^3 + x1");
}

#[test]
fn division_identity() {
    let r = affine();
    let f = r.parse("x1^3*x2 - 2*x2^2*x3 + x4^4 - 7").unwrap();
    let g = vec![r.parse("x1*x2 - x3").unwrap(), r.parse("x2^2 - x4").unwrap()];
    let (q, rem) = divide(&f, &g);
    let mut back = rem.clone();
    for (qi, gi) in q.iter().zip(&g) {
        back = back.try_add(&qi.try_mul(gi).unwrap()).unwrap();
    }
    assert_eq!(back, f);
    for (m, _) in rem.terms() {
        for gi in &g {
            assert!(!gi.leading_monomial().unwrap().divides(m));
        }
    }
    assert_eq!(f.exact_div(&g[0]), None);
    let prod = g[0].try_mul(&g[1]).unwrap();
    assert_eq!(prod.exact_div(&g[1]).unwrap(), g[0]);
}

#[test]
fn homogenization() {
    let a = affine();
    let p = projective();
    let mode = Homogenization::Homogenize { target: p.clone(), var: "x0".into() };
    let p1 = a.parse("x2*x3 - x1*x4").unwrap();
    assert_eq!(homogenize_dehomogenize(&p1, &mode).unwrap().to_string(), "x2*x3 - x1*x4");
    let p2 = a.parse("x2^4 - x3^3").unwrap();
    let h = homogenize_dehomogenize(&p2, &mode).unwrap();
    assert_eq!(h.to_string(), "x2^4 - x0*x3^3");
    assert!(h.is_homogeneous());
    let back = Homogenization::Dehomogenize { target: a.clone(), var: "x0".into() };
    assert_eq!(homogenize_dehomogenize(&h, &back).unwrap(), p2);
    let q1 = p.parse("x1^2*x2 - x0*x3*x4").unwrap();
    assert_eq!(q1.dehomogenize("x0", &a).unwrap().to_string(), "x1^2*x2 - x3*x4");
    let bad = Homogenization::Homogenize { target: p, var: "y".into() };
    assert!(homogenize_dehomogenize(&p1, &bad).is_err());
}

#[test]
fn substitution_and_modular_eval() {
    let a = affine();
    let t = Ring::degrevlex(&["t"]);
    let images: Vec<Polynomial> = [67u32, 70, 74, 75]
        .iter()
        .map(|&e| Polynomial::from_monomial(&t, Monomial::new(&[e])))
        .collect();
    let f1 = a.parse("x2*x3^3 - x1*x4^3").unwrap();
    assert!(f1.substitute(&images).unwrap().is_zero());
    assert_eq!(a.parse("x1").unwrap().substitute(&images).unwrap().to_string(), "t^67");
    let f = a.parse("1/2*x1^2 - x2 + 3").unwrap();
    let p = 1_000_003;
    let half = inv_mod(2, p);
    let expected = (half * 49 % p + p - 5 + 3) % p;
    assert_eq!(f.eval_mod(&[7, 5, 0, 0], p), Some(expected));
    assert!(coeff_int(0).is_zero());
}

#[test]
fn map_between_rings() {
    let a = affine();
    let p = projective();
    let f = a.parse("x1^2 - x4").unwrap();
    let g = f.map_to(&p).unwrap();
    assert_eq!(g.ring(), &p);
    assert_eq!(g.map_to(&a).unwrap(), f);
    let x0 = p.parse("x0").unwrap();
    assert!(x0.map_to(&a).is_err());
}
