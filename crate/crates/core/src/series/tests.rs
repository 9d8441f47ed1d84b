use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::*;
use crate::corealg::parse_presentation;
use crate::gbasis::{buchberger_truncated, GbLimits};

fn gb(src: &str, d: u32) -> GroebnerBasis {
    buchberger_truncated(&Arc::new(parse_presentation(src).unwrap()), d, &GbLimits::default()).unwrap()
}

const PLANE: &str = "field Q; gens x:1 y:1; rels x*y - y*x";
const T34: &str = "field Q; gens x:1 y:1; rels x^2*y - y*x^2, x*y^2 - y^2*x";
const B: &str = "field Q; gens x:1 y:1; rels x^2*y - y*x^2, x*y^2 - y^2*x, x^2";

/// Evaluates a rational series at a rational point.
fn eval(h: &RationalSeries, t: &BigRational) -> BigRational {
    let ev = |p: &UPoly| p.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * t + BigRational::from(c.clone()));
    ev(h.numerator()) / ev(&h.denominator_poly())
}

/// Brute search for (σ, ℓ) with h(1/t) = σ t^ℓ h(t) at several sample points.
fn stanley_oracle(h: &RationalSeries) -> Vec<(i8, i64)> {
    let pts: Vec<BigRational> = [2, 3, 5, 7].iter().map(|&k| BigRational::from(BigInt::from(k))).collect();
    let mut hits = Vec::new();
    for ell in -20i64..=20 {
        for sign in [1i8, -1] {
            let ok = pts.iter().all(|t| {
                let lhs = eval(h, &t.recip());
                let rhs = eval(h, t) * t.pow(ell as i32) * BigRational::from(BigInt::from(sign));
                lhs == rhs
            });
            if ok {
                hits.push((sign, ell));
            }
        }
    }
    hits
}

#[test]
fn truncated_examples() {
    assert_eq!(hilbert_truncated(&gb(PLANE, 8), 5).unwrap().coeffs(), &[1, 2, 3, 4, 5, 6]);
    assert_eq!(hilbert_truncated(&gb("field Q; gens x:1; rels x^3", 6), 5).unwrap().coeffs(), &[1, 1, 1, 0, 0, 0]);
    // count (a, b, c) with a + b + 2c = j: coefficients of 1/((1−t)²(1−t²))
    let oracle: Vec<i64> = (0..=10i64).map(|j| (0..=j / 2).map(|c| j - 2 * c + 1).sum()).collect();
    let t = hilbert_truncated(&gb(T34, 8), 10).unwrap();
    assert_eq!(t.coeffs(), oracle.as_slice());
    assert_eq!(&t.coeffs()[..5], &[1, 2, 4, 6, 9]);
}

#[test]
fn truncated_matches_normal_words() {
    for src in [PLANE, T34, B, "field Q; gens x:1 y:1; rels x*y*x - y^3"] {
        let g = gb(src, 12);
        let t = hilbert_truncated(&g, 9).unwrap();
        for j in 0..=9 {
            assert_eq!(t.get(j) as usize, g.normal_words(j).unwrap().words.len(), "{src} {j}");
        }
    }
}

#[test]
fn rational_examples() {
    for d in 2..6u32 {
        let h = hilbert_rational(&gb(&format!("field Q; gens x:1; rels x^{d}"), 2 * d)).unwrap();
        let mut num = vec![0i64; d as usize + 1];
        num[0] = 1;
        num[d as usize] = -1;
        assert!(h.same_function(&RationalSeries::from_i64(&num, &[1])));
        assert_eq!(h.degree(), d as i64 - 1);
    }
    let h = hilbert_rational(&gb(T34, 8)).unwrap();
    assert_eq!(h.denominator(), &Denominator::Product(vec![1, 1, 2]));
    assert_eq!(h.numerator(), &UPoly::one());
    assert_eq!(h.degree(), -4);
    assert_eq!(h.to_string(), "(1) / (1-t)(1-t)(1-t^2)");
    let h = hilbert_rational(&gb(B, 8)).unwrap();
    assert!(h.same_function(&RationalSeries::from_i64(&[1], &[1, 1])));
    assert_eq!(h.degree(), -2);
    let h = hilbert_rational(&gb(PLANE, 8)).unwrap();
    assert_eq!(h.denominator(), &Denominator::Product(vec![1, 1]));
}

#[test]
fn rational_reproduces_truncated() {
    let cases = [
        PLANE,
        T34,
        B,
        "field Q; gens x:1 y:1; rels x*y*x - y^3",
        "field Q; gens x:1 t:2; rels t^2 - x^4, x*t - t*x",
        "field Q; gens x:1 y:1 z:1; rels x*y - y*x, y*z - z*y, z*x - x*z",
        "field Q; gens x:1 y:1; rels x^2, x*y, y^2",
        "field Q; gens x:1 y:1; rels x*y",
    ];
    for src in cases {
        let g = gb(src, 12);
        let h = hilbert_rational(&g).unwrap();
        assert_eq!(h.expand(12).unwrap(), hilbert_truncated(&g, 12).unwrap(), "{src}: {h}");
    }
}

#[test]
fn raw_denominator_for_free_growth() {
    // normal words of k<x,y>/(xy) are y^a x^b
    let h = hilbert_rational(&gb("field Q; gens x:1 y:1; rels x*y", 6)).unwrap();
    assert_eq!(h.denominator(), &Denominator::Product(vec![1, 1]));
    // the free algebra on two letters: 1/(1 − 2t)
    let free = RationalSeries::from_fraction(&UPoly::one(), &UPoly::from_i64(&[1, -2])).unwrap();
    assert_eq!(free.denominator(), &Denominator::Raw(vec![1, -2]));
    assert_eq!(free.expand(4).unwrap().coeffs(), &[1, 2, 4, 8, 16]);
    assert_eq!(free.degree(), -1);
}

#[test]
fn incomplete_refused() {
    let g = gb("field Q; gens x:1 y:1; rels y*x - x^2", 6);
    assert!(matches!(hilbert_rational(&g), Err(SeriesError::Incomplete(6))));
    assert!(hilbert_truncated(&g, 6).is_ok());
    assert!(hilbert_truncated(&g, 7).is_err());
}

#[test]
fn products() {
    let a = HilbertSeries::Rational(RationalSeries::from_i64(&[1, 1], &[]));
    let p = series_product(&a, &a).unwrap();
    let HilbertSeries::Rational(r) = &p else { panic!() };
    assert_eq!(r.numerator(), &UPoly::from_i64(&[1, 2, 1]));
    assert_eq!(r.degree(), 2);
    let one = HilbertSeries::Rational(RationalSeries::from_i64(&[1], &[]));
    assert_eq!(series_product(&a, &one).unwrap(), a);
    let t = RationalSeries::from_i64(&[1], &[1, 1, 2]);
    assert_eq!(t.mul(&RationalSeries::from_i64(&[1, 1], &[])).degree(), -4 + 1);
    let tr = HilbertSeries::Truncated(TruncatedSeries::new(vec![1, 1, 1, 1]));
    let HilbertSeries::Truncated(m) = series_product(&tr, &a).unwrap() else { panic!() };
    assert_eq!(m.coeffs(), &[1, 2, 2, 2]);
}

#[test]
fn stanley_examples() {
    for d in 2..6i64 {
        let mut num = vec![0i64; d as usize + 1];
        num[0] = 1;
        num[d as usize] = -1;
        let h = RationalSeries::from_i64(&num, &[1]);
        let v = stanley_check(&h);
        assert_eq!(v, StanleyVerdict::Satisfied { sign: 1, ell: -(d - 1) });
        assert_eq!(stanley_oracle(&h), vec![(1, -(d - 1))]);
    }
    let t = RationalSeries::from_i64(&[1], &[1, 1, 2]);
    assert_eq!(stanley_check(&t), StanleyVerdict::Satisfied { sign: -1, ell: 4 });
    assert_eq!(stanley_oracle(&t), vec![(-1, 4)]);
    let bad = RationalSeries::from_i64(&[1, 2], &[]);
    assert_eq!(stanley_check(&bad), StanleyVerdict::Violated);
    assert!(stanley_oracle(&bad).is_empty());
    let shifted = RationalSeries::from_i64(&[0, 0, 1], &[1, 1]);
    assert_eq!(stanley_check(&shifted), StanleyVerdict::Satisfied { sign: 1, ell: -2 });
    assert_eq!(stanley_oracle(&shifted), vec![(1, -2)]);
}

#[test]
fn stanley_substitution_is_involutive() {
    // applying h ↦ σ t^{−ℓ} h(1/t) twice gives h back, checked at sample points
    let t = RationalSeries::from_i64(&[1], &[1, 1, 2]);
    let StanleyVerdict::Satisfied { sign, ell } = stanley_check(&t) else { panic!() };
    let s = BigRational::from(BigInt::from(sign));
    for k in [2, 3, 11] {
        let x = BigRational::from(BigInt::from(k));
        let once = |y: &BigRational| &s * y.pow(-ell as i32) * eval(&t, &y.recip());
        let twice = &s * x.pow(-ell as i32) * once(&x.recip());
        assert_eq!(twice, eval(&t, &x));
        assert!((&s * &s).is_one());
    }
}
