//! Hilbert series: truncated coefficient lists and exact rational forms.

mod automaton;
mod upoly;

pub use automaton::NormalWordAutomaton;
pub use upoly::UPoly;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::gbasis::{GbError, GroebnerBasis};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error(transparent)]
    Gb(#[from] GbError),
    #[error("Gröbner basis is incomplete (certified through degree {0}); only a truncated series is available")]
    Incomplete(u32),
    #[error("coefficient does not fit in 64 bits")]
    Overflow,
    #[error("denominator must have nonzero constant term")]
    BadDenominator,
}

/// Coefficients c_0..c_D of a power series known modulo t^{D+1}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncatedSeries {
    coeffs: Vec<i64>,
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<i64>) -> TruncatedSeries {
        assert!(!coeffs.is_empty(), "a truncated series has at least c_0");
        TruncatedSeries { coeffs }
    }

    pub fn one(d: u32) -> TruncatedSeries {
        let mut c = vec![0; d as usize + 1];
        c[0] = 1;
        TruncatedSeries { coeffs: c }
    }

    /// Truncation degree D.
    pub fn bound(&self) -> u32 {
        self.coeffs.len() as u32 - 1
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn get(&self, j: u32) -> i64 {
        self.coeffs[j as usize]
    }

    pub fn truncate(&self, d: u32) -> TruncatedSeries {
        TruncatedSeries { coeffs: self.coeffs[..=(d.min(self.bound()) as usize)].to_vec() }
    }

    /// Product, known through the smaller bound.
    pub fn mul(&self, o: &TruncatedSeries) -> TruncatedSeries {
        let d = self.bound().min(o.bound()) as usize;
        let mut c = vec![0i64; d + 1];
        for i in 0..=d {
            for j in 0..=(d - i) {
                c[i + j] += self.coeffs[i] * o.coeffs[j];
            }
        }
        TruncatedSeries { coeffs: c }
    }

    /// Largest j with c_j ≠ 0, if any.
    pub fn top_nonzero(&self) -> Option<u32> {
        self.coeffs.iter().rposition(|&c| c != 0).map(|j| j as u32)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}, ... (mod t^{})", parts.join(", "), self.coeffs.len())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Denominator {
    /// ∏ (1 − t^e)
    Product(Vec<u32>),
    /// An unfactored polynomial with constant term 1.
    Raw(Vec<i64>),
}

/// p(t) / q(t) with q(0) = 1; the numerator may share factors with a product denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSeries {
    numerator: UPoly,
    denominator: Denominator,
    degree: i64,
}

#[derive(Serialize)]
struct RationalRecord<'a> {
    numerator: Vec<String>,
    denominator: &'a Denominator,
    degree: i64,
}

impl RationalSeries {
    /// Normalizes p/q: cancels the gcd, then rewrites q as ∏(1 − t^e) when q is a product of
    /// cyclotomic polynomials.
    pub fn from_fraction(p: &UPoly, q: &UPoly) -> Result<RationalSeries, SeriesError> {
        if q.coeff(0).is_zero() {
            return Err(SeriesError::BadDenominator);
        }
        if p.is_zero() {
            return Ok(RationalSeries { numerator: UPoly(Vec::new()), denominator: Denominator::Product(Vec::new()), degree: i64::MIN });
        }
        let g = p.gcd(q);
        let (mut p, mut q) = (p.div_exact(&g).unwrap(), q.div_exact(&g).unwrap());
        if q.coeff(0).is_negative() {
            p = p.neg();
            q = q.neg();
        }
        let degree = p.deg() - q.deg();
        if let Some(exps) = product_exponents(&q) {
            let d = exps.iter().fold(UPoly::one(), |acc, &e| acc.mul(&UPoly::one_minus_pow(e)));
            let num = p.mul(&d).div_exact(&q).expect("cyclotomic cover divides");
            return Ok(RationalSeries { numerator: num, denominator: Denominator::Product(exps), degree });
        }
        let raw = q.to_i64().ok_or(SeriesError::Overflow)?;
        Ok(RationalSeries { numerator: p, denominator: Denominator::Raw(raw), degree })
    }

    pub fn from_i64(num: &[i64], exps: &[u32]) -> RationalSeries {
        let q = exps.iter().fold(UPoly::one(), |acc, &e| acc.mul(&UPoly::one_minus_pow(e)));
        RationalSeries::from_fraction(&UPoly::from_i64(num), &q).unwrap()
    }

    pub fn numerator(&self) -> &UPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &Denominator {
        &self.denominator
    }

    pub fn denominator_poly(&self) -> UPoly {
        match &self.denominator {
            Denominator::Product(e) => e.iter().fold(UPoly::one(), |acc, &e| acc.mul(&UPoly::one_minus_pow(e))),
            Denominator::Raw(c) => UPoly::from_i64(c),
        }
    }

    /// deg p − deg q as a rational function (the a-invariant for h_A).
    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Numerator and denominator with all common factors removed, q(0) = 1.
    pub fn reduced(&self) -> (UPoly, UPoly) {
        let q = self.denominator_poly();
        let g = self.numerator.gcd(&q);
        if g.is_zero() {
            return (self.numerator.clone(), q);
        }
        let (mut p, mut q) = (self.numerator.div_exact(&g).unwrap(), q.div_exact(&g).unwrap());
        if q.coeff(0).is_negative() {
            p = p.neg();
            q = q.neg();
        }
        (p, q)
    }

    /// Power series coefficients c_0..c_d.
    pub fn expand(&self, d: u32) -> Result<TruncatedSeries, SeriesError> {
        let q = self.denominator_poly();
        let n = d as usize + 1;
        let mut c: Vec<BigInt> = vec![BigInt::zero(); n];
        for j in 0..n {
            let mut v = self.numerator.coeff(j);
            for i in 1..=j.min(q.0.len().saturating_sub(1)) {
                v -= &q.0[i] * &c[j - i];
            }
            c[j] = v; // q(0) = 1
        }
        let coeffs: Option<Vec<i64>> = c.iter().map(|x| i64::try_from(x).ok()).collect();
        Ok(TruncatedSeries::new(coeffs.ok_or(SeriesError::Overflow)?))
    }

    pub fn mul(&self, o: &RationalSeries) -> RationalSeries {
        let p = self.numerator.mul(&o.numerator);
        let q = self.denominator_poly().mul(&o.denominator_poly());
        RationalSeries::from_fraction(&p, &q).expect("product of valid denominators")
    }

    /// Equality as rational functions.
    pub fn same_function(&self, o: &RationalSeries) -> bool {
        self.numerator.mul(&o.denominator_poly()) == o.numerator.mul(&self.denominator_poly())
    }

    pub fn record(&self) -> serde_json::Value {
        serde_json::to_value(RationalRecord {
            numerator: self.numerator.0.iter().map(|c| c.to_string()).collect(),
            denominator: &self.denominator,
            degree: self.degree,
        })
        .unwrap()
    }
}

fn render_upoly(p: &UPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, c) in p.0.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match i {
            0 => String::new(),
            1 => "t".into(),
            _ => format!("t^{i}"),
        };
        if mono.is_empty() {
            out.push_str(&a.to_string());
        } else if a.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{a}*{mono}"));
        }
    }
    out
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = render_upoly(&self.numerator);
        match &self.denominator {
            Denominator::Product(e) if e.is_empty() => write!(f, "{num}"),
            Denominator::Product(e) => {
                let den: String = e
                    .iter()
                    .map(|&e| if e == 1 { "(1-t)".to_string() } else { format!("(1-t^{e})") })
                    .collect();
                write!(f, "({num}) / {den}")
            }
            Denominator::Raw(c) => write!(f, "({num}) / ({})", render_upoly(&UPoly::from_i64(c))),
        }
    }
}

/// Exponents e_i with q · r = ∏(1 − t^{e_i}) for some product r of cyclotomic factors,
/// when q is itself (up to sign) a product of cyclotomic polynomials. Larger orders first,
/// so (1 − t)²(1 − t²) stays as written rather than becoming (1 − t)³(1 + t).
fn product_exponents(q: &UPoly) -> Option<Vec<u32>> {
    let mut rest = q.clone();
    let mut mult: Vec<(u32, i64)> = Vec::new();
    let mut n = 1u32;
    while rest.deg() > 0 {
        if euler_phi(n) as i64 <= rest.deg() {
            let phi = upoly::cyclotomic(n);
            let mut k = 0;
            while let Some(r) = rest.div_exact(&phi) {
                rest = r;
                k += 1;
            }
            if k > 0 {
                mult.push((n, k));
            }
        }
        n += 1;
        // φ(n) ≥ √(n/2), so nothing beyond this bound divides
        if (n as i64) > 2 * q.deg() * q.deg() + 2 {
            break;
        }
    }
    if rest.deg() != 0 {
        return None;
    }
    let mut exps = Vec::new();
    while let Some(&(n, k)) = mult.iter().rev().find(|(_, k)| *k > 0) {
        for _ in 0..k {
            exps.push(n);
        }
        for (d, m) in mult.iter_mut() {
            if n % *d == 0 {
                *m -= k;
            }
        }
    }
    exps.sort_unstable();
    Some(exps)
}

fn euler_phi(n: u32) -> u32 {
    (1..=n).filter(|&k| num_integer::gcd(k, n) == 1).count() as u32
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HilbertSeries {
    Truncated(TruncatedSeries),
    Rational(RationalSeries),
}

impl HilbertSeries {
    pub fn truncated(&self, d: u32) -> Result<TruncatedSeries, SeriesError> {
        match self {
            HilbertSeries::Truncated(t) => Ok(t.truncate(d)),
            HilbertSeries::Rational(r) => r.expand(d),
        }
    }
}

/// h_A · h_B; stays rational when both factors are.
pub fn series_product(a: &HilbertSeries, b: &HilbertSeries) -> Result<HilbertSeries, SeriesError> {
    use HilbertSeries::*;
    Ok(match (a, b) {
        (Rational(x), Rational(y)) => Rational(x.mul(y)),
        (Truncated(x), Truncated(y)) => Truncated(x.mul(y)),
        (Truncated(x), Rational(y)) | (Rational(y), Truncated(x)) => Truncated(x.mul(&y.expand(x.bound())?)),
    })
}

fn automaton(gb: &GroebnerBasis) -> NormalWordAutomaton {
    NormalWordAutomaton::new(gb.leading_words(), gb.presentation().weights())
}

/// c_j = dim A_j for j ≤ d.
pub fn hilbert_truncated(gb: &GroebnerBasis, d: u32) -> Result<TruncatedSeries, SeriesError> {
    if !gb.is_certified(d) {
        return Err(GbError::Uncertified { degree: d, bound: gb.truncation() }.into());
    }
    let coeffs: Option<Vec<i64>> = automaton(gb).counts(d).iter().map(|x| i64::try_from(x).ok()).collect();
    Ok(TruncatedSeries::new(coeffs.ok_or(SeriesError::Overflow)?))
}

/// Exact h_A from the normal-word automaton of a complete basis.
pub fn hilbert_rational(gb: &GroebnerBasis) -> Result<RationalSeries, SeriesError> {
    if !gb.is_complete() {
        return Err(SeriesError::Incomplete(gb.truncation()));
    }
    let aut = automaton(gb);
    let n = aut.num_states() as u32;
    let e = aut.max_weight();
    // det(I − M(t)) has degree ≤ n·e; the numerator h·det has degree ≤ (n − 1)·e
    let q_deg = n * e;
    let ys: Vec<BigInt> = (0..=q_deg).map(|t| aut.transfer_det_at(&BigInt::from(t))).collect();
    let q = upoly::interpolate(&ys).expect("integer determinant polynomial");
    let p_deg = (n - 1) * e;
    let h = UPoly::new(aut.counts(p_deg));
    let p = h.mul(&q).truncate(p_deg as usize + 1);
    RationalSeries::from_fraction(&p, &q)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum StanleyVerdict {
    Satisfied { sign: i8, ell: i64 },
    Violated,
}

/// Decides h(1/t) = ±t^ℓ h(t).
pub fn stanley_check(h: &RationalSeries) -> StanleyVerdict {
    if h.is_zero() {
        return StanleyVerdict::Violated;
    }
    let (p, q) = h.reduced();
    // p = t^a p0 with p0(0) ≠ 0
    let a = p.0.iter().position(|c| !c.is_zero()).unwrap();
    let p0 = UPoly::new(p.0[a..].to_vec());
    let lhs = p0.reversed().mul(&q);
    let rhs = p0.mul(&q.reversed());
    let ell = q.deg() - p0.deg() - 2 * a as i64;
    if lhs == rhs {
        StanleyVerdict::Satisfied { sign: 1, ell }
    } else if lhs == rhs.neg() {
        StanleyVerdict::Satisfied { sign: -1, ell }
    } else {
        StanleyVerdict::Violated
    }
}

#[cfg(test)]
mod tests;
