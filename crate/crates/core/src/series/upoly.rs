//! Dense univariate integer polynomials, coefficients from t^0 upward.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UPoly(pub Vec<BigInt>);

impl UPoly {
    pub fn new(mut c: Vec<BigInt>) -> UPoly {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly(c)
    }

    pub fn from_i64(c: &[i64]) -> UPoly {
        UPoly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn one() -> UPoly {
        UPoly(vec![BigInt::one()])
    }

    /// 1 − t^e
    pub fn one_minus_pow(e: u32) -> UPoly {
        let mut c = vec![BigInt::zero(); e as usize + 1];
        c[0] = BigInt::one();
        c[e as usize] -= 1;
        UPoly::new(c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; −1 for zero.
    pub fn deg(&self) -> i64 {
        self.0.len() as i64 - 1
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.0.get(i).cloned().unwrap_or_default()
    }

    pub fn lead(&self) -> BigInt {
        self.0.last().cloned().unwrap_or_default()
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly(Vec::new());
        }
        let mut c = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UPoly::new(c)
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.0.len().max(o.0.len());
        UPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn neg(&self) -> UPoly {
        UPoly(self.0.iter().map(|x| -x).collect())
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        self.add(&o.neg())
    }

    pub fn truncate(&self, n: usize) -> UPoly {
        UPoly::new(self.0.iter().take(n).cloned().collect())
    }

    /// t^deg · p(1/t)
    pub fn reversed(&self) -> UPoly {
        UPoly::new(self.0.iter().rev().cloned().collect())
    }

    /// Exact quotient in Z[t], or None when `d` does not divide `self`.
    pub fn div_exact(&self, d: &UPoly) -> Option<UPoly> {
        assert!(!d.is_zero());
        let mut r = self.0.clone();
        let dl = d.0.len();
        if r.len() < dl {
            return if self.is_zero() { Some(UPoly(Vec::new())) } else { None };
        }
        let lc = d.lead();
        let mut q = vec![BigInt::zero(); r.len() - dl + 1];
        for k in (0..q.len()).rev() {
            let top = &r[k + dl - 1];
            if top.is_zero() {
                continue;
            }
            let (qq, rem) = top.div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            for (i, b) in d.0.iter().enumerate() {
                r[k + i] -= &qq * b;
            }
            q[k] = qq;
        }
        if r.iter().all(|x| x.is_zero()) {
            Some(UPoly::new(q))
        } else {
            None
        }
    }

    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.lead().is_negative() {
            g = -g;
        }
        UPoly(self.0.iter().map(|x| x / &g).collect())
    }

    /// Primitive gcd with positive leading coefficient (Euclid over Q, then cleared).
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let to_q = |p: &UPoly| -> Vec<BigRational> { p.0.iter().map(|x| BigRational::from(x.clone())).collect() };
        let mut a = to_q(self);
        let mut b = to_q(o);
        while !b.is_empty() {
            let r = rem_q(&a, &b);
            a = b;
            b = r;
        }
        if a.is_empty() {
            return UPoly(Vec::new());
        }
        let den = a.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let ints: Vec<BigInt> = a.iter().map(|x| (x * BigRational::from(den.clone())).to_integer()).collect();
        UPoly::new(ints).primitive()
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.0.iter().rev().fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|x| i64::try_from(x).ok()).collect()
    }
}

fn rem_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let lb = b.last().unwrap();
    while r.len() >= b.len() {
        let c = r.last().unwrap() / lb;
        let off = r.len() - b.len();
        for (i, x) in b.iter().enumerate() {
            r[off + i] -= &c * x;
        }
        r.pop();
        while r.last().is_some_and(|x| x.is_zero()) {
            r.pop();
        }
    }
    r
}

/// Φ_n as an integer polynomial.
pub fn cyclotomic(n: u32) -> UPoly {
    let mut p = UPoly::one_minus_pow(n).neg();
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = p.div_exact(&cyclotomic(d)).expect("cyclotomic division");
        }
    }
    p
}

/// Polynomial through (x_i, y_i) for x_i = 0..n, by Newton divided differences.
pub fn interpolate(ys: &[BigInt]) -> Option<UPoly> {
    let n = ys.len();
    let mut dd: Vec<BigRational> = ys.iter().map(|y| BigRational::from(y.clone())).collect();
    for k in 1..n {
        for i in (k..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / BigRational::from(BigInt::from(k));
        }
    }
    // expand Σ dd[k] ∏_{m<k} (t − m)
    let mut acc: Vec<BigRational> = vec![BigRational::zero(); n];
    let mut basis: Vec<BigRational> = vec![BigRational::one()];
    for (k, c) in dd.iter().enumerate() {
        for (i, b) in basis.iter().enumerate() {
            acc[i] += c * b;
        }
        let mut next = vec![BigRational::zero(); basis.len() + 1];
        for (i, b) in basis.iter().enumerate() {
            next[i + 1] += b;
            next[i] -= b * BigRational::from(BigInt::from(k));
        }
        basis = next;
    }
    if acc.iter().any(|x| !x.is_integer()) {
        return None;
    }
    Some(UPoly::new(acc.into_iter().map(|x| x.to_integer()).collect()))
}
