use std::collections::BTreeMap;
use std::fmt;

use super::{CoreError, Field, MonomialOrder, Scalar, Word};

/// A homogeneous noncommutative polynomial with exact coefficients.
///
/// Invariants: no stored coefficient is zero and every word has the same degree.
/// The zero polynomial has no degree (the `-inf` convention).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    terms: BTreeMap<Word, Scalar>,
}

impl Poly {
    pub fn zero(field: Field) -> Poly {
        Poly { field, terms: BTreeMap::new() }
    }

    pub fn one(field: Field) -> Poly {
        Poly::monomial(field.one(), Word::empty())
    }

    pub fn monomial(c: Scalar, w: Word) -> Poly {
        let field = c.field();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        Poly { field, terms }
    }

    /// Builds a polynomial from terms, combining repeated words. Rejects mixed degrees.
    pub fn from_terms(
        field: Field,
        terms: impl IntoIterator<Item = (Word, Scalar)>,
    ) -> Result<Poly, CoreError> {
        let mut p = Poly::zero(field);
        for (w, c) in terms {
            p.accumulate(w, &c);
        }
        p.check_homogeneous()?;
        Ok(p)
    }

    fn check_homogeneous(&self) -> Result<(), CoreError> {
        let degs: Vec<u32> = self.terms.keys().map(|w| w.degree()).collect();
        if degs.windows(2).any(|d| d[0] != d[1]) {
            let mut uniq = degs.clone();
            uniq.dedup();
            return Err(CoreError::Inhomogeneous { relation: self.to_string(), degrees: uniq });
        }
        Ok(())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next().map(|w| w.degree())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Adds `c·w`. The caller keeps degrees consistent; mismatches panic in debug builds.
    pub fn add_term(&mut self, w: Word, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        debug_assert!(self.degree().is_none_or(|d| d == w.degree()), "inhomogeneous term");
        self.accumulate(w, c);
    }

    fn accumulate(&mut self, w: Word, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                let s = &*v + c;
                if s.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    /// `self += c · left · q · right`.
    pub fn add_scaled_sandwich(&mut self, c: &Scalar, left: &Word, q: &Poly, right: &Word) {
        for (w, a) in q.terms() {
            self.add_term(w.sandwich(left, right), &(c * a));
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut r = self.clone();
        for (w, c) in other.terms() {
            r.add_term(w.clone(), c);
        }
        r
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&(-self.field.one())))
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.field);
        }
        Poly {
            field: self.field,
            terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect(),
        }
    }

    /// Product in the free algebra.
    pub fn mul(&self, other: &Poly) -> Poly {
        let mut r = Poly::zero(self.field);
        for (u, a) in self.terms() {
            for (v, b) in other.terms() {
                r.add_term(u.concat(v), &(a * b));
            }
        }
        r
    }

    pub fn mul_word_left(&self, w: &Word) -> Poly {
        Poly {
            field: self.field,
            terms: self.terms.iter().map(|(u, a)| (w.concat(u), a.clone())).collect(),
        }
    }

    pub fn mul_word_right(&self, w: &Word) -> Poly {
        Poly {
            field: self.field,
            terms: self.terms.iter().map(|(u, a)| (u.concat(w), a.clone())).collect(),
        }
    }

    /// Reverses every word (the image in the opposite algebra).
    pub fn reversed(&self) -> Poly {
        Poly {
            field: self.field,
            terms: self.terms.iter().map(|(u, a)| (u.reversed(), a.clone())).collect(),
        }
    }

    /// Re-indexes letters through `map` (new degrees come from `weights`).
    pub fn relabel(&self, map: &[u16], weights: &[u32]) -> Poly {
        Poly {
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(u, a)| {
                    let letters = u.letters().iter().map(|&g| map[g as usize]).collect();
                    (Word::new(letters, weights), a.clone())
                })
                .collect(),
        }
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Word, &Scalar)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn leading_word(&self, order: &MonomialOrder) -> Option<&Word> {
        self.leading_term(order).map(|(w, _)| w)
    }

    /// Scales so that the leading coefficient is 1. Zero stays zero.
    pub fn monic(&self, order: &MonomialOrder) -> Poly {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv()),
        }
    }

    /// Terms sorted from largest to smallest in `order`.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(&Word, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    pub fn render(&self, names: &[String], order: &MonomialOrder) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.sorted_terms(order).into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let body = w.render(names);
            if abs.is_one() {
                out.push_str(&body);
            } else if w.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                out.push_str(&format!("{}*{}", abs, body));
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("{c}*{w}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
