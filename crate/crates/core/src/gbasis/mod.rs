//! Degree-truncated reduced two-sided Gröbner bases of homogeneous ideals in the free
//! algebra, by overlap completion processed in increasing degree.

mod cache;
mod graded;

pub use cache::{cache_dir_from_env, load_or_compute, GbCache, CACHE_ENV};
pub use graded::{GradedAlgebra, SparseVec};

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use thiserror::Error;

use crate::corealg::{AlgebraPresentation, Poly, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GbError {
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("degree {degree} exceeds the certified range (basis complete only up to {bound})")]
    Uncertified { degree: u32, bound: u32 },
    #[error("truncation degree {d_gb} is below the largest relation degree {max_rel}")]
    TruncationTooLow { d_gb: u32, max_rel: u32 },
    #[error("cache: {0}")]
    Cache(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(tag = "kind", content = "bound", rename_all = "snake_case")]
pub enum Completeness {
    /// Every overlap reduces to zero; normal forms are valid in all degrees.
    Complete,
    /// Normal forms are valid through the given degree.
    CompleteUpTo(u32),
}

#[derive(Clone, Copy, Debug)]
pub struct GbLimits {
    pub max_elements: usize,
}

impl Default for GbLimits {
    fn default() -> Self {
        GbLimits { max_elements: 20_000 }
    }
}

#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    presentation: Arc<AlgebraPresentation>,
    elements: Vec<Poly>,
    leading: Vec<Word>,
    truncation: u32,
    completeness: Completeness,
}

/// Words of degree `j` that avoid every leading word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalWordBasis {
    pub degree: u32,
    pub words: Vec<Word>,
}

/// Finds leading-word occurrences quickly: leading words keyed by their letters.
#[derive(Clone, Debug, Default)]
struct LeadIndex {
    by_letters: HashMap<Vec<u16>, usize>,
    lengths: Vec<usize>,
}

impl LeadIndex {
    fn insert(&mut self, w: &Word, idx: usize) {
        self.by_letters.insert(w.letters().to_vec(), idx);
        if !self.lengths.contains(&w.len()) {
            self.lengths.push(w.len());
            self.lengths.sort_unstable();
        }
    }

    /// First (position, element) with a leading word occurring in `w`.
    fn find_in(&self, w: &Word) -> Option<(usize, usize)> {
        let l = w.letters();
        for start in 0..l.len() {
            for &len in &self.lengths {
                if start + len > l.len() {
                    break;
                }
                if let Some(&i) = self.by_letters.get(&l[start..start + len]) {
                    return Some((start, i));
                }
            }
        }
        None
    }

    /// Whether some leading word is a suffix of `letters`.
    fn has_suffix(&self, letters: &[u16]) -> bool {
        self.lengths
            .iter()
            .take_while(|&&len| len <= letters.len())
            .any(|&len| self.by_letters.contains_key(&letters[letters.len() - len..]))
    }
}

/// Reduces `p` completely (all terms) modulo the elements indexed by `index`.
fn reduce(p: &Poly, elements: &[Poly], leading: &[Word], index: &LeadIndex, a: &AlgebraPresentation) -> Poly {
    let order = a.order();
    let weights = a.weights();
    let mut rest = p.clone();
    let mut out = Poly::zero(p.field());
    while let Some((w, c)) = rest.leading_term(order).map(|(w, c)| (w.clone(), c.clone())) {
        match index.find_in(&w) {
            Some((pos, i)) => {
                let lw = &leading[i];
                let left = w.slice(0, pos, weights);
                let right = w.slice(pos + lw.len(), w.len(), weights);
                rest.add_scaled_sandwich(&-&c, &left, &elements[i], &right);
            }
            None => {
                rest.add_term(w.clone(), &-&c);
                out.add_term(w, &c);
            }
        }
    }
    out
}

/// All overlaps `a = u·s`, `b = s·v` with `s` nonempty and proper in both, as `(u, v)`.
fn overlaps(a: &Word, b: &Word, weights: &[u32]) -> Vec<(Word, Word)> {
    let (la, lb) = (a.letters(), b.letters());
    let mut out = Vec::new();
    for k in 1..la.len().min(lb.len()) {
        if la[la.len() - k..] == lb[..k] {
            out.push((a.slice(0, la.len() - k, weights), b.slice(k, lb.len(), weights)));
        }
    }
    out
}

struct Completion<'a> {
    a: &'a AlgebraPresentation,
    elements: Vec<Poly>,
    leading: Vec<Word>,
    index: LeadIndex,
    // degree -> (i, j, u, v) with S = g_i·v − u·g_j
    pairs: BTreeMap<u32, Vec<(usize, usize, Word, Word)>>,
}

impl Completion<'_> {
    fn add(&mut self, g: Poly) {
        let k = self.elements.len();
        let lw = g.leading_word(self.a.order()).unwrap().clone();
        self.elements.push(g);
        self.leading.push(lw.clone());
        self.index.insert(&lw, k);
        let weights = self.a.weights();
        for i in 0..=k {
            let other = self.leading[i].clone();
            for (u, v) in overlaps(&lw, &other, weights) {
                let d = lw.degree() + v.degree();
                self.pairs.entry(d).or_default().push((k, i, u, v));
            }
            if i != k {
                for (u, v) in overlaps(&other, &lw, weights) {
                    let d = other.degree() + v.degree();
                    self.pairs.entry(d).or_default().push((i, k, u, v));
                }
            }
        }
    }

    fn reduce(&self, p: &Poly) -> Poly {
        reduce(p, &self.elements, &self.leading, &self.index, self.a)
    }
}

/// Computes the reduced Gröbner basis of the relation ideal through degree `d_gb`.
pub fn buchberger_truncated(
    a: &Arc<AlgebraPresentation>,
    d_gb: u32,
    limits: &GbLimits,
) -> Result<GroebnerBasis, GbError> {
    let max_rel = a.max_relation_degree();
    if d_gb < max_rel {
        return Err(GbError::TruncationTooLow { d_gb, max_rel });
    }
    let order = a.order();
    let mut pending: BTreeMap<u32, Vec<Poly>> = BTreeMap::new();
    for r in a.relations() {
        pending.entry(r.degree().unwrap()).or_default().push(r.clone());
    }
    let mut c = Completion {
        a,
        elements: Vec::new(),
        leading: Vec::new(),
        index: LeadIndex::default(),
        pairs: BTreeMap::new(),
    };
    for d in 1..=d_gb {
        let mut cands = pending.remove(&d).unwrap_or_default();
        if let Some(ps) = c.pairs.remove(&d) {
            for (i, j, u, v) in ps {
                let s = c.elements[i].mul_word_right(&v).sub(&c.elements[j].mul_word_left(&u));
                cands.push(s);
            }
        }
        let first_new = c.elements.len();
        for p in cands {
            let r = c.reduce(&p);
            if !r.is_zero() {
                c.add(r.monic(order));
                if c.elements.len() > limits.max_elements {
                    return Err(GbError::ResourceLimit(format!(
                        "more than {} basis elements by degree {d}",
                        limits.max_elements
                    )));
                }
            }
        }
        // tail-reduce this degree's new elements against each other
        for k in first_new..c.elements.len() {
            let g = c.elements[k].clone();
            let lw = c.leading[k].clone();
            let lc = g.coeff(&lw);
            let mut tail = g.clone();
            tail.add_term(lw.clone(), &-&lc);
            let mut others = c.index.clone();
            others.by_letters.remove(lw.letters());
            let tail = reduce(&tail, &c.elements, &c.leading, &others, a);
            let mut g2 = tail;
            g2.add_term(lw, &lc);
            c.elements[k] = g2;
        }
    }
    let m = c.elements.iter().filter_map(|g| g.degree()).max().unwrap_or(0);
    let complete = c.elements.is_empty() || 2 * m - 1 <= d_gb;
    let mut idx: Vec<usize> = (0..c.elements.len()).collect();
    idx.sort_by(|&i, &j| order.cmp(&c.leading[i], &c.leading[j]));
    Ok(GroebnerBasis {
        presentation: a.clone(),
        elements: idx.iter().map(|&i| c.elements[i].clone()).collect(),
        leading: idx.iter().map(|&i| c.leading[i].clone()).collect(),
        truncation: d_gb,
        completeness: if complete { Completeness::Complete } else { Completeness::CompleteUpTo(d_gb) },
    })
}

impl GroebnerBasis {
    /// Rebuilds a basis from stored elements (used by the cache).
    pub(crate) fn from_parts(
        presentation: Arc<AlgebraPresentation>,
        elements: Vec<Poly>,
        truncation: u32,
        completeness: Completeness,
    ) -> GroebnerBasis {
        let order = presentation.order().clone();
        let leading = elements.iter().map(|g| g.leading_word(&order).unwrap().clone()).collect();
        GroebnerBasis { presentation, elements, leading, truncation, completeness }
    }

    pub fn presentation(&self) -> &Arc<AlgebraPresentation> {
        &self.presentation
    }

    pub fn elements(&self) -> &[Poly] {
        &self.elements
    }

    pub fn leading_words(&self) -> &[Word] {
        &self.leading
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn completeness(&self) -> Completeness {
        self.completeness
    }

    pub fn is_complete(&self) -> bool {
        self.completeness == Completeness::Complete
    }

    pub fn max_element_degree(&self) -> u32 {
        self.elements.iter().filter_map(|g| g.degree()).max().unwrap_or(0)
    }

    pub fn is_certified(&self, degree: u32) -> bool {
        self.is_complete() || degree <= self.truncation
    }

    fn certify(&self, degree: u32) -> Result<(), GbError> {
        if self.is_certified(degree) {
            Ok(())
        } else {
            Err(GbError::Uncertified { degree, bound: self.truncation })
        }
    }

    fn index(&self) -> LeadIndex {
        let mut idx = LeadIndex::default();
        for (i, w) in self.leading.iter().enumerate() {
            idx.insert(w, i);
        }
        idx
    }

    /// The unique reduced representative of `p` modulo the ideal.
    pub fn normal_form(&self, p: &Poly) -> Result<Poly, GbError> {
        if let Some(d) = p.degree() {
            self.certify(d)?;
        }
        Ok(reduce(p, &self.elements, &self.leading, &self.index(), &self.presentation))
    }

    pub(crate) fn normal_form_with(&self, p: &Poly, idx: &LeadIndexHandle) -> Poly {
        reduce(p, &self.elements, &self.leading, &idx.0, &self.presentation)
    }

    pub(crate) fn lead_index(&self) -> LeadIndexHandle {
        LeadIndexHandle(self.index())
    }

    /// Normal words of degree `j`, increasing in the monomial order.
    pub fn normal_words(&self, j: u32) -> Result<NormalWordBasis, GbError> {
        self.certify(j)?;
        let all = self.normal_words_through(j);
        Ok(NormalWordBasis { degree: j, words: all.into_iter().nth(j as usize).unwrap() })
    }

    /// Normal words of every degree `0..=d` (no certification check).
    pub(crate) fn normal_words_through(&self, d: u32) -> Vec<Vec<Word>> {
        let a = &self.presentation;
        let weights = a.weights();
        let idx = self.index();
        let mut by_deg: Vec<Vec<Word>> = vec![Vec::new(); d as usize + 1];
        by_deg[0].push(Word::empty());
        for j in 1..=d {
            let mut words = Vec::new();
            for g in 0..a.num_gens() as u16 {
                let e = weights[g as usize];
                if e > j {
                    continue;
                }
                for w in &by_deg[(j - e) as usize] {
                    let mut letters = w.letters().to_vec();
                    letters.push(g);
                    if !idx.has_suffix(&letters) {
                        words.push(Word::new(letters, weights));
                    }
                }
            }
            words.sort_by(|x, y| a.order().cmp(x, y));
            by_deg[j as usize] = words;
        }
        by_deg
    }

    /// Canonical text of the basis elements, one per line.
    pub fn render(&self) -> Vec<String> {
        self.elements.iter().map(|g| self.presentation.render_relation(g)).collect()
    }
}

/// Opaque prebuilt lookup table for repeated reductions.
#[derive(Clone, Debug)]
pub(crate) struct LeadIndexHandle(LeadIndex);

/// Distinct leading words as a set (for tests and the automaton).
pub fn leading_word_set(gb: &GroebnerBasis) -> HashSet<Word> {
    gb.leading.iter().cloned().collect()
}

#[cfg(test)]
mod tests;
