//! Normal-word bases and left-multiplication tables of A = k<X>/I, degree by degree.

use std::collections::HashMap;
use std::sync::Arc;

use super::{GbError, GroebnerBasis};
use crate::corealg::{Field, Poly, Scalar, Word};
use crate::linalg::Vector;

/// Sparse vector over a normal-word basis: (index, coefficient) pairs, indices increasing.
pub type SparseVec = Vec<(usize, Scalar)>;

#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    gb: Arc<GroebnerBasis>,
    top: u32,
    bases: Vec<Vec<Word>>,
    index: Vec<HashMap<Word, usize>>,
    // left[x][j][k] = NF(x · bases[j][k]) in degree j + deg x
    left: Vec<Vec<Vec<SparseVec>>>,
}

impl GradedAlgebra {
    /// Tabulates A through degree `top`. Every degree must be certified by `gb`.
    pub fn new(gb: Arc<GroebnerBasis>, top: u32) -> Result<GradedAlgebra, GbError> {
        if !gb.is_certified(top) {
            return Err(GbError::Uncertified { degree: top, bound: gb.truncation() });
        }
        let bases = gb.normal_words_through(top);
        let index: Vec<HashMap<Word, usize>> = bases
            .iter()
            .map(|ws| ws.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect())
            .collect();
        let a = gb.presentation().clone();
        let weights = a.weights().to_vec();
        let idx = gb.lead_index();
        let one = a.field().one();
        let mut left = Vec::with_capacity(a.num_gens());
        for x in 0..a.num_gens() as u16 {
            let e = weights[x as usize];
            let lx = Word::letter(x, &weights);
            let mut per_deg = Vec::with_capacity(top as usize + 1);
            for j in 0..=top {
                if j + e > top {
                    per_deg.push(Vec::new());
                    continue;
                }
                let target = &index[(j + e) as usize];
                let col: Vec<SparseVec> = bases[j as usize]
                    .iter()
                    .map(|w| {
                        let nf = gb.normal_form_with(&Poly::monomial(one.clone(), lx.concat(w)), &idx);
                        to_sparse(&nf, target)
                    })
                    .collect();
                per_deg.push(col);
            }
            left.push(per_deg);
        }
        Ok(GradedAlgebra { gb, top, bases, index, left })
    }

    pub fn gb(&self) -> &Arc<GroebnerBasis> {
        &self.gb
    }

    pub fn field(&self) -> Field {
        self.gb.presentation().field()
    }

    pub fn weights(&self) -> &[u32] {
        self.gb.presentation().weights()
    }

    pub fn num_gens(&self) -> usize {
        self.gb.presentation().num_gens()
    }

    /// Highest tabulated degree.
    pub fn top(&self) -> u32 {
        self.top
    }

    /// dim A_j, zero for negative or untabulated degrees below zero.
    pub fn dim(&self, j: i64) -> usize {
        if j < 0 || j > self.top as i64 {
            0
        } else {
            self.bases[j as usize].len()
        }
    }

    pub fn basis(&self, j: u32) -> &[Word] {
        &self.bases[j as usize]
    }

    pub fn word_index(&self, w: &Word) -> Option<usize> {
        self.index.get(w.degree() as usize)?.get(w).copied()
    }

    /// NF(x · b_k) for the k-th normal word of degree j.
    pub fn left_mul_gen(&self, x: usize, j: u32, k: usize) -> &SparseVec {
        &self.left[x][j as usize][k]
    }

    /// Left multiplication by the generator `x` on a dense vector in A_j.
    pub fn left_mul_gen_dense(&self, x: usize, j: u32, v: &[Scalar]) -> Vector {
        let e = self.weights()[x];
        let mut out = vec![self.field().zero(); self.dim((j + e) as i64)];
        for (k, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (t, a) in &self.left[x][j as usize][k] {
                out[*t].add_assign_mul(c, a);
            }
        }
        out
    }

    /// Left multiplication by a word, letter by letter from the right end.
    pub fn left_mul_word_dense(&self, w: &Word, j: u32, v: &[Scalar]) -> Vector {
        let weights = self.weights();
        let mut cur = v.to_vec();
        let mut deg = j;
        for &x in w.letters().iter().rev() {
            cur = self.left_mul_gen_dense(x as usize, deg, &cur);
            deg += weights[x as usize];
        }
        cur
    }

    /// Left multiplication by a homogeneous polynomial on a dense vector in A_j.
    pub fn left_mul_poly_dense(&self, p: &Poly, j: u32, v: &[Scalar]) -> Vector {
        let d = p.degree().unwrap_or(0);
        let mut out = vec![self.field().zero(); self.dim((j + d) as i64)];
        for (w, c) in p.terms() {
            let part = self.left_mul_word_dense(w, j, v);
            for (o, a) in out.iter_mut().zip(&part) {
                o.add_assign_mul(c, a);
            }
        }
        out
    }

    /// Coordinates of a polynomial in the normal-word basis of its degree (after reduction).
    pub fn coords(&self, p: &Poly, j: u32) -> Vector {
        let mut out = vec![self.field().zero(); self.dim(j as i64)];
        if p.is_zero() {
            return out;
        }
        let nf = self.gb.normal_form_with(p, &self.gb.lead_index());
        for (w, c) in nf.terms() {
            out[self.index[j as usize][w]] = c.clone();
        }
        out
    }

    /// The element with the given coordinates in degree j.
    pub fn element(&self, v: &[Scalar], j: u32) -> Poly {
        let mut p = Poly::zero(self.field());
        for (k, c) in v.iter().enumerate() {
            p.add_term(self.bases[j as usize][k].clone(), c);
        }
        p
    }
}

fn to_sparse(nf: &Poly, index: &HashMap<Word, usize>) -> SparseVec {
    let mut v: SparseVec = nf.terms().map(|(w, c)| (index[w], c.clone())).collect();
    v.sort_by_key(|e| e.0);
    v
}
