//! Aho–Corasick automaton recognizing words that avoid a set of patterns.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::corealg::Word;

#[derive(Clone, Debug)]
pub struct NormalWordAutomaton {
    weights: Vec<u32>,
    /// trans[s][x] = next live state, None when the letter completes a pattern.
    trans: Vec<Vec<Option<usize>>>,
}

impl NormalWordAutomaton {
    pub fn new(patterns: &[Word], weights: &[u32]) -> NormalWordAutomaton {
        let n = weights.len();
        let mut goto: Vec<Vec<Option<usize>>> = vec![vec![None; n]];
        let mut terminal = vec![false];
        for p in patterns {
            let mut s = 0;
            for &x in p.letters() {
                s = match goto[s][x as usize] {
                    Some(t) => t,
                    None => {
                        goto.push(vec![None; n]);
                        terminal.push(false);
                        let t = goto.len() - 1;
                        goto[s][x as usize] = Some(t);
                        t
                    }
                };
            }
            terminal[s] = true;
        }
        // failure links and full transition function
        let m = goto.len();
        let mut fail = vec![0usize; m];
        let mut delta = vec![vec![0usize; n]; m];
        let mut queue = VecDeque::new();
        for x in 0..n {
            match goto[0][x] {
                Some(t) => {
                    delta[0][x] = t;
                    queue.push_back(t);
                }
                None => delta[0][x] = 0,
            }
        }
        while let Some(s) = queue.pop_front() {
            terminal[s] = terminal[s] || terminal[fail[s]];
            for x in 0..n {
                match goto[s][x] {
                    Some(t) => {
                        fail[t] = if s == 0 { 0 } else { delta[fail[s]][x] };
                        delta[s][x] = t;
                        queue.push_back(t);
                    }
                    None => delta[s][x] = delta[fail[s]][x],
                }
            }
        }
        let live: Vec<usize> = (0..m).filter(|&s| !terminal[s]).collect();
        let mut pos = vec![usize::MAX; m];
        for (i, &s) in live.iter().enumerate() {
            pos[s] = i;
        }
        let trans = live
            .iter()
            .map(|&s| (0..n).map(|x| (!terminal[delta[s][x]]).then(|| pos[delta[s][x]])).collect())
            .collect();
        NormalWordAutomaton { weights: weights.to_vec(), trans }
    }

    /// Number of live states; state 0 is the start.
    pub fn num_states(&self) -> usize {
        self.trans.len()
    }

    pub fn max_weight(&self) -> u32 {
        self.weights.iter().copied().max().unwrap_or(1)
    }

    /// Number of accepted words in each degree 0..=d.
    pub fn counts(&self, d: u32) -> Vec<BigInt> {
        let n = self.num_states();
        let mut table: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); n]; d as usize + 1];
        table[0][0] = BigInt::one();
        for j in 1..=d as usize {
            for (x, &e) in self.weights.iter().enumerate() {
                let e = e as usize;
                if e > j {
                    continue;
                }
                for s in 0..n {
                    if table[j - e][s].is_zero() {
                        continue;
                    }
                    if let Some(t) = self.trans[s][x] {
                        let v = table[j - e][s].clone();
                        table[j][t] += v;
                    }
                }
            }
        }
        table.into_iter().map(|row| row.into_iter().sum()).collect()
    }

    /// det(I − M(t)) evaluated at an integer, M(t)[s][s'] = Σ t^{deg x} over letters s →x s'.
    pub fn transfer_det_at(&self, t: &BigInt) -> BigInt {
        let n = self.num_states();
        let mut m = vec![vec![BigInt::zero(); n]; n];
        for (s, row) in m.iter_mut().enumerate() {
            row[s] += 1;
            for (x, &e) in self.weights.iter().enumerate() {
                if let Some(u) = self.trans[s][x] {
                    row[u] -= t.pow(e);
                }
            }
        }
        bareiss_det(m)
    }
}

/// Fraction-free determinant.
fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}
