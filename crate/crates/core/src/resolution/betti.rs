//! Betti tables β_{i,j} = dim Tor_i(k, M)_j of a truncated minimal resolution.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::corealg::Side;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiRecord {
    pub i: usize,
    pub j: i32,
    pub rank: usize,
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, i32), usize>,
    i_max: usize,
    j_min: i32,
    d_max: i32,
    side: Side,
    computed_steps: usize,
    length: Option<usize>,
}

impl BettiTable {
    pub fn new(i_max: usize, j_min: i32, d_max: i32, side: Side) -> BettiTable {
        BettiTable { entries: BTreeMap::new(), i_max, j_min, d_max, side, computed_steps: i_max + 1, length: None }
    }

    pub fn add(&mut self, i: usize, j: i32, n: usize) {
        if n > 0 {
            *self.entries.entry((i, j)).or_insert(0) += n;
        }
    }

    pub(crate) fn set_computed_steps(&mut self, n: usize) {
        self.computed_steps = n;
    }

    pub fn set_termination(&mut self, length: Option<usize>) {
        self.length = length;
    }

    pub fn get(&self, i: usize, j: i32) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, i32), usize)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn i_max(&self) -> usize {
        self.i_max
    }

    pub fn d_max(&self) -> i32 {
        self.d_max
    }

    pub fn j_min(&self) -> i32 {
        self.j_min
    }

    pub fn side(&self) -> Side {
        self.side
    }

    /// Projective dimension, when the resolution terminated inside the window.
    pub fn length(&self) -> Option<usize> {
        self.length
    }

    pub fn terminated(&self) -> bool {
        self.length.is_some()
    }

    /// Every step 0..=i_max was computed (or the resolution ended earlier).
    pub fn steps_known(&self) -> usize {
        match self.length {
            Some(l) => l + 1,
            None => self.computed_steps,
        }
    }

    /// (i, j) lies in the computed window, so its rank is exact.
    pub fn certified(&self, i: usize, j: i32) -> bool {
        if self.length.is_some_and(|l| i > l) {
            return true;
        }
        i <= self.i_max && i < self.computed_steps && j >= self.j_min && j <= self.d_max
    }

    /// β_i = total rank of step i.
    pub fn total(&self, i: usize) -> usize {
        self.entries.range((i, i32::MIN)..=(i, i32::MAX)).map(|(_, &v)| v).sum()
    }

    /// t_i = max{j : β_{i,j} ≠ 0}; None when step i is zero in the window.
    pub fn t(&self, i: usize) -> Option<i32> {
        self.entries.range((i, i32::MIN)..=(i, i32::MAX)).filter(|(_, &v)| v > 0).map(|(&(_, j), _)| j).max()
    }

    /// Lowest degree of a nonzero step-i entry.
    pub fn lowest(&self, i: usize) -> Option<i32> {
        self.entries.range((i, i32::MIN)..=(i, i32::MAX)).filter(|(_, &v)| v > 0).map(|(&(_, j), _)| j).min()
    }

    /// The table of M(ℓ): j ↦ j − ℓ.
    pub fn shifted(&self, ell: i32) -> BettiTable {
        let mut t = self.clone();
        t.entries = self.entries.iter().map(|(&(i, j), &v)| ((i, j - ell), v)).collect();
        t.j_min -= ell;
        t.d_max -= ell;
        t
    }

    /// Künneth convolution: the table of k_A ⊗ k_B over A ⊗ B.
    pub fn convolve(&self, other: &BettiTable) -> BettiTable {
        // a terminated factor is known in every degree; otherwise a product entry is exact only
        // when every contributing pair is
        let steps = |t: &BettiTable| (!t.terminated()).then(|| t.steps_known().saturating_sub(1));
        let degrees = |t: &BettiTable, o: &BettiTable| (!t.terminated()).then(|| t.d_max + o.j_min);
        let i_max = match (steps(self), steps(other)) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => self.length.unwrap_or(0) + other.length.unwrap_or(0),
        };
        let d_max = match (degrees(self, other), degrees(other, self)) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => self.d_max + other.d_max,
        };
        let mut t = BettiTable::new(i_max, self.j_min + other.j_min, d_max, self.side);
        for (&(p, j1), &a) in &self.entries {
            for (&(q, j2), &b) in &other.entries {
                if p + q <= i_max && j1 + j2 <= d_max {
                    t.add(p + q, j1 + j2, a * b);
                }
            }
        }
        t.computed_steps = i_max + 1;
        t.length = match (self.length, other.length) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        t
    }

    /// Restriction to i ≤ i_max, j ≤ d_max.
    pub fn window(&self, i_max: usize, d_max: i32) -> BettiTable {
        let mut t = self.clone();
        t.entries.retain(|&(i, j), _| i <= i_max && j <= d_max);
        t.i_max = t.i_max.min(i_max);
        t.d_max = t.d_max.min(d_max);
        t.computed_steps = t.computed_steps.min(i_max + 1);
        t
    }

    pub fn records(&self) -> Vec<BettiRecord> {
        self.entries
            .iter()
            .map(|(&(i, j), &rank)| BettiRecord { i, j, rank, certified: self.certified(i, j) })
            .collect()
    }

    /// Rows i, columns j; `.` marks a certified zero.
    pub fn grid(&self) -> String {
        let rows = self.steps_known().min(self.i_max + 1);
        let cols: Vec<i32> = (self.j_min..=self.d_max).collect();
        let mut s = String::from("i\\j");
        for j in &cols {
            let _ = write!(s, "{j:>4}");
        }
        s.push('\n');
        for i in 0..rows {
            let _ = write!(s, "{i:>3}");
            for &j in &cols {
                match self.get(i, j) {
                    0 => s.push_str("   ."),
                    v => {
                        let _ = write!(s, "{v:>4}");
                    }
                }
            }
            s.push('\n');
        }
        s
    }
}
