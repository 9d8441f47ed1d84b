//! Ext^i_A(M, A) from a resolution, by dualizing: Hom(A(−b), A) = A(b).

use std::collections::BTreeMap;

use serde::Serialize;

use super::free::free_offsets;
use super::{Resolution, ResolutionError};
use crate::corealg::Poly;
use crate::linalg::{row_reduce, ScalarMatrix, Vector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtRange {
    pub i: usize,
    pub n_lo: i32,
    pub n_hi: i32,
    pub certified: bool,
}

/// Ranks of Ext^i(M, A)_n over the computed ranges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtTable {
    entries: BTreeMap<(usize, i32), usize>,
    ranges: Vec<ExtRange>,
}

impl ExtTable {
    pub fn get(&self, i: usize, n: i32) -> Option<usize> {
        let r = self.ranges.iter().find(|r| r.i == i)?;
        (r.n_lo..=r.n_hi).contains(&n).then(|| self.entries.get(&(i, n)).copied().unwrap_or(0))
    }

    pub fn ranges(&self) -> &[ExtRange] {
        &self.ranges
    }

    pub fn range(&self, i: usize) -> Option<&ExtRange> {
        self.ranges.iter().find(|r| r.i == i)
    }

    /// Nonzero entries.
    pub fn nonzero(&self) -> impl Iterator<Item = ((usize, i32), usize)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    /// Total dimension of Ext^i over its computed range.
    pub fn total(&self, i: usize) -> usize {
        self.entries.range((i, i32::MIN)..=(i, i32::MAX)).map(|(_, &v)| v).sum()
    }
}

/// Generator images of step i as polynomial entries: entry[s''][t] ∈ A_{b'' − b_t}.
fn entries(res: &Resolution, i: usize) -> Vec<Vec<Poly>> {
    let ga = res.ga();
    let step = &res.steps()[i];
    let target = &res.steps()[i - 1].shifts;
    step.shifts
        .iter()
        .enumerate()
        .map(|(s, &b)| {
            let offs = free_offsets(ga, target, b);
            target
                .iter()
                .enumerate()
                .map(|(t, &a)| {
                    let v = &step.images[s][offs[t]..offs[t + 1]];
                    if v.is_empty() {
                        Poly::zero(ga.field())
                    } else {
                        ga.element(v, (b - a) as u32)
                    }
                })
                .collect()
        })
        .collect()
}

/// Ext^i(M, A) in internal degrees where all needed pieces of A are tabulated.
pub fn ext_into_algebra(res: &Resolution) -> Result<ExtTable, ResolutionError> {
    let ga = res.ga().clone();
    let field = ga.field();
    let top = ga.top() as i32;
    let steps = res.steps();
    let empty: Vec<i32> = Vec::new();
    let shifts = |i: usize| -> &Vec<i32> { steps.get(i).map(|s| &s.shifts).unwrap_or(&empty) };
    let maps: Vec<Vec<Vec<Poly>>> = (0..steps.len()).map(|i| if i == 0 { Vec::new() } else { entries(res, i) }).collect();
    let hom_dim = |sh: &[i32], n: i32| -> usize { sh.iter().map(|&b| ga.dim((b + n) as i64)).sum() };
    // δ_i : Hom(P_i, A)_n → Hom(P_{i+1}, A)_n as a column list
    let delta = |i: usize, n: i32| -> Vec<Vector> {
        let src = shifts(i);
        let dst = shifts(i + 1);
        let rows = hom_dim(dst, n);
        let mut cols = Vec::new();
        for (t, &bt) in src.iter().enumerate() {
            let deg = bt + n;
            if deg < 0 {
                continue;
            }
            for k in 0..ga.dim(deg as i64) {
                let mut unit = vec![field.zero(); ga.dim(deg as i64)];
                unit[k] = field.one();
                let mut col = Vec::with_capacity(rows);
                for (s2, &b2) in dst.iter().enumerate() {
                    let d2 = b2 + n;
                    if d2 < 0 {
                        continue;
                    }
                    let c = &maps[i + 1][s2][t];
                    if c.is_zero() {
                        col.extend(std::iter::repeat_n(field.zero(), ga.dim(d2 as i64)));
                    } else {
                        col.extend(ga.left_mul_poly_dense(c, deg as u32, &unit));
                    }
                }
                cols.push(col);
            }
        }
        cols
    };
    let rank_of = |cols: &[Vector], rows: usize| -> usize {
        if cols.is_empty() || rows == 0 {
            0
        } else {
            row_reduce(&ScalarMatrix::from_columns(field, rows, cols)).rank
        }
    };
    let last = match res.length() {
        Some(l) => l,
        None => steps.len().saturating_sub(2),
    };
    let mut table = ExtTable { entries: BTreeMap::new(), ranges: Vec::new() };
    for i in 0..=last {
        let sh = shifts(i);
        let Some(&bmax) = sh.iter().max() else {
            table.ranges.push(ExtRange { i, n_lo: 0, n_hi: -1, certified: res.terminated() });
            continue;
        };
        let prev = if i == 0 { &empty } else { shifts(i - 1) };
        let next_max = shifts(i + 1).iter().chain(prev.iter()).copied().max().unwrap_or(bmax).max(bmax);
        let n_lo = -bmax;
        let n_hi = top - next_max;
        let certified = (i == 0 || res.step_complete(i - 1)) && res.step_complete(i) && res.step_complete(i + 1);
        for n in n_lo..=n_hi {
            let dim = hom_dim(sh, n);
            if dim == 0 {
                continue;
            }
            let out_rows = hom_dim(shifts(i + 1), n);
            let rank_out = if i < steps.len() - 1 { rank_of(&delta(i, n), out_rows) } else { 0 };
            let rank_in = if i == 0 { 0 } else { rank_of(&delta(i - 1, n), dim) };
            let e = dim - rank_out - rank_in;
            if e > 0 {
                table.entries.insert((i, n), e);
            }
        }
        table.ranges.push(ExtRange { i, n_lo, n_hi, certified });
    }
    Ok(table)
}
