//! Graded free modules ⊕ A(−b_s): degree-j piece is ⊕_s A_{j − b_s}, components in order.

use crate::corealg::Scalar;
use crate::gbasis::GradedAlgebra;
use crate::linalg::Vector;

pub fn free_offsets(ga: &GradedAlgebra, shifts: &[i32], j: i32) -> Vec<usize> {
    let mut offs = Vec::with_capacity(shifts.len() + 1);
    let mut acc = 0;
    for &b in shifts {
        offs.push(acc);
        acc += ga.dim((j - b) as i64);
    }
    offs.push(acc);
    offs
}

pub fn free_dim(ga: &GradedAlgebra, shifts: &[i32], j: i32) -> usize {
    shifts.iter().map(|&b| ga.dim((j - b) as i64)).sum()
}

/// Left action of generator `x` on a degree-`j` element.
pub fn free_act(ga: &GradedAlgebra, shifts: &[i32], x: usize, j: i32, v: &[Scalar]) -> Vector {
    let e = ga.weights()[x] as i32;
    let from = free_offsets(ga, shifts, j);
    let to = free_offsets(ga, shifts, j + e);
    let mut out = vec![ga.field().zero(); *to.last().unwrap()];
    for (s, &b) in shifts.iter().enumerate() {
        let deg = j - b;
        if deg < 0 || from[s] == from[s + 1] {
            continue;
        }
        let part = ga.left_mul_gen_dense(x, deg as u32, &v[from[s]..from[s + 1]]);
        out[to[s]..to[s + 1]].clone_from_slice(&part);
    }
    out
}
