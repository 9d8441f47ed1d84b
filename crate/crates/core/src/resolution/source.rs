//! Graded modules as seen by the resolution engine: an ambient space per degree, a subspace
//! that vanishes in the module, and the action of the algebra generators.

use std::sync::Arc;

use super::free::{free_act, free_dim, free_offsets};
use super::ResolutionError;
use crate::corealg::{Field, ModulePresentation, Poly, Side};
use crate::gbasis::GradedAlgebra;
use crate::linalg::{Subspace, Vector};

pub trait ModuleSource {
    fn field(&self) -> Field;
    /// Lowest degree where the module can be nonzero.
    fn min_degree(&self) -> i32;
    fn ambient_dim(&self, j: i32) -> usize;
    /// Action of algebra generator `x` on an ambient vector of degree `j`.
    fn act(&self, x: usize, j: i32, v: &[crate::corealg::Scalar]) -> Vector;
    /// A basis of the ambient vectors that are zero in the module.
    fn zero_span(&self, j: i32) -> &[Vector];
}

/// `⊕ A(−a_r) / N` for a presented left module.
pub struct PresentedSource {
    ga: Arc<GradedAlgebra>,
    shifts: Vec<i32>,
    j_min: i32,
    zero: Vec<Vec<Vector>>,
}

impl PresentedSource {
    pub fn new(ga: Arc<GradedAlgebra>, m: &ModulePresentation, d_max: i32) -> Result<PresentedSource, ResolutionError> {
        if m.side() != Side::Left {
            return Err(ResolutionError::SideMismatch);
        }
        if m.algebra().canonical_text() != ga.gb().presentation().canonical_text() {
            return Err(ResolutionError::AlgebraMismatch);
        }
        let shifts = m.gen_degrees().to_vec();
        let j_min = shifts.iter().copied().min().unwrap_or(0);
        let field = ga.field();
        let weights = ga.weights().to_vec();
        let mut zero: Vec<Vec<Vector>> = Vec::new();
        let top = d_max.max(j_min);
        for j in j_min..=top {
            let dim = free_dim(&ga, &shifts, j);
            let mut sub = Subspace::new(field, dim);
            let mut basis = Vec::new();
            for (x, &e) in weights.iter().enumerate() {
                let jj = j - e as i32;
                if jj < j_min {
                    continue;
                }
                for v in &zero[(jj - j_min) as usize] {
                    let w = free_act(&ga, &shifts, x, jj, v);
                    if sub.insert(&w) {
                        basis.push(w);
                    }
                }
            }
            for rel in m.relations().iter().filter(|r| r.degree == j) {
                let v = relation_vector(&ga, &shifts, j, &rel.entries);
                if sub.insert(&v) {
                    basis.push(v);
                }
            }
            zero.push(basis);
        }
        Ok(PresentedSource { ga, shifts, j_min, zero })
    }
}

fn relation_vector(ga: &GradedAlgebra, shifts: &[i32], j: i32, entries: &[Poly]) -> Vector {
    let offs = free_offsets(ga, shifts, j);
    let mut v = vec![ga.field().zero(); free_dim(ga, shifts, j)];
    for (r, p) in entries.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        let deg = (j - shifts[r]) as u32;
        for (k, c) in ga.coords(p, deg).into_iter().enumerate() {
            v[offs[r] + k] = c;
        }
    }
    v
}

impl ModuleSource for PresentedSource {
    fn field(&self) -> Field {
        self.ga.field()
    }

    fn min_degree(&self) -> i32 {
        self.j_min
    }

    fn ambient_dim(&self, j: i32) -> usize {
        free_dim(&self.ga, &self.shifts, j)
    }

    fn act(&self, x: usize, j: i32, v: &[crate::corealg::Scalar]) -> Vector {
        free_act(&self.ga, &self.shifts, x, j, v)
    }

    fn zero_span(&self, j: i32) -> &[Vector] {
        let k = j - self.j_min;
        if k < 0 || k as usize >= self.zero.len() {
            &[]
        } else {
            &self.zero[k as usize]
        }
    }
}

/// A (as a graded vector space) with the generators of T acting by left multiplication
/// with their images under an algebra map f: T → A.
pub struct InducedSource {
    target: Arc<GradedAlgebra>,
    images: Vec<Poly>,
    weights: Vec<u32>,
}

impl InducedSource {
    /// `weights` are the degrees of the generators of T; `images[x]` must have degree `weights[x]` or be zero.
    pub fn new(target: Arc<GradedAlgebra>, images: Vec<Poly>, weights: Vec<u32>) -> InducedSource {
        InducedSource { target, images, weights }
    }
}

impl ModuleSource for InducedSource {
    fn field(&self) -> Field {
        self.target.field()
    }

    fn min_degree(&self) -> i32 {
        0
    }

    fn ambient_dim(&self, j: i32) -> usize {
        self.target.dim(j as i64)
    }

    fn act(&self, x: usize, j: i32, v: &[crate::corealg::Scalar]) -> Vector {
        let p = &self.images[x];
        if p.is_zero() {
            return vec![self.field().zero(); self.ambient_dim(j + self.weights[x] as i32)];
        }
        self.target.left_mul_poly_dense(p, j as u32, v)
    }

    fn zero_span(&self, _j: i32) -> &[Vector] {
        &[]
    }
}
