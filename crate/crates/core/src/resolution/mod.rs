//! Minimal graded free resolutions computed degree by degree over normal-word bases.

mod betti;
mod ext;
mod free;
mod source;

pub use betti::{BettiRecord, BettiTable};
pub use ext::{ext_into_algebra, ExtRange, ExtTable};
pub use source::{InducedSource, ModuleSource, PresentedSource};

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::corealg::{AlgebraPresentation, CoreError, Field, ModulePresentation, ModuleRelation, Poly, Side, Word};
use crate::gbasis::{GbError, GradedAlgebra, GroebnerBasis};
use crate::linalg::{complement_basis, row_reduce, ScalarMatrix, Vector};
use free::{free_act, free_dim, free_offsets};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResolutionError {
    #[error(transparent)]
    Gb(#[from] GbError),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("module must be a left module here; convert right modules through the opposite algebra")]
    SideMismatch,
    #[error("module is not over the algebra of the supplied Gröbner basis")]
    AlgebraMismatch,
    #[error("image of generator {generator} has degree {found:?}, expected {expected}")]
    DegreeMismatch { generator: String, expected: u32, found: Option<u32> },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

/// One free module P_i = ⊕ A(−b_s) with the images of its generators in the previous term.
#[derive(Clone, Debug, Default)]
pub struct Step {
    pub shifts: Vec<i32>,
    pub images: Vec<Vector>,
}

/// Rank-nullity bookkeeping at one (step, degree).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessCheck {
    pub i: usize,
    pub j: i32,
    pub source_dim: usize,
    pub rank: usize,
    pub kernel_dim: usize,
    /// Dimension the image must have: the previous kernel, or the module itself at step 0.
    pub expected_image_dim: usize,
}

impl ExactnessCheck {
    pub fn ok(&self) -> bool {
        self.rank == self.expected_image_dim && self.rank + self.kernel_dim == self.source_dim
    }
}

/// A homogeneous matrix between free modules; entry (r, s) lies in degree b_s − a_r.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModuleMap {
    pub source_shifts: Vec<i32>,
    pub target_shifts: Vec<i32>,
    pub entries: Vec<Vec<Poly>>,
}

impl FreeModuleMap {
    /// No entry is a nonzero scalar.
    pub fn is_minimal(&self) -> bool {
        self.entries.iter().flatten().all(|p| p.is_zero() || p.degree().unwrap() >= 1)
    }
}

#[derive(Clone, Debug)]
pub struct Resolution {
    ga: Arc<GradedAlgebra>,
    side: Side,
    label: String,
    steps: Vec<Step>,
    /// Free-module shifts of the module's own presentation, when it has one.
    cover_shifts: Option<Vec<i32>>,
    i_max: usize,
    d_max: i32,
    j_min: i32,
    kernel_exhausted: bool,
    terminated: bool,
    checks: Vec<ExactnessCheck>,
}

impl Resolution {
    pub fn ga(&self) -> &Arc<GradedAlgebra> {
        &self.ga
    }

    pub fn field(&self) -> Field {
        self.ga.field()
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
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

    /// True when the last computed step has no syzygies anywhere in the window and its
    /// generators sit low enough that no syzygy can start above the window.
    pub fn terminated(&self) -> bool {
        self.terminated
    }

    /// Projective dimension when terminated.
    pub fn length(&self) -> Option<usize> {
        self.terminated.then(|| self.steps.len() - 1)
    }

    /// Every syzygy module in the window was exhausted (no generators past the last step).
    pub fn kernel_exhausted(&self) -> bool {
        self.kernel_exhausted
    }

    pub fn checks(&self) -> &[ExactnessCheck] {
        &self.checks
    }

    pub fn is_exact(&self) -> bool {
        self.checks.iter().all(ExactnessCheck::ok)
    }

    /// Whether the generators of step `i` are all known: the step was computed and its
    /// generators lie at least one generator degree below the window top (or it is past the end).
    pub fn step_complete(&self, i: usize) -> bool {
        if self.terminated && i >= self.steps.len() {
            return true;
        }
        let Some(step) = self.steps.get(i) else { return false };
        if self.terminated {
            return true;
        }
        let e = self.ga.weights().iter().copied().max().unwrap_or(1) as i32;
        step.shifts.iter().all(|&b| b <= self.d_max - e)
    }

    pub fn betti_table(&self) -> BettiTable {
        betti_table(self)
    }

    /// The matrix of d_i : P_i → P_{i−1} over the algebra (i ≥ 1), or P_0 → cover for presented modules.
    pub fn map(&self, i: usize) -> Option<FreeModuleMap> {
        let step = self.steps.get(i)?;
        let target = if i == 0 { self.cover_shifts.clone()? } else { self.steps[i - 1].shifts.clone() };
        let mut entries = vec![Vec::with_capacity(step.shifts.len()); target.len()];
        for (s, &b) in step.shifts.iter().enumerate() {
            let offs = free_offsets(&self.ga, &target, b);
            for (r, &a) in target.iter().enumerate() {
                let v = &step.images[s][offs[r]..offs[r + 1]];
                let p = if v.is_empty() { Poly::zero(self.field()) } else { self.ga.element(v, (b - a) as u32) };
                entries[r].push(p);
            }
        }
        Some(FreeModuleMap { source_shifts: step.shifts.clone(), target_shifts: target, entries })
    }

    pub fn is_minimal(&self) -> bool {
        (1..self.steps.len()).filter_map(|i| self.map(i)).all(|m| m.is_minimal())
    }

    /// d_{i−1} ∘ d_i = 0 at every degree of the window, checked on the stored images.
    pub fn verify_complex(&self) -> Result<(), ResolutionError> {
        for i in 2..self.steps.len() {
            let prev = &self.steps[i - 1];
            let pp = &self.steps[i - 2].shifts;
            for (s, &b) in self.steps[i].shifts.iter().enumerate() {
                let v = &self.steps[i].images[s];
                let out = self.apply(prev, pp, b, v);
                if out.iter().any(|c| !c.is_zero()) {
                    return Err(ResolutionError::Invariant(format!("d{} d{} ≠ 0 on generator {s} of degree {b}", i - 1, i)));
                }
            }
        }
        Ok(())
    }

    /// Applies the map whose generator images are `step.images` to a degree-`j` element of
    /// ⊕ A(−b_s), landing in ⊕ A(−c_t) (shifts `target`).
    fn apply(&self, step: &Step, target: &[i32], j: i32, v: &[crate::corealg::Scalar]) -> Vector {
        let field = self.field();
        let offs = free_offsets(&self.ga, &step.shifts, j);
        let mut out = vec![field.zero(); free_dim(&self.ga, target, j)];
        for (s, &b) in step.shifts.iter().enumerate() {
            let deg = j - b;
            if deg < 0 {
                continue;
            }
            for (k, c) in v[offs[s]..offs[s + 1]].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let w = &self.ga.basis(deg as u32)[k];
                let img = self.act_word(target, w, b, &step.images[s]);
                for (o, a) in out.iter_mut().zip(&img) {
                    o.add_assign_mul(c, a);
                }
            }
        }
        out
    }

    fn act_word(&self, shifts: &[i32], w: &Word, j: i32, v: &[crate::corealg::Scalar]) -> Vector {
        let mut cur = v.to_vec();
        let mut deg = j;
        for &x in w.letters().iter().rev() {
            cur = free_act(&self.ga, shifts, x as usize, deg, &cur);
            deg += self.ga.weights()[x as usize] as i32;
        }
        cur
    }
}

fn betti_table(r: &Resolution) -> BettiTable {
    let mut t = BettiTable::new(r.i_max, r.j_min, r.d_max, r.side);
    for (i, s) in r.steps.iter().enumerate() {
        for &b in &s.shifts {
            t.add(i, b, 1);
        }
    }
    t.set_computed_steps(r.steps.len());
    t.set_termination(r.length());
    t
}

/// The trivial left module k = A/A_+.
pub fn trivial_module(a: &Arc<AlgebraPresentation>) -> ModulePresentation {
    let one = a.field().one();
    let rels = (0..a.num_gens())
        .map(|x| ModuleRelation {
            degree: a.weights()[x] as i32,
            entries: vec![Poly::monomial(one.clone(), Word::letter(x as u16, a.weights()))],
        })
        .collect();
    ModulePresentation::new(a.clone(), Side::Left, vec![("e".into(), 0)], rels).expect("trivial module is homogeneous")
}

/// M(ℓ): every generator degree decreased by ℓ.
pub fn shift_module(m: &ModulePresentation, ell: i32) -> ModulePresentation {
    m.shifted(ell)
}

/// Degree of the algebra tables needed to resolve in internal degrees ≤ d_max.
pub fn needed_top(j_min: i32, d_max: i32) -> u32 {
    (d_max - j_min).max(0) as u32
}

/// Minimal resolution of a left module over the algebra of `gb`, steps 0..=i_max, degrees ≤ d_max.
pub fn minimal_resolution(
    gb: &Arc<GroebnerBasis>,
    m: &ModulePresentation,
    i_max: usize,
    d_max: i32,
) -> Result<Resolution, ResolutionError> {
    let j_min = m.gen_degrees().iter().copied().min().unwrap_or(0);
    let ga = Arc::new(GradedAlgebra::new(gb.clone(), needed_top(j_min, d_max))?);
    resolve_presented(&ga, m, i_max, d_max)
}

/// As [`minimal_resolution`] with prebuilt tables.
pub fn resolve_presented(
    ga: &Arc<GradedAlgebra>,
    m: &ModulePresentation,
    i_max: usize,
    d_max: i32,
) -> Result<Resolution, ResolutionError> {
    let src = PresentedSource::new(ga.clone(), m, d_max)?;
    let label = format!("{} over {}", module_label(m), ga.gb().presentation().label());
    let mut r = resolve_source(ga, &src, i_max, d_max, label, m.side())?;
    r.cover_shifts = Some(m.gen_degrees().to_vec());
    Ok(r)
}

fn module_label(m: &ModulePresentation) -> String {
    format!("module[{}]", m.gen_degrees().iter().map(|d| d.to_string()).collect::<Vec<_>>().join(","))
}

/// Runs the degreewise syzygy engine on any module source.
pub fn resolve_source(
    ga: &Arc<GradedAlgebra>,
    src: &dyn ModuleSource,
    i_max: usize,
    d_max: i32,
    label: String,
    side: Side,
) -> Result<Resolution, ResolutionError> {
    let field = ga.field();
    let j_min = src.min_degree();
    if (ga.top() as i64) < (d_max - j_min) as i64 {
        return Err(GbError::Uncertified { degree: needed_top(j_min, d_max), bound: ga.top() }.into());
    }
    let weights: Vec<i32> = ga.weights().iter().map(|&w| w as i32).collect();
    let mut steps: Vec<Step> = Vec::new();
    let mut checks = Vec::new();
    let mut prev_kernels: Vec<Vec<Vector>> = Vec::new();
    let mut exhausted = false;
    for i in 0..=i_max {
        let mut step = Step::default();
        let mut cur: Vec<Vec<Vector>> = Vec::new();
        let mut next_kernels: Vec<Vec<Vector>> = Vec::new();
        let prev_shifts: Vec<i32> = if i == 0 { Vec::new() } else { steps[i - 1].shifts.clone() };
        let act_prev = |x: usize, j: i32, v: &[crate::corealg::Scalar]| -> Vector {
            if i == 0 {
                src.act(x, j, v)
            } else {
                free_act(ga, &prev_shifts, x, j, v)
            }
        };
        for j in j_min..=d_max {
            let mut imgs: Vec<Vector> = Vec::new();
            for (s, &b) in step.shifts.iter().enumerate() {
                for w in ga.basis((j - b) as u32) {
                    let x = w.letters()[0] as usize;
                    let jj = j - weights[x];
                    let rest = w.slice(1, w.len(), ga.weights());
                    let k = free_offsets(ga, &step.shifts, jj)[s]
                        + ga.word_index(&rest).ok_or_else(|| ResolutionError::Invariant("suffix of a normal word is not normal".into()))?;
                    imgs.push(act_prev(x, jj, &cur[(jj - j_min) as usize][k]));
                }
            }
            let target_dim = if i == 0 { src.ambient_dim(j) } else { free_dim(ga, &prev_shifts, j) };
            let zero = if i == 0 { src.zero_span(j) } else { &[] };
            let new = if i == 0 {
                let mut span = imgs.clone();
                span.extend(zero.iter().cloned());
                let space: Vec<Vector> = (0..target_dim)
                    .map(|k| {
                        let mut e = vec![field.zero(); target_dim];
                        e[k] = field.one();
                        e
                    })
                    .collect();
                complement_basis(field, &span, &space)
            } else {
                complement_basis(field, &imgs, &prev_kernels[(j - j_min) as usize])
            }
            .map_err(|e| ResolutionError::Invariant(format!("step {i}, degree {j}: {e}")))?;
            for v in new {
                step.shifts.push(j);
                step.images.push(v.clone());
                imgs.push(v);
            }
            // kernel of d_i in degree j
            let n = imgs.len();
            let (kernel, rank, expected) = if i == 0 {
                let mut cols = imgs.clone();
                cols.extend(zero.iter().cloned());
                let rr = row_reduce(&ScalarMatrix::from_columns(field, target_dim, &cols));
                let proj: Vec<Vector> = rr.kernel.iter().map(|v| v[..n].to_vec()).collect();
                let basis = if proj.is_empty() { proj } else { row_reduce(&ScalarMatrix::from_rows(field, n, proj)).rref };
                (basis, rr.rank - zero.len(), target_dim - zero.len())
            } else {
                let rr = row_reduce(&ScalarMatrix::from_columns(field, target_dim, &imgs));
                let expected = prev_kernels[(j - j_min) as usize].len();
                (rr.kernel, rr.rank, expected)
            };
            checks.push(ExactnessCheck { i, j, source_dim: n, rank, kernel_dim: kernel.len(), expected_image_dim: expected });
            next_kernels.push(kernel);
            cur.push(imgs);
        }
        steps.push(step);
        if next_kernels.iter().all(|k| k.is_empty()) {
            exhausted = true;
            break;
        }
        prev_kernels = next_kernels;
    }
    let e_max = weights.iter().copied().max().unwrap_or(1);
    let terminated = exhausted && steps.last().is_some_and(|s| s.shifts.iter().all(|&b| b <= d_max - e_max));
    Ok(Resolution {
        ga: ga.clone(),
        side,
        label,
        steps,
        cover_shifts: None,
        i_max,
        d_max,
        j_min,
        kernel_exhausted: exhausted,
        terminated,
        checks,
    })
}

/// A as a graded T-module through f: T → A (images of the generators of T).
pub struct InducedModule {
    pub presentation: ModulePresentation,
    pub resolution: Resolution,
}

/// Presents A as a left or right T-module, generators and relations found through degree d_max.
/// `t_ga` and `a_ga` must be the tables of T and A for the requested side (opposite algebras for
/// right modules), tabulated through d_max.
pub fn module_via_map(
    t: &Arc<AlgebraPresentation>,
    images: &[Poly],
    a: &Arc<AlgebraPresentation>,
    side: Side,
    d_max: i32,
    t_ga: &Arc<GradedAlgebra>,
    a_ga: &Arc<GradedAlgebra>,
) -> Result<InducedModule, ResolutionError> {
    check_images(t, images)?;
    let imgs: Vec<Poly> = match side {
        Side::Left => images.to_vec(),
        Side::Right => images.iter().map(Poly::reversed).collect(),
    };
    let src = InducedSource::new(a_ga.clone(), imgs, t.weights().to_vec());
    let label = format!("{} as {} module over {}", a.label(), side, t.label());
    let res = resolve_source(t_ga, &src, 1, d_max, label, side)?;
    let gens: Vec<(String, i32)> = res.steps[0].shifts.iter().enumerate().map(|(k, &b)| (format!("g{k}"), b)).collect();
    let shifts = res.steps[0].shifts.clone();
    let mut rels = Vec::new();
    if let Some(s1) = res.steps.get(1) {
        for (k, &b) in s1.shifts.iter().enumerate() {
            let offs = free_offsets(t_ga, &shifts, b);
            let entries = shifts
                .iter()
                .enumerate()
                .map(|(r, &a_r)| {
                    let v = &s1.images[k][offs[r]..offs[r + 1]];
                    let p = if v.is_empty() { Poly::zero(t.field()) } else { t_ga.element(v, (b - a_r) as u32) };
                    if side == Side::Right {
                        p.reversed()
                    } else {
                        p
                    }
                })
                .collect();
            rels.push(ModuleRelation { degree: b, entries });
        }
    }
    let presentation = ModulePresentation::new(t.clone(), side, gens, rels)?;
    Ok(InducedModule { presentation, resolution: res })
}

pub(crate) fn check_images(t: &AlgebraPresentation, images: &[Poly]) -> Result<(), ResolutionError> {
    if images.len() != t.num_gens() {
        return Err(ResolutionError::Invariant(format!("{} images for {} generators", images.len(), t.num_gens())));
    }
    for (x, p) in images.iter().enumerate() {
        let e = t.weights()[x];
        if !p.is_zero() && p.degree() != Some(e) {
            return Err(ResolutionError::DegreeMismatch { generator: t.names()[x].clone(), expected: e, found: p.degree() });
        }
    }
    Ok(())
}
