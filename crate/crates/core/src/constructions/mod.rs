//! Tensor products, quotients by normal regular elements, and finite-map certificates.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::corealg::{AlgebraPresentation, CoreError, Field, ModulePresentation, Poly, Side, Word};
use crate::gbasis::{GbError, GradedAlgebra};
use crate::linalg::{row_reduce, solve, ScalarMatrix, Vector};
use crate::regularity::{AlgebraArtifacts, BoundedValue, CMEvidence, RegularityError, TorregUpper};
use crate::resolution::{module_via_map, ResolutionError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Gb(#[from] GbError),
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
    #[error(transparent)]
    Regularity(#[from] RegularityError),
    #[error("fields differ: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("the element reduces to zero in the algebra")]
    ZeroElement,
    #[error("the element must be homogeneous of positive degree")]
    BadElement,
    #[error("not normal: no {side} witness for generator `{generator}`")]
    NotNormal { generator: String, side: Side },
    #[error("degree {needed} is beyond the tabulated degree {top}")]
    Window { needed: u32, top: u32 },
}

/// A ⊗ B: disjoint generators, both relation sets, and the commutators a_i b_j − b_j a_i.
/// Generators of B that clash with names of A get primes appended.
pub fn tensor_product(a: &AlgebraPresentation, b: &AlgebraPresentation) -> Result<AlgebraPresentation, ConstructionError> {
    if a.field() != b.field() {
        return Err(ConstructionError::FieldMismatch(a.field(), b.field()));
    }
    let field = a.field();
    let na = a.num_gens();
    let mut gens: Vec<(String, u32)> = a.names().iter().cloned().zip(a.weights().iter().copied()).collect();
    for (name, &w) in b.names().iter().zip(b.weights()) {
        let mut n = name.clone();
        while gens.iter().any(|(g, _)| *g == n) {
            n.push('\'');
        }
        gens.push((n, w));
    }
    let weights: Vec<u32> = gens.iter().map(|g| g.1).collect();
    let map_a: Vec<u16> = (0..na as u16).collect();
    let map_b: Vec<u16> = (0..b.num_gens() as u16).map(|g| g + na as u16).collect();
    let mut rels: Vec<Poly> = a.relations().iter().map(|r| r.relabel(&map_a, &weights)).collect();
    rels.extend(b.relations().iter().map(|r| r.relabel(&map_b, &weights)));
    let one = field.one();
    for i in 0..na as u16 {
        for j in map_b.iter().copied() {
            let ab = Word::new(vec![i, j], &weights);
            let ba = Word::new(vec![j, i], &weights);
            let mut p = Poly::monomial(one.clone(), ab);
            p.add_term(ba, &-one.clone());
            rels.push(p);
        }
    }
    let order = a.order().extend(b.order());
    let label = match (a.label(), b.label()) {
        ("", "") => String::new(),
        (x, y) => format!("{x}(x){y}"),
    };
    Ok(AlgebraPresentation::new(field, gens, rels, order, label)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityCheck {
    pub up_to: i32,
    pub holds: bool,
    /// First degree j where dim(Ω·A)_j or dim(A·Ω)_j falls short of dim A_{j−a}.
    pub first_failure: Option<i32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalElementCertificate {
    pub element: String,
    pub degree: u32,
    /// q_g with g·Ω = Ω·q_g.
    pub left_witnesses: Vec<String>,
    /// p_g with Ω·g = p_g·Ω.
    pub right_witnesses: Vec<String>,
    pub regular: RegularityCheck,
}

impl NormalElementCertificate {
    pub fn is_regular(&self) -> bool {
        self.regular.holds
    }

    /// CMreg(A/(Ω)) = CMreg(A) + a − 1 when the parent value is exact.
    pub fn cm_evidence(&self, parent_cmreg: &BoundedValue) -> Option<CMEvidence> {
        let c = parent_cmreg.exact_value()?;
        self.regular.holds.then_some(CMEvidence::NormalQuotient { parent_cmreg: c, a: self.degree })
    }

    /// Torreg(k) cannot grow when passing to the quotient by a normal regular element of degree 1 or 2.
    pub fn torreg_upper(&self, parent_torreg: &BoundedValue) -> Option<TorregUpper> {
        let t = parent_torreg.exact_value()?;
        (self.regular.holds && (1..=2).contains(&self.degree)).then(|| TorregUpper {
            value: t,
            source: format!("quotient by the normal regular element {} of degree {}", self.element, self.degree),
        })
    }
}

fn coords_or_window(ga: &GradedAlgebra, p: &Poly, j: u32) -> Result<Vector, ConstructionError> {
    if j > ga.top() {
        return Err(ConstructionError::Window { needed: j, top: ga.top() });
    }
    Ok(ga.coords(p, j))
}

/// Left multiplication by Ω as a matrix A_j → A_{j+a}.
fn left_mul_matrix(ga: &GradedAlgebra, omega: &Poly, j: u32, a: u32) -> ScalarMatrix {
    let field = ga.field();
    let n = ga.dim(j as i64);
    let cols: Vec<Vector> = (0..n)
        .map(|k| {
            let mut e = vec![field.zero(); n];
            e[k] = field.one();
            ga.left_mul_poly_dense(omega, j, &e)
        })
        .collect();
    ScalarMatrix::from_columns(field, ga.dim((j + a) as i64), &cols)
}

/// Finds q_g with g·Ω = Ω·q_g for every generator g, working in the tables `ga`.
fn normality_witnesses(ga: &GradedAlgebra, omega: &Poly, a: u32, names: &[String], side: Side) -> Result<Vec<Poly>, ConstructionError> {
    let w = coords_or_window(ga, omega, a)?;
    let mut out = Vec::new();
    for (g, name) in names.iter().enumerate() {
        let e = ga.weights()[g];
        if e + a > ga.top() {
            return Err(ConstructionError::Window { needed: e + a, top: ga.top() });
        }
        let lhs = ga.left_mul_gen_dense(g, a, &w);
        let m = left_mul_matrix(ga, omega, e, a);
        let q = solve(&m, &lhs).ok_or_else(|| ConstructionError::NotNormal { generator: name.clone(), side })?;
        out.push(ga.element(&q, e));
    }
    Ok(out)
}

fn first_rank_deficit(ga: &GradedAlgebra, omega: &Poly, a: u32, d_max: i32) -> Option<i32> {
    (a as i32..=d_max).find(|&j| {
        let src = (j as u32) - a;
        let rank = row_reduce(&left_mul_matrix(ga, omega, src, a)).rank;
        rank != ga.dim(src as i64)
    })
}

/// B = A/(Ω) with a certificate that Ω is normal (exact witnesses for each generator on both
/// sides) and regular (a non-zero-divisor on both sides through degree d_max).
pub fn quotient_by_normal_element(
    art: &AlgebraArtifacts,
    omega: &Poly,
    d_max: i32,
) -> Result<(AlgebraPresentation, NormalElementCertificate), ConstructionError> {
    let a_pres = art.presentation();
    let a = match omega.degree() {
        Some(a) if a >= 1 => a,
        _ => return Err(ConstructionError::BadElement),
    };
    let ga = art.ga();
    if d_max > ga.top() as i32 {
        return Err(ConstructionError::Window { needed: d_max as u32, top: ga.top() });
    }
    let nf = art.gb().normal_form(omega)?;
    if nf.is_zero() {
        return Err(ConstructionError::ZeroElement);
    }
    let op = art.opposite_ga()?;
    let rev = nf.reversed();
    let names = a_pres.names();
    let left = normality_witnesses(ga, &nf, a, names, Side::Left)?;
    // Ω·g = p_g·Ω in A is g·Ω^op = Ω^op·p_g^op in the opposite algebra
    let right: Vec<Poly> = normality_witnesses(&op, &rev, a, names, Side::Right)?.iter().map(Poly::reversed).collect();
    let failure = first_rank_deficit(ga, &nf, a, d_max).or_else(|| first_rank_deficit(&op, &rev, a, d_max));
    let render = |p: &Poly| if p.is_zero() { "0".to_string() } else { a_pres.render_relation(p) };
    let cert = NormalElementCertificate {
        element: render(&nf),
        degree: a,
        left_witnesses: left.iter().map(render).collect(),
        right_witnesses: right.iter().map(render).collect(),
        regular: RegularityCheck { up_to: d_max, holds: failure.is_none(), first_failure: failure },
    };
    let label = format!("{}/({})", a_pres.label(), cert.element);
    let b = a_pres.with_extra_relations(std::slice::from_ref(omega), label)?;
    Ok((b, cert))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum FiniteVerdict {
    /// Cokernel zero on both sides from the trailing window on; `top` is the highest nonzero degree.
    FiniteCertified { top: i32 },
    NotFiniteUpToBound,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiniteMapCertificate {
    pub source: String,
    pub target: String,
    pub images: Vec<String>,
    pub d_max: i32,
    /// dim (A / f(T_+)·A)_j for j = 0..=d_max, and the same for A·f(T_+).
    pub left_cokernel: Vec<usize>,
    pub right_cokernel: Vec<usize>,
    pub trailing_width: u32,
    pub verdict: FiniteVerdict,
    /// A as a left T-module, as presented through d_max.
    #[serde(skip)]
    pub left_module: ModulePresentation,
}

impl FiniteMapCertificate {
    pub fn is_finite(&self) -> bool {
        matches!(self.verdict, FiniteVerdict::FiniteCertified { .. })
    }

    pub fn is_surjective(&self) -> bool {
        self.left_cokernel.iter().skip(1).all(|&c| c == 0)
    }
}

fn tail(c: &[usize], width: u32) -> &[usize] {
    &c[c.len().saturating_sub(width as usize)..]
}

fn cokernel_dims(shifts: &[i32], d_max: i32) -> Vec<usize> {
    (0..=d_max).map(|j| shifts.iter().filter(|&&b| b == j).count()).collect()
}

/// Certifies that A is finitely generated as a left and as a right T-module through f.
pub fn finite_map_check(
    t: &AlgebraArtifacts,
    images: &[Poly],
    a: &AlgebraArtifacts,
    d_max: i32,
) -> Result<FiniteMapCertificate, ConstructionError> {
    let tp = t.presentation();
    let ap = a.presentation();
    if tp.field() != ap.field() {
        return Err(ConstructionError::FieldMismatch(tp.field(), ap.field()));
    }
    for ga in [t.ga(), a.ga()] {
        if d_max > ga.top() as i32 {
            return Err(ConstructionError::Window { needed: d_max as u32, top: ga.top() });
        }
    }
    let left = module_via_map(tp, images, ap, Side::Left, d_max, t.ga(), a.ga())?;
    let right = module_via_map(tp, images, ap, Side::Right, d_max, &t.opposite_ga()?, &a.opposite_ga()?)?;
    let lc = cokernel_dims(&left.resolution.steps()[0].shifts, d_max);
    let rc = cokernel_dims(&right.resolution.steps()[0].shifts, d_max);
    let width = ap.max_gen_degree();
    let verdict = if tail(&lc, width).iter().chain(tail(&rc, width)).all(|&c| c == 0) {
        let top_of = |c: &[usize]| c.iter().rposition(|&x| x > 0).map_or(0, |j| j as i32);
        FiniteVerdict::FiniteCertified { top: top_of(&lc).max(top_of(&rc)) }
    } else if tail(&lc, width).iter().all(|&c| c > 0) || tail(&rc, width).iter().all(|&c| c > 0) {
        FiniteVerdict::NotFiniteUpToBound
    } else {
        FiniteVerdict::Inconclusive
    };
    let render = |p: &Poly| if p.is_zero() { "0".to_string() } else { ap.render_relation(p) };
    Ok(FiniteMapCertificate {
        source: tp.label().to_string(),
        target: ap.label().to_string(),
        images: images.iter().map(render).collect(),
        d_max,
        left_cokernel: lc,
        right_cokernel: rc,
        trailing_width: width,
        verdict,
        left_module: left.presentation,
    })
}

/// The identity on A, as a map of presentations.
pub fn identity_images(a: &Arc<AlgebraPresentation>) -> Vec<Poly> {
    let one = a.field().one();
    (0..a.num_gens()).map(|g| Poly::monomial(one.clone(), Word::letter(g as u16, a.weights()))).collect()
}
