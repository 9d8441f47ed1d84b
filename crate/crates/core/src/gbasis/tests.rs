use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::corealg::{parse_poly, parse_presentation, Field, Poly, Scalar, Word};
use crate::linalg::{row_reduce, ScalarMatrix};

fn alg(src: &str) -> Arc<AlgebraPresentation> {
    Arc::new(parse_presentation(src).unwrap())
}

fn gb(src: &str, d: u32) -> GroebnerBasis {
    buchberger_truncated(&alg(src), d, &GbLimits::default()).unwrap()
}

const PLANE: &str = "field Q; gens x:1 y:1; rels x*y - y*x";
const T34: &str = "field Q; gens x:1 y:1; rels x^2*y - y*x^2, x*y^2 - y^2*x";

/// All words of weighted degree `j`.
fn all_words(weights: &[u32], j: u32) -> Vec<Word> {
    let mut by: Vec<Vec<Word>> = vec![vec![Word::empty()]];
    for d in 1..=j {
        let mut ws = Vec::new();
        for (g, &e) in weights.iter().enumerate() {
            if e <= d {
                for w in &by[(d - e) as usize] {
                    ws.push(w.concat(&Word::letter(g as u16, weights)));
                }
            }
        }
        by.push(ws);
    }
    by.pop().unwrap()
}

/// dim A_j as (#words) − rank of the span of u·r·v.
fn brute_dim(a: &AlgebraPresentation, j: u32) -> usize {
    let w = a.weights();
    let words = all_words(w, j);
    let pos = |x: &Word| words.iter().position(|y| y == x).unwrap();
    let mut rows = Vec::new();
    for r in a.relations() {
        let dr = r.degree().unwrap();
        if dr > j {
            continue;
        }
        for lu in 0..=(j - dr) {
            for u in all_words(w, lu) {
                for v in all_words(w, j - dr - lu) {
                    let mut row = vec![a.field().zero(); words.len()];
                    for (t, c) in r.terms() {
                        row[pos(&t.sandwich(&u, &v))] = c.clone();
                    }
                    rows.push(row);
                }
            }
        }
    }
    let rank = row_reduce(&ScalarMatrix::from_rows(a.field(), words.len(), rows)).rank;
    words.len() - rank
}

#[test]
fn commutative_plane() {
    let g = gb(PLANE, 8);
    assert!(g.is_complete());
    assert_eq!(g.render(), vec!["x*y - y*x"]);
    let a = g.presentation().clone();
    let nf = g.normal_form(&parse_poly("x*y", &a).unwrap()).unwrap();
    assert_eq!(a.render_relation(&nf), "y*x");
    assert_eq!(g.normal_words(2).unwrap().words.len(), 3);
}

#[test]
fn type_34_basis() {
    let g = gb(T34, 8);
    assert!(g.is_complete());
    assert_eq!(g.render(), vec!["x*y^2 - y^2*x", "x^2*y - y*x^2"]);
    let a = g.presentation().clone();
    let nf = g.normal_form(&parse_poly("x^2*y", &a).unwrap()).unwrap();
    assert_eq!(a.render_relation(&nf), "y*x^2");
    let dims: Vec<usize> = (0..=6).map(|j| g.normal_words(j).unwrap().words.len()).collect();
    assert_eq!(dims, vec![1, 2, 4, 6, 9, 12, 16]);
}

#[test]
fn type_34_overlaps_resolve() {
    // every overlap S-polynomial through degree 6 reduces to zero
    let g = gb(T34, 8);
    let w = g.presentation().weights().to_vec();
    for (i, a) in g.leading_words().iter().enumerate() {
        for (j, b) in g.leading_words().iter().enumerate() {
            for (u, v) in overlaps(a, b, &w) {
                let s = g.elements()[i].mul_word_right(&v).sub(&g.elements()[j].mul_word_left(&u));
                assert!(g.normal_form(&s).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn truncated_polynomial_ring() {
    for d in 2..5 {
        let g = gb(&format!("field Q; gens x:1; rels x^{d}"), 2 * d);
        assert!(g.is_complete());
        assert_eq!(g.render(), vec![format!("x^{d}")]);
    }
    let g = gb("field Q; gens x:1; rels x^3", 6);
    assert!(g.normal_words(3).unwrap().words.is_empty());
    assert_eq!(g.normal_words(2).unwrap().words.len(), 1);
}

#[test]
fn quotient_b_dims() {
    let g = gb("field Q; gens x:1 y:1; rels x^2, x*y^2 - y^2*x", 8);
    assert_eq!(g.normal_words(3).unwrap().words.len(), 4);
    // brute enumeration of binary words of length 3 avoiding xx and xyy
    let count = (0..8u32)
        .filter(|m| {
            let s: String = (0..3).map(|k| if m >> (2 - k) & 1 == 1 { 'x' } else { 'y' }).collect();
            !s.contains("xx") && !s.contains("xyy")
        })
        .count();
    assert_eq!(count, 4);
}

#[test]
fn incomplete_basis_is_flagged() {
    // the self-overlap x*y*x*y*x lives in degree 5
    let g = gb("field Q; gens x:1 y:1; rels x*y*x - y*y*y", 3);
    assert_eq!(g.completeness(), Completeness::CompleteUpTo(3));
    let a = g.presentation().clone();
    let p = parse_poly("x^4", &a).unwrap();
    assert_eq!(g.normal_form(&p), Err(GbError::Uncertified { degree: 4, bound: 3 }));
    assert!(g.normal_words(4).is_err());
}

#[test]
fn truncation_below_relations_rejected() {
    let r = buchberger_truncated(&alg(T34), 2, &GbLimits::default());
    assert!(matches!(r, Err(GbError::TruncationTooLow { .. })));
}

#[test]
fn resource_limit_reported() {
    // x^2 - y*x has an infinite basis x*y^k*x - y^(k+1)*x
    let r = buchberger_truncated(&alg("field Q; gens x:1 y:1; rels y*x - x*x"), 12, &GbLimits { max_elements: 5 });
    assert!(matches!(r, Err(GbError::ResourceLimit(_))));
}

#[test]
fn dimension_oracle_small_presentations() {
    let cases = [
        PLANE,
        T34,
        "field Q; gens x:1 y:1; rels x^2, x*y^2 - y^2*x",
        "field Q; gens x:1 y:1; rels x*y*x - y*y*y",
        "field F101; gens x:1 y:1 z:1; rels x*y - 2*y*x, y*z - 3*z*y, z*x - 5*x*z",
        "field Q; gens x:1 t:2; rels t^2 - x^4, x*t - t*x",
        "field Q; gens a:1 b:2; rels a*b - b*a - a^3",
    ];
    for src in cases {
        let a = alg(src);
        let g = buchberger_truncated(&a, 10, &GbLimits::default()).unwrap();
        for j in 0..=5 {
            assert_eq!(g.normal_words(j).unwrap().words.len(), brute_dim(&a, j), "{src} degree {j}");
        }
    }
}

#[test]
fn deterministic_output() {
    let a = gb("field Q; gens x:1 y:1; rels x*y*x - y*y*y", 9).render();
    let b = gb("field Q; gens x:1 y:1; rels x*y*x - y*y*y", 9).render();
    assert_eq!(a, b);
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = GbCache::new(dir.path());
    let a = alg("field Q; gens x:1 y:1; rels x*y - 1/2*y*x, x^3");
    let g1 = load_or_compute(&a, 8, &GbLimits::default(), Some(&cache)).unwrap();
    assert!(cache.load(&a, 8).unwrap().is_some());
    let g2 = load_or_compute(&a, 8, &GbLimits::default(), Some(&cache)).unwrap();
    assert_eq!(g1.render(), g2.render());
    assert_eq!(g1.completeness(), g2.completeness());
    assert!(cache.load(&a, 9).unwrap().is_none());
}

#[test]
fn graded_tables_match_normal_forms() {
    let g = Arc::new(gb(T34, 8));
    let ga = GradedAlgebra::new(g.clone(), 6).unwrap();
    let a = g.presentation().clone();
    let p = parse_poly("y*x*y + 3*x*x*x", &a).unwrap();
    // x · p computed via tables vs directly
    let v = ga.coords(&p, 3);
    let via_tables = ga.element(&ga.left_mul_gen_dense(0, 3, &v), 4);
    let direct = g.normal_form(&parse_poly("x*y*x*y + 3*x^4", &a).unwrap()).unwrap();
    assert_eq!(via_tables, direct);
}

fn random_poly(a: &AlgebraPresentation, j: u32, coeffs: &[i64]) -> Poly {
    let words = all_words(a.weights(), j);
    let mut p = Poly::zero(a.field());
    for (w, c) in words.into_iter().zip(coeffs) {
        p.add_term(w, &a.field().from_i64(*c));
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn normal_form_linear_and_idempotent(
        c1 in proptest::collection::vec(-5i64..5, 16),
        c2 in proptest::collection::vec(-5i64..5, 16),
        alpha in -4i64..4,
        j in 2u32..5,
    ) {
        let g = gb(T34, 8);
        let a = g.presentation().clone();
        let p = random_poly(&a, j, &c1);
        let q = random_poly(&a, j, &c2);
        let f = Field::Rationals;
        let s: Scalar = f.from_i64(alpha);
        let lhs = g.normal_form(&p.scale(&s).add(&q)).unwrap();
        let rhs = g.normal_form(&p).unwrap().scale(&s).add(&g.normal_form(&q).unwrap());
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(g.normal_form(&lhs).unwrap(), lhs);
    }
}
