//! Acceptance criteria 1-10. Each criterion prints one PASS/FAIL line; the test fails if any does.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ncreg::constructions::{finite_map_check, identity_images, quotient_by_normal_element, tensor_product};
use ncreg::corealg::{
    parse_module, parse_poly, parse_presentation, AlgebraPresentation, ModulePresentation, ModuleRelation, Poly,
    Scalar, Side, Word,
};
use ncreg::gbasis::{buchberger_truncated, GbLimits};
use ncreg::regularity::{
    cm_regularity, concavity_certificate, inequality_harness, invariant_ring_obstruction, ta_tc_pairs,
    tor_regularity, AlgebraArtifacts, ArtifactOptions, Assertion, CMEvidence, CheckStatus, ConcavityWitness,
    HarnessCase, KoszulVerdict, RegularityReport, ReportOptions, Window,
};
use ncreg::resolution::resolve_presented;
use ncreg::series::{stanley_check, RationalSeries, StanleyVerdict};

const WINDOW: Window = Window { i_max: 8, d_max: 12, d_gb: 12 };
const TOLERANCE: &str = "exact match, window i<=8 j<=12";
const TOLERANCE_DIRECT: &str = "exact match; Kunneth exact, direct products at i<=8 j<=12 or i<=4 j<=6";

type Outcome = Result<String, String>;
type Criterion = fn(&BTreeMap<&str, Golden>) -> Outcome;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn load(name: &str) -> Arc<AlgebraPresentation> {
    let path = format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"));
    Arc::new(parse_presentation(&std::fs::read_to_string(path).unwrap()).unwrap())
}

fn artifacts(a: &Arc<AlgebraPresentation>, w: Window) -> Arc<AlgebraArtifacts> {
    let options = ArtifactOptions { window: w, ..Default::default() };
    Arc::new(AlgebraArtifacts::compute(a.clone(), &options).unwrap())
}

fn report_with(art: &AlgebraArtifacts, opts: &ReportOptions) -> Arc<RegularityReport> {
    Arc::new(RegularityReport::build(art, opts).unwrap())
}

fn report(art: &AlgebraArtifacts) -> Arc<RegularityReport> {
    report_with(art, &ReportOptions::default())
}

fn cm_asserted(s: i64) -> ReportOptions {
    ReportOptions { assertions: [Assertion::CohenMacaulay { s }].into(), ..Default::default() }
}

struct Golden {
    art: Arc<AlgebraArtifacts>,
    report: Arc<RegularityReport>,
}

/// The golden algebras at the default window, with the assertions they are known to satisfy.
fn goldens() -> BTreeMap<&'static str, Golden> {
    let specs: Vec<(&str, Arc<AlgebraPresentation>, ReportOptions)> = vec![
        ("T34", load("T34.alg"), ReportOptions::default()),
        ("k[x]", load("polyring1.alg"), ReportOptions::default()),
        ("k[x,y]", load("polyring2.alg"), ReportOptions::default()),
        ("k[x,y,z]", load("polyring3.alg"), ReportOptions::default()),
        ("k[x]/(x^2)", load("kx_mod_x2.alg"), ReportOptions::default()),
        ("k[x]/(x^3)", load("kx_mod_x3.alg"), ReportOptions::default()),
        ("k[x,y]/(x^2,xy,y^2)", load("square_zero2.alg"), ReportOptions::default()),
        ("k[x,y,t]/(t^2-x^4-y^4)", load("hypersurface_t2.alg"), cm_asserted(2)),
        ("k[x,t]/(t^2-x^4)", load("hypersurface_x_t2.alg"), cm_asserted(1)),
        ("A(2)^2", a2_power(2), ReportOptions::default()),
    ];
    let mut out: BTreeMap<&'static str, Golden> = std::thread::scope(|s| {
        let handles: Vec<_> = specs
            .iter()
            .map(|(name, a, opts)| {
                s.spawn(move || {
                    let art = artifacts(a, WINDOW);
                    let report = report_with(&art, opts);
                    (*name, Golden { art, report })
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let (b, _) = t34_quotient("x^2", &out["T34"]);
    let (plane, _) = t34_quotient("x*y - y*x", &out["T34"]);
    out.insert("T34/(x^2)", b);
    out.insert("T34/(xy-yx)", plane);
    out
}

fn a2_power(m: usize) -> Arc<AlgebraPresentation> {
    let a2 = load("kx_mod_x2.alg");
    let mut p = (*a2).clone();
    for _ in 1..m {
        p = tensor_product(&p, &a2).unwrap();
    }
    Arc::new(p)
}

/// T/(Ω) reported with the evidence that its normality certificate provides.
fn t34_quotient(omega: &str, t: &Golden) -> (Golden, u32) {
    let w = t.art.window();
    let omega = parse_poly(omega, t.art.presentation()).unwrap();
    let (b, cert) = quotient_by_normal_element(&t.art, &omega, w.d_max).unwrap();
    assert!(cert.is_regular());
    let art = artifacts(&Arc::new(b), w);
    let opts = ReportOptions {
        evidence: cert.cm_evidence(&t.report.cmreg),
        torreg_upper: cert.torreg_upper(&t.report.torreg_k),
        assertions: BTreeSet::new(),
    };
    let report = report_with(&art, &opts);
    (Golden { art, report }, cert.degree)
}

fn is_as_regular(g: &Golden) -> bool {
    g.report.as_regular.is_yes()
}

/// deg Tor_n over k[x]/(x^d).
fn truncated_poly_t(n: usize, d: i32) -> i32 {
    (n as i32 / 2) * d + (n as i32 % 2)
}

fn criterion_1(_g: &BTreeMap<&str, Golden>) -> Outcome {
    for (d, file) in [(2, "kx_mod_x2.alg"), (3, "kx_mod_x3.alg")] {
        let art = artifacts(&load(file), WINDOW);
        let b = art.betti();
        for n in 0..=6 {
            ensure!(b.t(n) == Some(truncated_poly_t(n, d)), "d={d}: t_{n} = {:?}, expected {}", b.t(n), truncated_poly_t(n, d));
        }
        if d == 2 {
            let r = report(&art);
            ensure!(r.koszul.is_yes(), "k[x]/(x^2) Koszul verdict {:?}", r.koszul);
            ensure!(r.cmreg.exact_value() == Some(1), "CMreg(k[x]/(x^2)) = {}", r.cmreg);
        }
    }
    let mut asregs = Vec::new();
    for m in 1..=3 {
        let r = report(&artifacts(&a2_power(m), WINDOW));
        ensure!(r.asreg.exact_value() == Some(m as i64), "ASreg(A(2)^{m}) = {}", r.asreg);
        asregs.push(r.asreg.to_string());
    }
    Ok(format!("t_n tables for d = 2, 3 match n = 0..6; ASreg(A(2)^m) = [{}]", asregs.join(", ")))
}

fn criterion_2(g: &BTreeMap<&str, Golden>) -> Outcome {
    let t = &g["T34"];
    let b = t.art.betti();
    let ts: Vec<Option<i32>> = (0..=3).map(|i| b.t(i)).collect();
    ensure!(ts == vec![Some(0), Some(1), Some(3), Some(4)], "t_i = {ts:?}");
    ensure!(b.length() == Some(3), "termination {:?}", b.length());
    let r = &t.report;
    ensure!(r.torreg_k.is_exact() && r.torreg_k.exact_value() == Some(1), "Torreg {}", r.torreg_k);
    ensure!(r.cm_evidence == Some(CMEvidence::AsRegular { d: 3, ell: 4 }), "evidence {:?}", r.cm_evidence);
    ensure!(r.cmreg.exact_value() == Some(-1), "CMreg {}", r.cmreg);
    ensure!(r.asreg.exact_value() == Some(0), "ASreg {}", r.asreg);
    ensure!(r.as_regular.as_type() == Some((3, 4)), "verdict {:?}", r.as_regular);
    Ok("t_i = (0,1,3,4), length 3, Torreg 1, CMreg -1, ASreg 0, type (3,4)".into())
}

fn criterion_3(g: &BTreeMap<&str, Golden>) -> Outcome {
    let b = &g["T34/(x^2)"];
    let r = &b.report;
    ensure!(r.torreg_k.is_exact() && r.torreg_k.exact_value() == Some(1), "Torreg {}", r.torreg_k);
    ensure!(r.cmreg.exact_value() == Some(0), "CMreg {}", r.cmreg);
    ensure!(r.asreg.exact_value() == Some(1), "ASreg {}", r.asreg);
    ensure!(r.as_regular.is_no(), "verdict {:?}", r.as_regular);
    let t = &g["T34"];
    let cert = finite_map_check(&t.art, &identity_images(t.art.presentation()), &b.art, WINDOW.d_max).unwrap();
    let w = ConcavityWitness::from_map(&t.report, &cert).map_err(|e| e.to_string())?;
    let c = concavity_certificate(r, &[w]);
    ensure!(c.exact && c.c.exact_value() == Some(1), "c = {}", c.c);
    ensure!(c.c_minus.exact_value() == Some(1), "c_- = {}", c.c_minus);
    let plane = &g["T34/(xy-yx)"];
    ensure!(plane.report.torreg_k.exact_value() == Some(0), "Torreg(T/(xy-yx)) = {}", plane.report.torreg_k);
    let dims: Vec<usize> = (0..=WINDOW.d_max).map(|j| plane.art.ga().dim(j as i64)).collect();
    ensure!(dims == (1..=13).collect::<Vec<_>>(), "T/(xy-yx) dims {dims:?}");
    ensure!(plane.report.as_regular.as_type() == Some((2, 2)), "T/(xy-yx) type {:?}", plane.report.as_regular);
    Ok("T/(x^2): Torreg 1, CMreg 0, ASreg 1, not regular, c = c_- = 1; T/(xy-yx) is the plane with Torreg 0".into())
}

/// Torreg of the cyclic module A/AΩ.
fn cyclic_torreg(art: &AlgebraArtifacts, omega: &str) -> Option<i64> {
    let m = parse_module(&format!("side left\ngens e:0\nrels ({omega})*e\n"), art.presentation().clone()).unwrap();
    let res = resolve_presented(art.ga(), &m, WINDOW.i_max, WINDOW.d_max).unwrap();
    tor_regularity(&res.betti_table()).exact_value()
}

fn criterion_4(g: &BTreeMap<&str, Golden>) -> Outcome {
    let t = &g["T34"];
    let mut lines = Vec::new();
    // independent CMreg for the quotients: Cohen-Macaulay formula for T/(x^2), AS type for the plane
    let b = &g["T34/(x^2)"];
    let cm_b = cm_regularity(&b.art, &CMEvidence::CohenMacaulayAsserted { s: 2 }).unwrap().exact_value();
    let cm_plane = g["T34/(xy-yx)"].report.cmreg.exact_value();
    let k2 = &g["k[x,y]"];
    let cm_line = g["k[x]"].report.cmreg.exact_value();
    let cases = [
        ("T/(x^2)", t, "x^2", 2i64, cm_b),
        ("T/(xy-yx)", t, "x*y - y*x", 2, cm_plane),
        ("k[x,y]/(x)", k2, "x", 1, cm_line),
    ];
    for (name, parent, omega, a, cm_q) in cases {
        let cm_t = parent.report.cmreg.exact_value().ok_or("parent CMreg unknown")?;
        let cm_q = cm_q.ok_or(format!("{name}: CMreg unknown"))?;
        let tr = cyclic_torreg(&parent.art, omega).ok_or(format!("{name}: module Torreg not exact"))?;
        ensure!(cm_q - cm_t == a - 1 && tr == a - 1, "{name}: CMreg difference {}, a - 1 = {}, Torreg {}", cm_q - cm_t, a - 1, tr);
        lines.push(format!("{name}: {} = {} = {}", cm_q - cm_t, a - 1, tr));
    }
    Ok(lines.join("; "))
}

fn criterion_5(g: &BTreeMap<&str, Golden>) -> Outcome {
    for d in 2..=5u32 {
        let text = format!("gens x:1\nrels x^{d}\n");
        let a = Arc::new(parse_presentation(&text).unwrap());
        let gb = buchberger_truncated(&a, 2 * d, &GbLimits::default()).unwrap();
        let h = ncreg::series::hilbert_rational(&gb).unwrap();
        let expected = StanleyVerdict::Satisfied { sign: 1, ell: -(d as i64 - 1) };
        ensure!(stanley_check(&h) == expected, "k[x]/(x^{d}): {:?}", stanley_check(&h));
    }
    let t = g["T34"].art.rational_hilbert().ok_or("T34 series not rational")?;
    ensure!(stanley_check(t) == StanleyVerdict::Satisfied { sign: -1, ell: 4 }, "T34: {:?}", stanley_check(t));
    let sq = g["k[x,y]/(x^2,xy,y^2)"].art.rational_hilbert().ok_or("series not rational")?;
    ensure!(stanley_check(sq) == StanleyVerdict::Violated, "square-zero plane: {:?}", stanley_check(sq));
    let mut regular = 0;
    for (name, gd) in g.iter().filter(|(_, gd)| is_as_regular(gd)) {
        let (d, ell) = gd.report.as_regular.as_type().unwrap();
        let h = gd.art.rational_hilbert().ok_or(format!("{name}: not rational"))?;
        let sign = if d % 2 == 0 { 1 } else { -1 };
        ensure!(stanley_check(h) == StanleyVerdict::Satisfied { sign, ell }, "{name}: {:?} vs type ({d}, {ell})", stanley_check(h));
        regular += 1;
    }
    Ok(format!(
        "k[x]/(x^d): (+1, l = -(d-1)) for d = 2..5 [h(1/t) = t^l h(t) convention]; T34 (-1, 4); square-zero violated; {regular} regular cases match (-1)^d and Ext index"
    ))
}

fn tensor_case(left: &Golden, right: &Golden, direct_opts: &ReportOptions) -> Result<(String, Vec<String>), String> {
    let p = Arc::new(tensor_product(left.art.presentation(), right.art.presentation()).unwrap());
    let art = artifacts(&p, WINDOW);
    let direct = report_with(&art, direct_opts);
    let kunneth = left.report.tensor(&right.report);
    let name = p.label().to_string();
    let res = inequality_harness(&[HarnessCase::Tensor {
        name: name.clone(),
        left: left.report.clone(),
        right: right.report.clone(),
        direct: Some(direct.clone()),
    }]);
    let mut seen = Vec::new();
    for r in &res {
        ensure!(r.status == CheckStatus::Pass, "{name} {}: {} vs {} ({})", r.check, r.lhs, r.rhs, r.note);
        seen.push(r.check.clone());
    }
    for check in ["torreg_additive", "cmreg_additive", "asreg_additive", "betti_convolution", "hilbert_product"] {
        ensure!(seen.iter().any(|c| c == check), "{name}: {check} not run");
    }
    // explicit convolution comparison on every certified entry
    let conv = left.art.betti().convolve(&right.art.betti());
    let b = art.betti();
    let mut compared = 0;
    for i in 0..=WINDOW.i_max {
        for j in 0..=WINDOW.d_max {
            if b.certified(i, j) {
                ensure!(b.get(i, j) == conv.get(i, j), "{name}: beta_{i},{j} = {} vs {}", b.get(i, j), conv.get(i, j));
                compared += 1;
            }
        }
    }
    let sums = [
        (&kunneth.torreg_k, left.report.torreg_k.exact_value().zip(right.report.torreg_k.exact_value()).map(|(a, b)| a + b)),
        (&kunneth.cmreg, left.report.cmreg.exact_value().zip(right.report.cmreg.exact_value()).map(|(a, b)| a + b)),
        (&kunneth.asreg, left.report.asreg.exact_value().zip(right.report.asreg.exact_value()).map(|(a, b)| a + b)),
    ];
    for (v, s) in sums {
        ensure!(v.exact_value().is_some() && v.exact_value() == s, "{name}: {v} vs {s:?}");
    }
    ensure!(direct.cmreg.exact_value() == kunneth.cmreg.exact_value(), "{name}: direct CMreg {}", direct.cmreg);
    Ok((
        format!(
            "{name}: (Torreg, CMreg, ASreg) = ({}, {}, {}), {compared} Betti entries",
            kunneth.torreg_k, kunneth.cmreg, kunneth.asreg
        ),
        seen,
    ))
}

fn criterion_6(g: &BTreeMap<&str, Golden>) -> Outcome {
    let a2 = &g["k[x]/(x^2)"];
    let (l1, _) = tensor_case(a2, &g["T34"], &cm_asserted(3))?;
    let (l2, _) = tensor_case(a2, a2, &ReportOptions::default())?;
    Ok(format!("{l1}; {l2}"))
}

fn criterion_7(g: &BTreeMap<&str, Golden>) -> Outcome {
    let t = &g["T34"];
    let e = &g["k[x]/(x^2)"];
    let small = Window { i_max: 4, d_max: 6, d_gb: 6 };
    let mut out = Vec::new();
    for (nt, na) in [(1usize, 1usize), (1, 2), (2, 1)] {
        let factors: Vec<&Golden> = std::iter::repeat_n(t, nt).chain(std::iter::repeat_n(e, na)).collect();
        let kunneth = factors[1..].iter().fold((*factors[0].report).clone(), |acc, f| acc.tensor(&f.report));
        let pair = ta_tc_pairs(&kunneth).tc;
        let expected = (nt as i64, na as i64 - nt as i64);
        ensure!((pair.0.exact_value(), pair.1.exact_value()) == (Some(expected.0), Some(expected.1)), "tc = ({}, {})", pair.0, pair.1);
        // the product presentation itself agrees within a window
        let p = factors[1..].iter().fold((**factors[0].art.presentation()).clone(), |acc, f| {
            tensor_product(&acc, f.art.presentation()).unwrap()
        });
        let w = if nt + na > 2 { small } else { WINDOW };
        let art = artifacts(&Arc::new(p), w);
        let direct = report_with(&art, &cm_asserted(3 * nt as i64));
        ensure!(direct.cmreg.exact_value() == Some(expected.1), "direct CMreg {}", direct.cmreg);
        ensure!(direct.torreg_k.lower() == Some(expected.0), "direct Torreg {}", direct.torreg_k);
        let h = art.rational_hilbert().ok_or("direct series not rational")?;
        let hk = match &kunneth.hilbert {
            ncreg::series::HilbertSeries::Rational(r) => r.clone(),
            _ => return Err("Kunneth series not rational".into()),
        };
        ensure!(h.same_function(&hk), "Hilbert series {h} vs {hk}");
        out.push(format!("(t,a)=({nt},{na}): tc = ({}, {})", pair.0, pair.1));
    }
    Ok(out.join("; "))
}

fn criterion_8(g: &BTreeMap<&str, Golden>) -> Outcome {
    let a = &g["k[x,t]/(t^2-x^4)"];
    let k1 = &g["k[x]"];
    let x = parse_poly("x", a.art.presentation()).unwrap();
    let cert = finite_map_check(&k1.art, &[x], &a.art, WINDOW.d_max).unwrap();
    let w = ConcavityWitness::from_map(&k1.report, &cert).map_err(|e| e.to_string())?;
    let c = concavity_certificate(&a.report, &[w]);
    ensure!(c.exact && c.c.exact_value() == Some(0), "c = {}", c.c);
    let v = invariant_ring_obstruction(&a.report, &c, None);
    ensure!(v.beta1 == Some(2), "beta_1 = {:?}", v.beta1);
    ensure!(v.obstructed && v.detail == "obstructed: c = 0 < beta_1 - 1 = 1", "{}", v.detail);
    Ok(v.detail)
}

/// Σ(−1)^i β_{i,j} t^j through degree d.
fn euler_poly(b: &ncreg::resolution::BettiTable, d: i32) -> Vec<i64> {
    let mut p = vec![0i64; d as usize + 1];
    for ((i, j), n) in b.entries() {
        if (0..=d).contains(&j) {
            p[j as usize] += if i % 2 == 0 { n as i64 } else { -(n as i64) };
        }
    }
    p
}

fn random_module(rng: &mut ChaCha8Rng, a: &Arc<AlgebraPresentation>) -> ModulePresentation {
    let field = a.field();
    let n = a.num_gens() as u16;
    let ngens = rng.gen_range(1..=2);
    let gens: Vec<(String, i32)> = (0..ngens).map(|k| (format!("e{k}"), rng.gen_range(0..=2))).collect();
    let words = |len: usize| -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..len {
            out = out.iter().flat_map(|w| (0..n).map(move |g| w.concat(&Word::letter(g, a.weights())))).collect();
        }
        out
    };
    let mut rels = Vec::new();
    for (k, (_, deg)) in gens.iter().enumerate() {
        // kill everything from a random length on, so M is finite-dimensional
        let cut = rng.gen_range(1..=3);
        for w in words(cut) {
            let mut entries = vec![Poly::zero(field); ngens];
            entries[k] = Poly::monomial(field.one(), w.clone());
            rels.push(ModuleRelation { degree: deg + w.degree() as i32, entries });
        }
    }
    // a few random mixed relations
    for _ in 0..rng.gen_range(0..=2) {
        let target = rng.gen_range(1..=3) + gens.iter().map(|g| g.1).max().unwrap();
        let mut entries = vec![Poly::zero(field); ngens];
        for (k, (_, deg)) in gens.iter().enumerate() {
            let len = target - deg;
            if len < 1 {
                continue;
            }
            for w in words(len as usize) {
                let c: i64 = rng.gen_range(-2..=2);
                if c != 0 {
                    entries[k] = entries[k].add(&Poly::monomial(field.from_i64(c), w));
                }
            }
        }
        if entries.iter().any(|p| !p.is_zero()) {
            rels.push(ModuleRelation { degree: target, entries });
        }
    }
    ModulePresentation::new(a.clone(), Side::Left, gens, rels).unwrap()
}

const P: u64 = 101;

fn rank_mod_p(mut rows: Vec<Vec<u64>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, piv);
        let inv = pow_mod(rows[rank][c], P - 2);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % P;
        }
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + P * P - f * y) % P;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

fn all_words(n: u16, len: usize) -> Vec<Vec<u16>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out.iter().flat_map(|w| (0..n).map(move |g| [w.clone(), vec![g]].concat())).collect();
    }
    out
}

fn coords(p: &Poly, index: &BTreeMap<Vec<u16>, usize>) -> Vec<u64> {
    let mut v = vec![0; index.len()];
    for (w, c) in p.terms() {
        let Scalar::Mod(x, _) = c else { panic!("expected F_101") };
        v[index[w.letters()]] = *x;
    }
    v
}

/// Brute-force oracle over F_101: dim A_j from the span of u·r·v, and normal-form checks.
fn gb_oracle(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let n: u16 = rng.gen_range(2..=3);
    let names = ["x", "y", "z"];
    let nrels = rng.gen_range(1..=3);
    let mut rels = Vec::new();
    for _ in 0..nrels {
        let terms: Vec<String> = all_words(n, 2)
            .iter()
            .filter_map(|w| {
                rng.gen_bool(0.5)
                    .then(|| format!("{}*{}*{}", rng.gen_range(1..P), names[w[0] as usize], names[w[1] as usize]))
            })
            .collect();
        if !terms.is_empty() {
            rels.push(terms.join(" + "));
        }
    }
    if rels.is_empty() {
        rels.push("x*y".into());
    }
    let gens: Vec<String> = names[..n as usize].iter().map(|g| format!("{g}:1")).collect();
    let text = format!("field F101\ngens {}\nrels {}\n", gens.join(" "), rels.join(", "));
    let a = Arc::new(parse_presentation(&text).map_err(|e| e.to_string())?);
    let gb = buchberger_truncated(&a, 5, &GbLimits::default()).map_err(|e| e.to_string())?;
    let field = a.field();
    for j in 0..=5usize {
        let words = all_words(n, j);
        let index: BTreeMap<Vec<u16>, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let mut span = Vec::new();
        for r in a.relations() {
            let rd = r.degree().unwrap() as usize;
            if rd > j {
                continue;
            }
            for left in 0..=(j - rd) {
                for u in all_words(n, left) {
                    for v in all_words(n, j - rd - left) {
                        let p = r.mul_word_left(&Word::new(u.clone(), a.weights())).mul_word_right(&Word::new(v, a.weights()));
                        span.push(coords(&p, &index));
                    }
                }
            }
        }
        let ideal_rank = rank_mod_p(span.clone());
        let dim = gb.normal_words(j as u32).map_err(|e| e.to_string())?.words.len();
        ensure!(dim == words.len() - ideal_rank, "{text}: degree {j}: {dim} normal words, oracle {}", words.len() - ideal_rank);
        if j == 0 {
            continue;
        }
        let random = |rng: &mut ChaCha8Rng| {
            let terms: Vec<(Word, Scalar)> = words
                .iter()
                .filter_map(|w| {
                    rng.gen_bool(0.4)
                        .then(|| (Word::new(w.clone(), a.weights()), field.from_i64(rng.gen_range(1..P as i64))))
                })
                .collect();
            Poly::from_terms(field, terms).unwrap()
        };
        let (p, q) = (random(rng), random(rng));
        let (s, t) = (field.from_i64(rng.gen_range(1..P as i64)), field.from_i64(rng.gen_range(1..P as i64)));
        let nf = |x: &Poly| gb.normal_form(x).unwrap();
        let (np, nq) = (nf(&p), nf(&q));
        ensure!(nf(&np) == np, "normal form not idempotent");
        ensure!(nf(&p.scale(&s).add(&q.scale(&t))) == np.scale(&s).add(&nq.scale(&t)), "normal form not linear");
        // p − NF(p) lies in the ideal
        let mut with = span;
        with.push(coords(&p.sub(&np), &index));
        ensure!(rank_mod_p(with) == ideal_rank, "p - NF(p) not in the ideal in degree {j}");
    }
    for r in a.relations() {
        ensure!(nf_zero(&gb, r), "relation does not reduce to zero");
    }
    Ok(())
}

fn nf_zero(gb: &ncreg::gbasis::GroebnerBasis, r: &Poly) -> bool {
    gb.normal_form(r).map(|p| p.is_zero()).unwrap_or(false)
}

fn criterion_9(g: &BTreeMap<&str, Golden>) -> Outcome {
    let mut notes = Vec::new();
    // Euler characteristic: h_A · Σ(−1)^i β_{i,j} t^j = 1
    let mut exact_cases = 0;
    for (name, gd) in g {
        let b = gd.art.betti();
        let bound = if b.terminated() { WINDOW.d_max } else { WINDOW.d_max.min(WINDOW.i_max as i32) };
        let h = gd.art.hilbert().truncated(bound as u32).unwrap();
        let prod = h.mul(&ncreg::series::TruncatedSeries::new(euler_poly(&b, bound)));
        let one: Vec<i64> = (0..=bound).map(|j| i64::from(j == 0)).collect();
        ensure!(prod.coeffs() == one.as_slice(), "{name}: Euler product {prod}");
        if let (true, Some(hr)) = (b.terminated(), gd.art.rational_hilbert()) {
            let p = RationalSeries::from_i64(&euler_poly(&b, WINDOW.d_max), &[]);
            ensure!(hr.mul(&p).same_function(&RationalSeries::from_i64(&[1], &[])), "{name}: Euler identity not exact");
            exact_cases += 1;
        }
    }
    notes.push(format!("Euler identity on {} algebras ({exact_cases} exact)", g.len()));
    // left/right symmetry
    for (name, gd) in g {
        let (l, r) = (gd.art.betti(), gd.art.right_betti().unwrap());
        for i in 0..=WINDOW.i_max {
            ensure!(l.t(i) == r.t(i), "{name}: t_{i} left {:?} right {:?}", l.t(i), r.t(i));
        }
    }
    notes.push("left/right t_i agree".into());
    // Torreg(M) <= deg M + Torreg(k) on random finite-dimensional modules
    let mut rng = ChaCha8Rng::seed_from_u64(20240611);
    let mut checked = 0;
    for base in ["T34", "k[x,y]"] {
        let gd = &g[base];
        let cases: Vec<HarnessCase> = (0..20)
            .map(|k| HarnessCase::FiniteModule {
                name: format!("{base} random {k}"),
                algebra: gd.art.clone(),
                k_report: gd.report.clone(),
                module: random_module(&mut rng, gd.art.presentation()),
            })
            .collect();
        for r in inequality_harness(&cases) {
            if r.check == "torreg_le_degree_plus_torreg_k" {
                ensure!(r.status == CheckStatus::Pass, "{}: {} vs {} ({})", r.case, r.lhs, r.rhs, r.note);
                checked += 1;
            }
        }
    }
    ensure!(checked == 40, "only {checked} module checks ran");
    notes.push("Torreg(M) <= deg M + Torreg(k) on 40 random modules".into());
    // ASreg >= 0
    for (name, gd) in g {
        if let Some(v) = gd.report.asreg.exact_value() {
            ensure!(v >= 0, "{name}: ASreg {v}");
        }
    }
    // strictly increasing t_i on regular algebras
    let mut regular = 0;
    for (name, gd) in g.iter().filter(|(_, gd)| is_as_regular(gd)) {
        let (d, _) = gd.report.as_regular.as_type().unwrap();
        let b = gd.art.betti();
        for i in 0..d {
            ensure!(b.t(i) < b.t(i + 1), "{name}: t_{i} = {:?}, t_{} = {:?}", b.t(i), i + 1, b.t(i + 1));
        }
        regular += 1;
    }
    notes.push(format!("ASreg >= 0; t_i increasing on {regular} regular algebras"));
    for _ in 0..10 {
        gb_oracle(&mut rng)?;
    }
    notes.push("normal forms and dimensions agree with brute force on 10 presentations over F101".into());
    Ok(notes.join("; "))
}

fn criterion_10(g: &BTreeMap<&str, Golden>) -> Outcome {
    let mut counts = [0usize; 3];
    // ASreg = 0 exactly for AS regular algebras
    for (name, gd) in g {
        let r = &gd.report;
        if let Some(v) = r.asreg.exact_value() {
            if r.as_regular.is_yes() || r.as_regular.is_no() {
                ensure!((v == 0) == r.as_regular.is_yes(), "{name}: ASreg {v} vs {:?}", r.as_regular);
                counts[0] += 1;
            }
        }
    }
    // concavity of regular algebras and monotonicity along finite maps
    let identity_c = |gd: &Golden| -> Result<i64, String> {
        let w = ConcavityWitness::identity(&gd.report).map_err(|e| e.to_string())?;
        let c = concavity_certificate(&gd.report, &[w]);
        ensure!(c.exact, "identity witness not exact");
        Ok(c.c.exact_value().unwrap())
    };
    for (name, gd) in g.iter().filter(|(_, gd)| is_as_regular(gd)) {
        let c = identity_c(gd)?;
        ensure!(c == -gd.report.cmreg.exact_value().unwrap(), "{name}: c = {c}, CMreg {}", gd.report.cmreg);
        match &gd.report.koszul {
            KoszulVerdict::Yes { .. } => ensure!(c == 0, "{name}: Koszul but c = {c}"),
            KoszulVerdict::No { .. } => ensure!(c > 0, "{name}: not Koszul but c = {c}"),
            KoszulVerdict::UnknownToBound { .. } => {}
        }
        counts[1] += 1;
    }
    let ku = Arc::new(parse_presentation("label k[u]\ngens u:2\n").unwrap());
    let ku = Golden { art: artifacts(&ku, WINDOW), report: report(&artifacts(&ku, WINDOW)) };
    let maps: [(&Golden, &Golden, Option<&str>); 4] = [
        (&g["T34"], &g["T34/(xy-yx)"], None),
        (&g["T34"], &g["T34"], None),
        (&g["k[x,y]"], &g["k[x,y]"], None),
        (&ku, &g["k[x]"], Some("x^2")),
    ];
    for (t, s, img) in maps {
        let images = match img {
            Some(src) => vec![parse_poly(src, s.art.presentation()).unwrap()],
            None => t.art.presentation().names().iter().map(|n| parse_poly(n, s.art.presentation()).unwrap()).collect(),
        };
        let cert = finite_map_check(&t.art, &images, &s.art, WINDOW.d_max).unwrap();
        ensure!(cert.is_finite(), "{} -> {} not finite", cert.source, cert.target);
        let (ct, cs) = (identity_c(t)?, identity_c(s)?);
        ensure!(ct >= cs && cs >= 0, "{} -> {}: c {ct} vs {cs}", cert.source, cert.target);
        if ct == cs {
            ensure!(cert.is_surjective(), "{} -> {}: equal concavity but not surjective", cert.source, cert.target);
        }
        counts[1] += 1;
    }
    // normalized concavity
    let witness_for: [(&str, &str, &str); 3] =
        [("T34/(x^2)", "T34", "x,y"), ("k[x,t]/(t^2-x^4)", "k[x]", "x"), ("k[x,y,t]/(t^2-x^4-y^4)", "k[x,y]", "x,y")];
    for (name, gd) in g {
        let witnesses = if is_as_regular(gd) {
            vec![ConcavityWitness::identity(&gd.report).unwrap()]
        } else if let Some((_, t, imgs)) = witness_for.iter().find(|(n, _, _)| n == name) {
            let t = &g[t];
            let images: Vec<Poly> = imgs.split(',').map(|s| parse_poly(s, gd.art.presentation()).unwrap()).collect();
            let cert = finite_map_check(&t.art, &images, &gd.art, WINDOW.d_max).unwrap();
            vec![ConcavityWitness::from_map(&t.report, &cert).map_err(|e| e.to_string())?]
        } else {
            continue;
        };
        let c = concavity_certificate(&gd.report, &witnesses);
        if let Some(v) = c.c_minus.exact_value() {
            ensure!(v >= 0, "{name}: c_- = {v}");
            ensure!((v == 0) == is_as_regular(gd), "{name}: c_- = {v}, regular {}", is_as_regular(gd));
            counts[2] += 1;
        }
    }
    ensure!(counts.iter().all(|&c| c > 0), "a statement was never exercised: {counts:?}");
    Ok(format!(
        "ASreg/regularity equivalence on {} cases, concavity statements on {} cases, normalized concavity on {} cases; 0 counterexamples",
        counts[0], counts[1], counts[2]
    ))
}

#[test]
fn acceptance_criteria() {
    let g = goldens();
    let criteria: [(usize, &str, &str, Criterion); 10] = [
        (1, TOLERANCE, "truncated polynomial Tor degrees, square-zero Koszul, ASreg of tensor powers", criterion_1),
        (2, TOLERANCE, "type (3,4) regular algebra", criterion_2),
        (3, TOLERANCE, "quotients of the type (3,4) algebra", criterion_3),
        (4, TOLERANCE, "CMreg shift along normal regular quotients", criterion_4),
        (5, TOLERANCE, "Hilbert series functional equation", criterion_5),
        (6, TOLERANCE, "tensor additivity", criterion_6),
        (7, TOLERANCE_DIRECT, "realized (Torreg, CMreg) pairs", criterion_7),
        (8, TOLERANCE, "invariant-ring obstruction", criterion_8),
        (9, TOLERANCE, "property suites", criterion_9),
        (10, TOLERANCE, "regularity, concavity and normalized concavity statements", criterion_10),
    ];
    let mut failed = Vec::new();
    let mut err = std::io::stderr();
    for (n, tolerance, title, f) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(|| f(&g))).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let line = match &outcome {
            Ok(detail) => format!("criterion {n:>2} PASS [{tolerance}] {title}: {detail}"),
            Err(why) => {
                failed.push(n);
                format!("criterion {n:>2} FAIL [{tolerance}] {title}: {why}")
            }
        };
        let _ = writeln!(err, "{line}");
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
