use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use super::{AlgebraArtifacts, Assertion, BoundKind, BoundedValue, RegularityError, Window};
use crate::gbasis::GroebnerBasis;
use crate::resolution::{BettiTable, ExtTable, Resolution};
use crate::series::{stanley_check, HilbertSeries, RationalSeries, StanleyVerdict};

pub const SCHEMA: &str = "ncreg-report/1";

/// sup (j − i) over the certified nonzero Betti numbers.
pub fn tor_regularity(b: &BettiTable) -> BoundedValue {
    let best = b
        .entries()
        .filter(|&((i, j), n)| n > 0 && b.certified(i, j))
        .map(|((i, j), _)| j as i64 - i as i64)
        .max();
    let Some(v) = best else {
        return BoundedValue::unknown("no nonzero Betti numbers in the window");
    };
    match b.length() {
        Some(l) => BoundedValue::exact(v, format!("resolution terminated at step {l}")),
        None => BoundedValue::at_least(
            v,
            format!("max j - i over steps 0..{} with j <= {}", b.steps_known().saturating_sub(1), b.d_max()),
        ),
    }
}

/// Annotation for windows where t_i − i keeps growing; never promoted to a value.
pub fn growth_note(b: &BettiTable) -> Option<String> {
    if b.terminated() {
        return None;
    }
    let diffs: Vec<i64> = (0..b.steps_known()).filter_map(|i| b.t(i).map(|t| t as i64 - i as i64)).collect();
    if diffs.len() < 3 || diffs.windows(2).any(|w| w[1] < w[0]) || diffs.last() <= diffs.first() {
        return None;
    }
    Some(format!("t_i - i nondecreasing and increasing across the window: {diffs:?}"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum KoszulVerdict {
    Yes { certificate: String },
    No { i: usize, j: i32 },
    UnknownToBound { reason: String },
}

impl KoszulVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, KoszulVerdict::Yes { .. })
    }

    pub fn is_no(&self) -> bool {
        matches!(self, KoszulVerdict::No { .. })
    }
}

/// Linearity of the resolution of k read off its Betti table.
pub fn koszul_verdict(b: &BettiTable) -> KoszulVerdict {
    if let Some(((i, j), _)) = b.entries().find(|&((i, j), n)| n > 0 && j != i as i32 && b.certified(i, j)) {
        return KoszulVerdict::No { i, j };
    }
    if let Some(l) = b.length() {
        return KoszulVerdict::Yes { certificate: format!("linear resolution, terminated at step {l}") };
    }
    if b.steps_known() > b.i_max() {
        return KoszulVerdict::Yes {
            certificate: format!("linear through the window i <= {}, j <= {} only", b.i_max(), b.d_max()),
        };
    }
    KoszulVerdict::UnknownToBound { reason: "resolution stopped early without a termination certificate".into() }
}

/// A complete Gröbner basis of quadrics over degree-one generators: the algebra is Koszul.
pub fn pbw_certificate(gb: &GroebnerBasis) -> bool {
    let a = gb.presentation();
    gb.is_complete()
        && a.weights().iter().all(|&w| w == 1)
        && gb.elements().iter().all(|p| p.degree() == Some(2))
}

/// Evidence selecting the CM-regularity formula that applies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum CMEvidence {
    /// CMreg = top degree of the (finite-dimensional) algebra or module.
    FiniteDimensional,
    /// AS regular of type (d, ℓ): CMreg = d − ℓ.
    AsRegular { d: usize, ell: i64 },
    /// Asserted s-Cohen–Macaulay with rational h: CMreg = s + deg h.
    CohenMacaulayAsserted { s: i64 },
    /// Quotient by a normal regular element of degree a: CMreg = parent + a − 1.
    NormalQuotient { parent_cmreg: i64, a: u32 },
    /// Tensor product: CMreg is the sum over the factors.
    TensorProduct { factors: Vec<i64> },
}

impl CMEvidence {
    pub fn assertions(&self) -> Vec<Assertion> {
        match self {
            CMEvidence::CohenMacaulayAsserted { s } => vec![Assertion::CohenMacaulay { s: *s }, Assertion::Noetherian],
            CMEvidence::NormalQuotient { .. } => vec![Assertion::Noetherian],
            CMEvidence::TensorProduct { .. } => vec![Assertion::TensorNoetherian],
            _ => Vec::new(),
        }
    }
}

fn finite_dimensional_top(h: &RationalSeries) -> Option<i64> {
    let (p, q) = h.reduced();
    (q.deg() == 0).then(|| p.deg())
}

/// The value of the evidence case's formula, after checking it against the artifacts.
pub fn cm_regularity(art: &AlgebraArtifacts, evidence: &CMEvidence) -> Result<BoundedValue, RegularityError> {
    let as_type = as_regular_certificate(art.resolution(), art.ext());
    cm_from_series(art.hilbert(), as_type, evidence)
}

pub(crate) fn cm_from_series(
    h: &HilbertSeries,
    as_type: Option<(usize, i64)>,
    evidence: &CMEvidence,
) -> Result<BoundedValue, RegularityError> {
    let bad = |s: String| Err(RegularityError::InconsistentEvidence(s));
    match evidence {
        CMEvidence::FiniteDimensional => {
            let HilbertSeries::Rational(r) = h else {
                return Ok(BoundedValue::unknown("finite dimension not certified: Gröbner basis incomplete"));
            };
            match finite_dimensional_top(r) {
                Some(top) => Ok(BoundedValue::exact(top, "finite-dimensional: top nonzero degree")),
                None => bad(format!("asserted finite-dimensional but h = {r} does not vanish eventually")),
            }
        }
        CMEvidence::AsRegular { d, ell } => {
            match as_type {
                Some(t) if t == (*d, *ell) => {}
                Some(t) => return bad(format!("asserted type ({d}, {ell}) but the computed type is {t:?}")),
                None => return bad("no terminated resolution with concentrated Ext certifies AS regularity".into()),
            }
            if let HilbertSeries::Rational(r) = h {
                let sign = if d % 2 == 0 { 1 } else { -1 };
                if stanley_check(r) != (StanleyVerdict::Satisfied { sign, ell: *ell }) {
                    return bad(format!("h = {r} does not satisfy the functional equation of type ({d}, {ell})"));
                }
            }
            Ok(BoundedValue::exact(*d as i64 - ell, format!("AS regular of type ({d}, {ell}): d - l")))
        }
        CMEvidence::CohenMacaulayAsserted { s } => {
            let HilbertSeries::Rational(r) = h else {
                return Err(RegularityError::NotRational);
            };
            Ok(BoundedValue::exact(s + r.degree(), format!("asserted {s}-Cohen-Macaulay: s + deg h = {s} + ({})", r.degree())))
        }
        CMEvidence::NormalQuotient { parent_cmreg, a } => Ok(BoundedValue::exact(
            parent_cmreg + *a as i64 - 1,
            format!("quotient by a normal regular element of degree {a}: {parent_cmreg} + {a} - 1"),
        )),
        CMEvidence::TensorProduct { factors } => {
            Ok(BoundedValue::exact(factors.iter().sum(), format!("sum over tensor factors {factors:?}")))
        }
    }
}

pub fn as_regularity(torreg_k: &BoundedValue, cmreg: &BoundedValue) -> BoundedValue {
    let mut v = torreg_k.add(cmreg);
    v.provenance = format!("Torreg(k) + CMreg: {}", v.provenance);
    v
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum AsRegularVerdict {
    Yes { d: usize, ell: i64, certificate: String },
    No { reason: String },
    UnknownToBound { reason: String },
}

impl AsRegularVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, AsRegularVerdict::Yes { .. })
    }

    pub fn is_no(&self) -> bool {
        matches!(self, AsRegularVerdict::No { .. })
    }

    pub fn as_type(&self) -> Option<(usize, i64)> {
        match self {
            AsRegularVerdict::Yes { d, ell, .. } => Some((*d, *ell)),
            _ => None,
        }
    }
}

/// (d, ℓ) when k has a terminated resolution of length d and Ext(k, A) is k(ℓ) in homological
/// degree d, zero below, over the certified ranges.
pub fn as_regular_certificate(res: &Resolution, ext: &ExtTable) -> Option<(usize, i64)> {
    let d = res.length()?;
    for i in 0..=d {
        if !ext.range(i)?.certified {
            return None;
        }
    }
    if (0..d).any(|i| ext.total(i) != 0) {
        return None;
    }
    let top: Vec<((usize, i32), usize)> = ext.nonzero().filter(|&((i, _), _)| i == d).collect();
    match top.as_slice() {
        [((_, n), 1)] => Some((d, -(*n as i64))),
        _ => None,
    }
}

/// Yes from the Ext certificate; No when ASreg is provably positive or Ext(k, A) is certified
/// nonzero in two homological degrees.
pub fn as_regular_verdict(art: &AlgebraArtifacts, asreg: &BoundedValue) -> AsRegularVerdict {
    as_verdict_from(art.resolution(), art.ext(), asreg)
}

fn as_verdict_from(res: &Resolution, ext: &ExtTable, asreg: &BoundedValue) -> AsRegularVerdict {
    if let Some((d, ell)) = as_regular_certificate(res, ext) {
        return AsRegularVerdict::Yes {
            d,
            ell,
            certificate: format!(
                "k has a free resolution of length {d}; Ext^i(k, A) = 0 for i < {d} and Ext^{d}(k, A) = k({ell}) in the certified range"
            ),
        };
    }
    if let Some(v) = asreg.lower().filter(|&v| v > 0) {
        let rel = if asreg.is_exact() { "=" } else { ">=" };
        return AsRegularVerdict::No {
            reason: format!("ASreg {rel} {v} > 0, and ASreg = 0 characterizes AS regularity (assuming a balanced dualizing complex)"),
        };
    }
    let degrees: BTreeSet<usize> = ext
        .nonzero()
        .filter(|&((i, _), n)| n > 0 && ext.range(i).is_some_and(|r| r.certified))
        .map(|((i, _), _)| i)
        .collect();
    if degrees.len() > 1 {
        return AsRegularVerdict::No {
            reason: format!("Ext(k, A) is nonzero in homological degrees {degrees:?}, so A is not AS Gorenstein"),
        };
    }
    AsRegularVerdict::UnknownToBound {
        reason: if res.terminated() {
            "resolution terminated but Ext(k, A) is not certified one-dimensional".into()
        } else {
            "no termination inside the window and ASreg not provably positive".into()
        },
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertCriterion {
    pub s: i64,
    pub deg_h: i64,
    pub holds: bool,
    pub conclusion: String,
    /// The algebra is provably not Koszul although the criterion holds, so no noetherian Koszul
    /// AS regular algebra can map finitely onto it.
    pub witness_hypothesis_refuted: bool,
    pub assertions: Vec<Assertion>,
}

/// Checks deg h_A = −s under asserted s-Cohen–Macaulayness and a finite map from a Koszul
/// AS regular algebra.
pub fn hilbert_criterion(art: &AlgebraArtifacts, s: i64, koszul: &KoszulVerdict) -> Result<HilbertCriterion, RegularityError> {
    let h = art.rational_hilbert().ok_or(RegularityError::NotRational)?;
    let deg_h = h.degree();
    let holds = deg_h == -s;
    let refuted = holds && koszul.is_no();
    let conclusion = if refuted {
        format!("deg h = {deg_h} = -s, but A is not Koszul: the finite-map-from-Koszul-AS-regular hypothesis fails for every witness, and the equivalence does not hold without it")
    } else if holds {
        format!("deg h = {deg_h} = -s: AS regular and Koszul under the recorded assertions")
    } else {
        format!("deg h = {deg_h} != -s = {}: not AS regular", -s)
    };
    Ok(HilbertCriterion {
        s,
        deg_h,
        holds,
        conclusion,
        witness_hypothesis_refuted: refuted,
        assertions: vec![Assertion::CohenMacaulay { s }, Assertion::Noetherian, Assertion::KoszulRegularWitness],
    })
}

/// An upper bound on Torreg(k) proved outside the window, e.g. by passing to a quotient by a
/// normal regular element of degree at most two.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorregUpper {
    pub value: i64,
    pub source: String,
}

#[derive(Clone, Debug, Default)]
pub struct ReportOptions {
    pub evidence: Option<CMEvidence>,
    pub torreg_upper: Option<TorregUpper>,
    pub assertions: BTreeSet<Assertion>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantCheck {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    pub label: String,
    pub window: Window,
    pub torreg_k: BoundedValue,
    pub koszul: KoszulVerdict,
    pub cmreg: BoundedValue,
    pub cm_evidence: Option<CMEvidence>,
    pub asreg: BoundedValue,
    pub as_regular: AsRegularVerdict,
    pub gldim: BoundedValue,
    pub as_index: BoundedValue,
    pub extreg_note: String,
    pub growth: Option<String>,
    pub hilbert_degree: Option<i64>,
    pub stanley: Option<StanleyVerdict>,
    #[serde(skip)]
    pub betti: BettiTable,
    #[serde(skip)]
    pub hilbert: HilbertSeries,
    pub assertions: BTreeSet<Assertion>,
}

const EXTREG_NOTE: &str = "Ext-regularity equals Torreg for finitely generated modules";

impl RegularityReport {
    pub fn build(art: &AlgebraArtifacts, opts: &ReportOptions) -> Result<RegularityReport, RegularityError> {
        let betti = art.betti();
        let mut torreg = tor_regularity(&betti);
        let mut koszul = koszul_verdict(&betti);
        if pbw_certificate(art.gb()) {
            if let KoszulVerdict::No { i, j } = koszul {
                return Err(RegularityError::InconsistentEvidence(format!(
                    "quadratic Gröbner basis but beta_({i},{j}) is nonzero"
                )));
            }
            koszul = KoszulVerdict::Yes { certificate: "quadratic Gröbner basis over degree-one generators".into() };
            if !torreg.is_exact() {
                torreg = BoundedValue::exact(0, "Koszul: quadratic Gröbner basis");
            }
        }
        if let Some(up) = &opts.torreg_upper {
            torreg = torreg.refine_upper(up.value, &up.source).map_err(RegularityError::InconsistentEvidence)?;
        }
        let mut assertions = opts.assertions.clone();
        let as_type = as_regular_certificate(art.resolution(), art.ext());
        let evidence = opts.evidence.clone().or_else(|| {
            if let Some((d, ell)) = as_type {
                return Some(CMEvidence::AsRegular { d, ell });
            }
            if art.rational_hilbert().and_then(finite_dimensional_top).is_some() {
                return Some(CMEvidence::FiniteDimensional);
            }
            assertions.iter().find_map(|a| match a {
                Assertion::CohenMacaulay { s } => Some(CMEvidence::CohenMacaulayAsserted { s: *s }),
                _ => None,
            })
        });
        let cmreg = match &evidence {
            Some(ev) => {
                assertions.extend(ev.assertions());
                cm_from_series(art.hilbert(), as_type, ev)?
            }
            None => BoundedValue::unknown("no CM-regularity evidence case applies"),
        };
        let asreg = as_regularity(&torreg, &cmreg);
        let as_regular = as_verdict_from(art.resolution(), art.ext(), &asreg);
        if as_regular.is_no() && asreg.lower().is_some_and(|v| v > 0) {
            assertions.insert(Assertion::BalancedDualizingComplex);
        }
        let gldim = match betti.length() {
            Some(l) => BoundedValue::exact(l as i64, "terminated resolution of k"),
            None => {
                let last = (0..betti.steps_known()).filter(|&i| betti.total(i) > 0).max().unwrap_or(0);
                BoundedValue::at_least(last as i64, format!("nonzero step {last} in the window"))
            }
        };
        let as_index = match &as_regular {
            AsRegularVerdict::Yes { ell, .. } => BoundedValue::exact(*ell, "Ext^d(k, A) = k(l)"),
            _ => BoundedValue::unknown("A not certified AS regular"),
        };
        let rational = art.rational_hilbert();
        Ok(RegularityReport {
            label: art.label().to_string(),
            window: art.window(),
            growth: growth_note(&betti),
            torreg_k: torreg,
            koszul,
            cmreg,
            cm_evidence: evidence,
            asreg,
            as_regular,
            gldim,
            as_index,
            extreg_note: EXTREG_NOTE.into(),
            hilbert_degree: rational.map(RationalSeries::degree),
            stanley: rational.map(stanley_check),
            betti,
            hilbert: art.hilbert().clone(),
            assertions,
        })
    }

    /// The report of A ⊗ B from the factors: Torreg, CMreg and ASreg add, Betti tables convolve,
    /// Hilbert series multiply.
    pub fn tensor(&self, o: &RegularityReport) -> RegularityReport {
        let label = format!("{} (x) {}", self.label, o.label);
        let torreg_k = self.torreg_k.add(&o.torreg_k).with_provenance(format!(
            "additive over tensor factors: {} + {}",
            self.torreg_k, o.torreg_k
        ));
        let (cmreg, cm_evidence) = match (self.cmreg.exact_value(), o.cmreg.exact_value()) {
            (Some(a), Some(b)) => (
                BoundedValue::exact(a + b, format!("additive over tensor factors: {a} + {b}")),
                Some(CMEvidence::TensorProduct { factors: vec![a, b] }),
            ),
            _ => (BoundedValue::unknown("a factor has no exact CM-regularity"), None),
        };
        let asreg = as_regularity(&torreg_k, &cmreg);
        let koszul = match (&self.koszul, &o.koszul) {
            (KoszulVerdict::No { i, j }, _) | (_, KoszulVerdict::No { i, j }) => KoszulVerdict::No { i: *i, j: *j },
            (KoszulVerdict::Yes { certificate: a }, KoszulVerdict::Yes { certificate: b }) => {
                KoszulVerdict::Yes { certificate: format!("both factors Koszul ({a}; {b})") }
            }
            _ => KoszulVerdict::UnknownToBound { reason: "a factor is undecided".into() },
        };
        let as_regular = match (self.as_regular.as_type(), o.as_regular.as_type()) {
            (Some((d1, l1)), Some((d2, l2))) => AsRegularVerdict::Yes {
                d: d1 + d2,
                ell: l1 + l2,
                certificate: "tensor product of AS regular algebras".into(),
            },
            _ if asreg.lower().is_some_and(|v| v > 0) => {
                AsRegularVerdict::No { reason: format!("ASreg {asreg} > 0") }
            }
            _ => AsRegularVerdict::UnknownToBound { reason: "a factor is not certified AS regular".into() },
        };
        let as_index = match &as_regular {
            AsRegularVerdict::Yes { ell, .. } => BoundedValue::exact(*ell, "sum of the factors' indices"),
            _ => BoundedValue::unknown("not certified AS regular"),
        };
        let hilbert = crate::series::series_product(&self.hilbert, &o.hilbert).expect("factor series multiply");
        let rational = match &hilbert {
            HilbertSeries::Rational(r) => Some(r.clone()),
            HilbertSeries::Truncated(_) => None,
        };
        let betti = self.betti.convolve(&o.betti);
        let mut assertions: BTreeSet<Assertion> = self.assertions.union(&o.assertions).cloned().collect();
        assertions.insert(Assertion::TensorNoetherian);
        RegularityReport {
            label,
            window: self.window,
            torreg_k,
            koszul,
            cmreg,
            cm_evidence,
            asreg,
            as_regular,
            gldim: self.gldim.add(&o.gldim),
            as_index,
            extreg_note: EXTREG_NOTE.into(),
            growth: growth_note(&betti),
            hilbert_degree: rational.as_ref().map(RationalSeries::degree),
            stanley: rational.as_ref().map(stanley_check),
            betti,
            hilbert,
            assertions,
        }
    }

    /// Consistency conditions every report must satisfy.
    pub fn invariant_checks(&self) -> Vec<InvariantCheck> {
        let mut out = Vec::new();
        let mut push = |name: &str, holds: bool, detail: String| {
            out.push(InvariantCheck { name: name.into(), holds, detail })
        };
        if let (Some(t), Some(c), Some(a)) =
            (self.torreg_k.exact_value(), self.cmreg.exact_value(), self.asreg.exact_value())
        {
            push("asreg_is_sum", a == t + c, format!("{a} = {t} + {c}"));
            push("asreg_nonnegative", a >= 0, format!("ASreg = {a}"));
            push("tc_constraint", c >= -t, format!("CMreg {c} >= -Torreg {}", -t));
        }
        if let Some(r) = self.torreg_k.lower() {
            let b = &self.betti;
            let bad: Vec<usize> = (0..b.steps_known()).filter(|&i| b.t(i).is_some_and(|t| t as i64 > r + i as i64)).collect();
            if self.torreg_k.is_exact() {
                push("t_i_bounded_by_torreg", bad.is_empty(), format!("t_i <= {r} + i; violations at {bad:?}"));
            }
        }
        if let AsRegularVerdict::Yes { d, ell, .. } = &self.as_regular {
            let (d, ell) = (*d as i64, *ell);
            if let Some(t) = self.torreg_k.exact_value() {
                push("regular_torreg_is_l_minus_d", t == ell - d, format!("Torreg {t} = {ell} - {d}"));
            }
            if let Some(c) = self.cmreg.exact_value() {
                push("regular_cmreg_is_d_minus_l", c == d - ell, format!("CMreg {c} = {d} - {ell}"));
            }
            if let Some(a) = self.asreg.exact_value() {
                push("regular_asreg_zero", a == 0, format!("ASreg = {a}"));
            }
            if let Some(s) = &self.stanley {
                let sign = if d % 2 == 0 { 1 } else { -1 };
                push(
                    "regular_functional_equation",
                    *s == (StanleyVerdict::Satisfied { sign, ell }),
                    format!("{s:?} vs sign {sign}, l = {ell}"),
                );
            }
            let ts: Vec<Option<i32>> = (0..=d as usize).map(|i| self.betti.t(i)).collect();
            let increasing = ts.windows(2).all(|w| matches!((w[0], w[1]), (Some(a), Some(b)) if b > a));
            push("regular_t_i_increasing", increasing, format!("t_i = {ts:?}"));
        }
        if let (Some(a), true) = (self.asreg.exact_value(), self.as_regular.is_yes() || self.as_regular.is_no()) {
            // ASreg = 0 exactly for AS regular algebras
            push("asreg_zero_iff_regular", (a == 0) == self.as_regular.is_yes(), format!("ASreg = {a}, verdict {:?}", self.as_regular));
        }
        out
    }

    pub fn records(&self) -> Vec<Record> {
        let assertions: Vec<String> = self.assertions.iter().map(|a| a.to_string()).collect();
        let ev = |s: &str| serde_json::Value::String(s.to_string());
        let mut out = Vec::new();
        let mut push_bv = |name: &str, v: &BoundedValue, evidence: serde_json::Value| {
            out.push(Record {
                schema: SCHEMA,
                algebra: self.label.clone(),
                invariant: name.to_string(),
                kind: v.kind,
                value: v.value.map_or(serde_json::Value::Null, Into::into),
                window: self.window,
                evidence,
                assertions: assertions.clone(),
            });
        };
        push_bv("torreg_k", &self.torreg_k, ev(&self.torreg_k.provenance));
        let cm_ev = match &self.cm_evidence {
            Some(e) => serde_json::json!({"case": e, "detail": self.cmreg.provenance}),
            None => ev(&self.cmreg.provenance),
        };
        push_bv("cmreg", &self.cmreg, cm_ev);
        push_bv("asreg", &self.asreg, ev(&self.asreg.provenance));
        push_bv("gldim", &self.gldim, ev(&self.gldim.provenance));
        push_bv("as_index", &self.as_index, ev(&self.as_index.provenance));
        let pairs = ta_tc_pairs(self);
        let verdicts = [
            ("koszul", serde_json::to_value(&self.koszul).unwrap()),
            ("as_regular", serde_json::to_value(&self.as_regular).unwrap()),
            ("ta_pair", serde_json::json!([pairs.ta.0, pairs.ta.1])),
            ("tc_pair", serde_json::json!([pairs.tc.0, pairs.tc.1, {"constraint_ok": pairs.tc_constraint_ok}])),
        ];
        let mut out2 = out;
        for (name, value) in verdicts {
            let kind = match name {
                "koszul" if !self.koszul.is_yes() && !self.koszul.is_no() => BoundKind::Unknown,
                "as_regular" if !self.as_regular.is_yes() && !self.as_regular.is_no() => BoundKind::Unknown,
                "ta_pair" | "tc_pair" => {
                    let pair = if name == "ta_pair" { &pairs.ta } else { &pairs.tc };
                    match (pair.0.kind, pair.1.kind) {
                        (BoundKind::Exact, BoundKind::Exact) => BoundKind::Exact,
                        (BoundKind::Unknown, _) | (_, BoundKind::Unknown) => BoundKind::Unknown,
                        _ => BoundKind::AtLeast,
                    }
                }
                _ => BoundKind::Exact,
            };
            out2.push(Record {
                schema: SCHEMA,
                algebra: self.label.clone(),
                invariant: name.into(),
                kind,
                value,
                window: self.window,
                evidence: ev(self.growth.as_deref().unwrap_or("")),
                assertions: assertions.clone(),
            });
        }
        if let HilbertSeries::Rational(r) = &self.hilbert {
            out2.push(Record {
                schema: SCHEMA,
                algebra: self.label.clone(),
                invariant: "hilbert_series".into(),
                kind: BoundKind::Exact,
                value: r.record(),
                window: self.window,
                evidence: ev("normal-word automaton of a complete Gröbner basis"),
                assertions: assertions.clone(),
            });
        }
        out2
    }

    /// Human-readable table.
    pub fn summary(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "algebra     {}", self.label);
        let _ = writeln!(s, "window      {}", self.window);
        let rows: [(&str, &BoundedValue); 5] = [
            ("Torreg(k)", &self.torreg_k),
            ("CMreg", &self.cmreg),
            ("ASreg", &self.asreg),
            ("gldim", &self.gldim),
            ("AS index", &self.as_index),
        ];
        for (name, v) in rows {
            let _ = writeln!(s, "{name:<11} {:<8} {:?}  [{}]", v.to_string(), v.kind, v.provenance);
        }
        let _ = writeln!(s, "Koszul      {}", verdict_text(&serde_json::to_value(&self.koszul).unwrap()));
        let _ = writeln!(s, "AS regular  {}", verdict_text(&serde_json::to_value(&self.as_regular).unwrap()));
        let p = ta_tc_pairs(self);
        let _ = writeln!(s, "ta pair     ({}, {})", p.ta.0, p.ta.1);
        let _ = writeln!(s, "tc pair     ({}, {})", p.tc.0, p.tc.1);
        if let Some(g) = &self.growth {
            let _ = writeln!(s, "growth      {g}");
        }
        let _ = writeln!(s, "note        {}", self.extreg_note);
        if !self.assertions.is_empty() {
            let a: Vec<String> = self.assertions.iter().map(|a| a.to_string()).collect();
            let _ = writeln!(s, "assumes     {}", a.join("; "));
        }
        s
    }
}

/// Renders a tagged verdict as `name key=value ...`.
pub fn verdict_text(v: &serde_json::Value) -> String {
    let obj = v.as_object().expect("tagged verdict");
    let mut s = obj["verdict"].as_str().unwrap_or("").to_string();
    for (k, x) in obj {
        if k != "verdict" {
            let _ = write!(s, " {k}={}", x.as_str().map(str::to_string).unwrap_or_else(|| x.to_string()));
        }
    }
    s
}

/// One machine-readable line of a report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub schema: &'static str,
    pub algebra: String,
    pub invariant: String,
    pub kind: BoundKind,
    pub value: serde_json::Value,
    pub window: Window,
    pub evidence: serde_json::Value,
    pub assertions: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub ta: (BoundedValue, BoundedValue),
    pub tc: (BoundedValue, BoundedValue),
    /// CMreg ≥ −Torreg(k), checked when both are exact.
    pub tc_constraint_ok: Option<bool>,
}

/// (Torreg(k), ASreg) and (Torreg(k), CMreg).
pub fn ta_tc_pairs(r: &RegularityReport) -> PairReport {
    let ok = match (r.torreg_k.exact_value(), r.cmreg.exact_value()) {
        (Some(t), Some(c)) => Some(c >= -t),
        _ => None,
    };
    PairReport {
        ta: (r.torreg_k.clone(), r.asreg.clone()),
        tc: (r.torreg_k.clone(), r.cmreg.clone()),
        tc_constraint_ok: ok,
    }
}
