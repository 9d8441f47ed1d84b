use std::collections::BTreeSet;

use serde::Serialize;

use super::{Assertion, BoundedValue, RegularityError, RegularityReport};
use crate::constructions::FiniteMapCertificate;

/// An AS regular algebra T with a certified finite map T → A.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConcavityWitness {
    pub label: String,
    /// −CMreg(T).
    pub value: i64,
    pub identity: bool,
    pub map: Option<String>,
}

impl ConcavityWitness {
    /// A itself through the identity; A must be certified AS regular.
    pub fn identity(report: &RegularityReport) -> Result<ConcavityWitness, RegularityError> {
        let c = regular_cmreg(report)?;
        Ok(ConcavityWitness { label: report.label.clone(), value: -c, identity: true, map: Some("identity".into()) })
    }

    pub fn from_map(t: &RegularityReport, cert: &FiniteMapCertificate) -> Result<ConcavityWitness, RegularityError> {
        let c = regular_cmreg(t)?;
        if !cert.is_finite() {
            return Err(RegularityError::Witness(format!(
                "map {} -> {} is not certified finite ({:?})",
                cert.source, cert.target, cert.verdict
            )));
        }
        Ok(ConcavityWitness {
            label: t.label.clone(),
            value: -c,
            identity: false,
            map: Some(format!("{} -> {}: [{}]", cert.source, cert.target, cert.images.join(", "))),
        })
    }
}

fn regular_cmreg(r: &RegularityReport) -> Result<i64, RegularityError> {
    if !r.as_regular.is_yes() {
        return Err(RegularityError::Witness(format!("{} is not certified AS regular", r.label)));
    }
    r.cmreg.exact_value().ok_or_else(|| RegularityError::Witness(format!("{} has no exact CM-regularity", r.label)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConcavityBound {
    /// min over witnesses of −CMreg(T).
    pub upper: Option<i64>,
    pub witness: Option<ConcavityWitness>,
    pub exact: bool,
    pub c: BoundedValue,
    pub c_minus: BoundedValue,
    pub reason: String,
    pub assertions: BTreeSet<Assertion>,
}

/// Bounds c(A) from above by the witnesses and decides exactness where a lower bound is known:
/// c ≥ 0 always, c = −CMreg(A) for AS regular A, and c_− ≥ 0 with equality only for AS
/// regular A.
pub fn concavity_certificate(a: &RegularityReport, witnesses: &[ConcavityWitness]) -> ConcavityBound {
    let best = witnesses.iter().min_by_key(|w| w.value).cloned();
    let upper = best.as_ref().map(|w| w.value);
    let cm = a.cmreg.exact_value();
    let mut assertions: BTreeSet<Assertion> = [Assertion::Noetherian].into();
    let mut exact: Option<(i64, String)> = None;
    if let (true, Some(c)) = (a.as_regular.is_yes(), cm) {
        if witnesses.iter().any(|w| w.identity) {
            exact = Some((-c, "A is AS regular: c(A) = -CMreg(A), attained by the identity".into()));
        }
    }
    if exact.is_none() && upper == Some(0) {
        exact = Some((0, "c >= 0 always and a witness gives c <= 0".into()));
    }
    if exact.is_none() {
        if let (Some(u), Some(c), Some(r)) = (upper, cm, a.asreg.exact_value()) {
            if r > 0 && u + c == 1 {
                assertions.insert(Assertion::BalancedDualizingComplex);
                exact = Some((
                    u,
                    format!("0 <= c_- <= {u} + ({c}) = 1 and c_- = 0 only for AS regular algebras, but ASreg = {r}"),
                ));
            }
        }
    }
    let (c, reason, is_exact) = match (&exact, upper) {
        (Some((v, why)), _) => (BoundedValue::exact(*v, why.clone()), why.clone(), true),
        (None, Some(u)) => (
            BoundedValue::at_least(0, format!("c >= 0 by definition; c <= {u} by the witness")),
            format!("upper bound {u} only"),
            false,
        ),
        (None, None) => (BoundedValue::at_least(0, "c >= 0 by definition; no witness"), "no witness".into(), false),
    };
    let c_minus = match (is_exact, c.exact_value(), cm) {
        (true, Some(v), Some(m)) => BoundedValue::exact(v + m, format!("c + CMreg = {v} + ({m})")),
        (_, _, Some(m)) if upper.is_some() => {
            assertions.insert(Assertion::BalancedDualizingComplex);
            BoundedValue::at_least(0, format!("c_- >= 0; c_- <= {} + ({m})", upper.unwrap()))
        }
        _ => BoundedValue::unknown("CMreg(A) unknown"),
    };
    ConcavityBound { upper, witness: best, exact: is_exact, c, c_minus, reason, assertions }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionVerdict {
    pub obstructed: bool,
    pub beta1: Option<i32>,
    pub beta2: Option<i32>,
    pub detail: String,
}

/// Tests whether A can be an invariant ring T^H of a semisimple Hopf action on a noetherian AS
/// regular T: such rings satisfy c ≥ β₁ − 1 and
/// c ≥ min{β₂/2 − CMreg(T), (β₂ − CMreg(T) − 1)/2, β₂ − 2}, with β_i = deg Tor_i(k, k).
pub fn invariant_ring_obstruction(
    a: &RegularityReport,
    bound: &ConcavityBound,
    cmreg_t_range: Option<(i64, i64)>,
) -> ObstructionVerdict {
    let b = &a.betti;
    let beta1 = b.t(1);
    let beta2 = b.t(2);
    let Some(u) = bound.upper else {
        return ObstructionVerdict { obstructed: false, beta1, beta2, detail: "no concavity witness".into() };
    };
    let c_text = if bound.exact { format!("c = {u}") } else { format!("c <= {u}") };
    if let Some(b1) = beta1 {
        let rhs = b1 as i64 - 1;
        if u < rhs {
            return ObstructionVerdict {
                obstructed: true,
                beta1,
                beta2,
                detail: format!("obstructed: {c_text} < beta_1 - 1 = {rhs}"),
            };
        }
    }
    if let (Some(b2), Some((_, hi))) = (beta2, cmreg_t_range) {
        // the bound decreases in CMreg(T), so the largest admissible CMreg(T) is the weakest case
        let b2 = b2 as i64;
        let twice = [b2 - 2 * hi, b2 - hi - 1, 2 * b2 - 4];
        let m = *twice.iter().min().unwrap();
        if 2 * u < m {
            return ObstructionVerdict {
                obstructed: true,
                beta1,
                beta2,
                detail: format!("obstructed: {c_text} < {m}/2, the relation-degree bound with CMreg(T) <= {hi}"),
            };
        }
    }
    ObstructionVerdict {
        obstructed: false,
        beta1,
        beta2,
        detail: format!("no conclusion: {c_text} and beta_1 - 1 = {}", beta1.map_or("?".into(), |b| (b - 1).to_string())),
    }
}
