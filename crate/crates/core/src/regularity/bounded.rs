use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Exact,
    AtLeast,
    Unknown,
}

/// An integer invariant together with how much of it the computation actually certifies.
///
/// `AtLeast` comes from witnessed nonzero entries inside a finite window; `Exact` needs a
/// termination or closed-form certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundedValue {
    pub kind: BoundKind,
    pub value: Option<i64>,
    pub provenance: String,
}

impl BoundedValue {
    pub fn exact(v: i64, provenance: impl Into<String>) -> BoundedValue {
        BoundedValue { kind: BoundKind::Exact, value: Some(v), provenance: provenance.into() }
    }

    pub fn at_least(v: i64, provenance: impl Into<String>) -> BoundedValue {
        BoundedValue { kind: BoundKind::AtLeast, value: Some(v), provenance: provenance.into() }
    }

    pub fn unknown(provenance: impl Into<String>) -> BoundedValue {
        BoundedValue { kind: BoundKind::Unknown, value: None, provenance: provenance.into() }
    }

    pub fn is_exact(&self) -> bool {
        self.kind == BoundKind::Exact
    }

    pub fn exact_value(&self) -> Option<i64> {
        if self.is_exact() {
            self.value
        } else {
            None
        }
    }

    /// A certified lower bound (the value itself when exact).
    pub fn lower(&self) -> Option<i64> {
        self.value
    }

    /// Exact + Exact is exact, a lower bound on either side gives a lower bound, Unknown absorbs.
    pub fn add(&self, other: &BoundedValue) -> BoundedValue {
        let provenance = format!("({}) + ({})", self.provenance, other.provenance);
        match (self.kind, other.kind) {
            (BoundKind::Unknown, _) | (_, BoundKind::Unknown) => BoundedValue::unknown(provenance),
            (BoundKind::Exact, BoundKind::Exact) => {
                BoundedValue::exact(self.value.unwrap() + other.value.unwrap(), provenance)
            }
            _ => BoundedValue::at_least(self.value.unwrap() + other.value.unwrap(), provenance),
        }
    }

    pub fn shift(&self, by: i64) -> BoundedValue {
        BoundedValue { value: self.value.map(|v| v + by), ..self.clone() }
    }

    pub fn with_provenance(mut self, provenance: impl Into<String>) -> BoundedValue {
        self.provenance = provenance.into();
        self
    }

    /// Combines the value with a proven upper bound: a lower bound meeting it becomes exact.
    /// Errors when the certified data already exceeds the bound.
    pub fn refine_upper(&self, upper: i64, why: &str) -> Result<BoundedValue, String> {
        match (self.kind, self.value) {
            (_, Some(v)) if v > upper => {
                Err(format!("computed value {v} exceeds the proven upper bound {upper} ({why})"))
            }
            (BoundKind::AtLeast, Some(v)) if v == upper => {
                Ok(BoundedValue::exact(v, format!("{}; upper bound {upper}: {why}", self.provenance)))
            }
            _ => Ok(self.clone()),
        }
    }
}

impl fmt::Display for BoundedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.kind, self.value) {
            (BoundKind::Exact, Some(v)) => write!(f, "{v}"),
            (BoundKind::AtLeast, Some(v)) => write!(f, ">= {v}"),
            _ => f.write_str("unknown"),
        }
    }
}
