//! Regularity invariants of connected graded algebras computed from truncated resolutions and
//! Hilbert series: Tor-regularity, CM-regularity (through explicit evidence cases),
//! AS-regularity, Koszulness, concavity bounds, and the invariant-ring obstruction.

mod artifacts;
mod bounded;
mod concavity;
mod harness;
mod report;

pub use artifacts::{AlgebraArtifacts, ArtifactOptions};
pub use bounded::{BoundKind, BoundedValue};
pub use concavity::{
    concavity_certificate, invariant_ring_obstruction, ConcavityBound, ConcavityWitness, ObstructionVerdict,
};
pub use harness::{inequality_harness, CheckStatus, HarnessCase, HarnessResult};
pub use report::{
    as_regular_certificate, as_regular_verdict, as_regularity, cm_regularity, growth_note, hilbert_criterion,
    koszul_verdict, pbw_certificate, ta_tc_pairs, tor_regularity, verdict_text, AsRegularVerdict, CMEvidence, HilbertCriterion,
    InvariantCheck, KoszulVerdict, PairReport, Record, RegularityReport, ReportOptions, TorregUpper, SCHEMA,
};

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::corealg::CoreError;
use crate::gbasis::GbError;
use crate::resolution::ResolutionError;
use crate::series::SeriesError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RegularityError {
    #[error(transparent)]
    Gb(#[from] GbError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("evidence inconsistent with the computed data: {0}")]
    InconsistentEvidence(String),
    #[error("witness rejected: {0}")]
    Witness(String),
    #[error("the Hilbert series is only known as a truncation")]
    NotRational,
}

/// Truncation bounds: homological degree, internal degree, Gröbner degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    pub i_max: usize,
    pub d_max: i32,
    pub d_gb: u32,
}

impl Default for Window {
    fn default() -> Self {
        Window { i_max: 8, d_max: 12, d_gb: 12 }
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "i<={}, j<={}, gb<={}", self.i_max, self.d_max, self.d_gb)
    }
}

/// Hypotheses the tool cannot decide; every verdict that depends on one carries it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "assertion", rename_all = "snake_case")]
pub enum Assertion {
    Noetherian,
    BalancedDualizingComplex,
    CohenMacaulay { s: i64 },
    KoszulRegularWitness,
    TensorNoetherian,
}

impl fmt::Display for Assertion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Assertion::Noetherian => f.write_str("noetherian"),
            Assertion::BalancedDualizingComplex => f.write_str("balanced dualizing complex"),
            Assertion::CohenMacaulay { s } => write!(f, "{s}-Cohen-Macaulay"),
            Assertion::KoszulRegularWitness => {
                f.write_str("finite map from a noetherian Koszul AS regular algebra")
            }
            Assertion::TensorNoetherian => f.write_str("tensor product of the factors is noetherian"),
        }
    }
}
