//! Serializable certification artifacts.
//!
//! A [`Certificate`] is self-contained: every symbolic witness, sign claim,
//! base case, and prefix inequality that the pipeline relied on is recorded
//! exactly, so an independent checker can replay the argument without
//! rerunning the search. Serialization is deterministic (sorted witness
//! map, exact `"p/q"` strings) and round-trips bit for bit.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::Direction;
use crate::exactmath::{RationalFunction, SignKind, SignVerdict};
use crate::sequences::Violation;

/// The overall outcome of a certification run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CertVerdict {
    /// Every claim was established.
    Certified,
    /// An exact counterexample: at stage 0 the terms themselves fail
    /// log-convexity, at stage 1 the transformed sequence does.
    Refuted { violation: Violation },
    /// A premise of the criterion fails for this recurrence.
    Inapplicable { reason: String },
    /// Some claim could not be settled either way.
    Unknown { reason: String },
}

/// A sign statement about a named rational function on `n >= from`:
/// `claim` is the sign the pipeline required, `verdict` what the decision
/// procedure actually established (possibly stronger, or — on a claim that
/// failed — the sign pattern that contradicts it).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RayClaim {
    pub name: String,
    pub from: i64,
    pub claim: SignKind,
    pub verdict: SignVerdict,
}

/// One exact base-case comparison of a term ratio against a bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BaseCheck {
    pub index: i64,
    #[serde(with = "crate::exactmath::rat_string")]
    pub ratio: BigRational,
    #[serde(with = "crate::exactmath::rat_string")]
    pub bound: BigRational,
    /// False when the ratio met the bound with equality (upper bounds only).
    pub strict: bool,
}

/// An induction certificate that a bound pinches the consecutive-term
/// ratios on `n >= valid_from`: exact base cases up to where the step
/// takes over, plus the step gap proven positive on `k >= step_from`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BoundCertificate {
    pub direction: Direction,
    pub expr: RationalFunction,
    pub valid_from: i64,
    /// Sign of the coefficient `b` on the induction ray; it selects the
    /// shape of the step gap.
    pub b_sign: SignKind,
    pub base_checks: Vec<BaseCheck>,
    pub step_gap: RationalFunction,
    pub step_from: i64,
    pub step_verdict: SignVerdict,
}

/// One exact inequality `s_{n+1}^2 <= s_n s_{n+2}` checked below the
/// joined ray start, where `s` is the transformed sequence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PrefixCheck {
    pub index: i64,
    #[serde(with = "crate::exactmath::rat_string")]
    pub lhs: BigRational,
    #[serde(with = "crate::exactmath::rat_string")]
    pub rhs: BigRational,
    pub strict: bool,
}

/// The complete certification record produced by
/// [`super::certify_two_log_convex`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Certificate {
    pub verdict: CertVerdict,
    /// Whether every prefix inequality held strictly.
    pub strict: bool,
    /// The joined ray start: beyond it the symbolic claims carry the
    /// argument, below it the prefix checks do. `None` unless certified.
    #[serde(rename = "N0")]
    pub n0: Option<i64>,
    pub rays: Vec<RayClaim>,
    /// Every symbolic function the claims are about, in canonical form.
    pub witnesses: BTreeMap<String, RationalFunction>,
    pub prefix_checks: Vec<PrefixCheck>,
    pub bounds: Vec<BoundCertificate>,
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        matches!(self.verdict, CertVerdict::Certified)
    }

    /// Deterministic pretty JSON; equal certificates produce identical text.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}
