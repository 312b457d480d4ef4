use std::collections::BTreeMap;
use std::fmt;
use std::time::Duration;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Confirmed,
    /// Holds, but with a margin inside `(0, tolerance]`.
    ConfirmedMarginal,
    Violated,
    /// Outside the hypothesis range; data recorded, no verdict.
    Inapplicable,
}

impl Status {
    /// `margin > tol` confirms, `0 < margin <= tol` is marginal.
    pub fn from_margin(margin: f64, tol: f64) -> Status {
        if margin > tol {
            Status::Confirmed
        } else if margin > 0.0 {
            Status::ConfirmedMarginal
        } else {
            Status::Violated
        }
    }

    pub fn holds(self) -> bool {
        matches!(self, Status::Confirmed | Status::ConfirmedMarginal)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Confirmed => "confirmed",
            Status::ConfirmedMarginal => "confirmed-marginal",
            Status::Violated => "violated",
            Status::Inapplicable => "inapplicable",
        })
    }
}

/// Whether hypothesis ranges are enforced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Gate {
    /// Outside the hypothesis range the status is `inapplicable`.
    #[default]
    Strict,
    /// Evaluate anyway; the claim identifier is suffixed `~explore`.
    Exploratory,
}

/// Identifiers of every claim the harness knows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClaimId {
    StarRadius,
    TreeTopTwo,
    TreeTopFive,
    T1T2Crossover,
    SqrtGap,
    ClosedFormCharpolys,
    StarShift,
    PathShiftBalanced,
    PathShiftHook,
    PathShiftPendant,
    PendantPathProfile,
    UnionIdentity,
    JoinIdentity,
    BoundSandwich,
    SmallRadiusConjecture,
}

impl ClaimId {
    pub const ALL: [ClaimId; 15] = [
        ClaimId::StarRadius,
        ClaimId::TreeTopTwo,
        ClaimId::TreeTopFive,
        ClaimId::T1T2Crossover,
        ClaimId::SqrtGap,
        ClaimId::ClosedFormCharpolys,
        ClaimId::StarShift,
        ClaimId::PathShiftBalanced,
        ClaimId::PathShiftHook,
        ClaimId::PathShiftPendant,
        ClaimId::PendantPathProfile,
        ClaimId::UnionIdentity,
        ClaimId::JoinIdentity,
        ClaimId::BoundSandwich,
        ClaimId::SmallRadiusConjecture,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClaimId::StarRadius => "star-radius",
            ClaimId::TreeTopTwo => "tree-top-two",
            ClaimId::TreeTopFive => "tree-top-five",
            ClaimId::T1T2Crossover => "t1-t2-crossover",
            ClaimId::SqrtGap => "sqrt-gap",
            ClaimId::ClosedFormCharpolys => "closed-form-charpolys",
            ClaimId::StarShift => "star-shift",
            ClaimId::PathShiftBalanced => "path-shift-balanced",
            ClaimId::PathShiftHook => "path-shift-hook",
            ClaimId::PathShiftPendant => "path-shift-pendant",
            ClaimId::PendantPathProfile => "pendant-path-profile",
            ClaimId::UnionIdentity => "union-identity",
            ClaimId::JoinIdentity => "join-identity",
            ClaimId::BoundSandwich => "bound-sandwich",
            ClaimId::SmallRadiusConjecture => "small-radius-conjecture",
        }
    }

    pub fn parse(s: &str) -> Option<ClaimId> {
        ClaimId::ALL.into_iter().find(|c| c.as_str() == s)
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of one claim check.
///
/// For inequality claims `margin` is the smallest observed slack and
/// `tolerance` the comparison tolerance. For agreement claims (identities,
/// closed forms, Perron profiles) `margin = allowed - observed defect` and
/// `tolerance` is zero. Either way `confirmed` means `margin > tolerance`.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub claim: String,
    pub status: Status,
    pub margin: f64,
    pub tolerance: f64,
    /// graph6 strings of extremal or violating graphs.
    pub witnesses: Vec<String>,
    pub params: BTreeMap<String, Value>,
    #[serde(skip)]
    pub runtime: Duration,
    /// Set when the verdict does not follow from the margin alone (wrong
    /// ranking, unexpected survivors).
    #[serde(skip)]
    pub structural: bool,
}

impl VerificationReport {
    pub fn new(claim: impl Into<String>, tolerance: f64) -> Self {
        VerificationReport {
            claim: claim.into(),
            status: Status::Inapplicable,
            margin: 0.0,
            tolerance,
            witnesses: Vec::new(),
            params: BTreeMap::new(),
            runtime: Duration::ZERO,
            structural: false,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn set_param(&mut self, key: &str, value: impl Into<Value>) {
        self.params.insert(key.to_string(), value.into());
    }

    /// Sets margin and the status derived from it.
    pub fn judge(&mut self, margin: f64) {
        self.margin = finite(margin);
        self.status = Status::from_margin(self.margin, self.tolerance);
    }

    pub fn inapplicable(&mut self, margin: f64, reason: &str) {
        self.margin = finite(margin);
        self.status = Status::Inapplicable;
        self.set_param("inapplicable_reason", reason);
    }

    pub fn holds(&self) -> bool {
        self.status.holds()
    }

    /// Re-judges an inequality claim against a different comparison
    /// tolerance. Agreement claims (tolerance zero), inapplicable reports and
    /// structural verdicts are returned unchanged.
    pub fn with_tolerance(mut self, tol: f64) -> Self {
        if self.tolerance > 0.0 && !self.structural && self.status != Status::Inapplicable {
            self.tolerance = tol;
            self.status = Status::from_margin(self.margin, tol);
        }
        self
    }

    pub(crate) fn violate(&mut self, margin: f64, witnesses: Vec<String>) {
        self.margin = finite(margin);
        self.status = Status::Violated;
        self.structural = true;
        self.witnesses = witnesses;
    }

    /// One line summary: `claim status margin=... tol=...`.
    pub fn summary(&self) -> String {
        format!(
            "{} {} margin={:.3e} tol={:.1e}",
            self.claim, self.status, self.margin, self.tolerance
        )
    }

    pub(crate) fn finish(mut self, started: std::time::Instant) -> Self {
        self.runtime = started.elapsed();
        debug_assert!(
            self.status != Status::Violated || !self.witnesses.is_empty(),
            "violated report without witness: {}",
            self.claim
        );
        self
    }
}

/// Reports carry finite margins; an infinite one (no comparison made) is
/// recorded as the largest finite value.
fn finite(x: f64) -> f64 {
    if x.is_nan() {
        f64::MIN
    } else {
        x.clamp(f64::MIN, f64::MAX)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_from_margin() {
        assert_eq!(Status::from_margin(1e-3, 1e-9), Status::Confirmed);
        assert_eq!(Status::from_margin(5e-10, 1e-9), Status::ConfirmedMarginal);
        assert_eq!(Status::from_margin(0.0, 1e-9), Status::Violated);
        assert_eq!(Status::from_margin(-1.0, 0.0), Status::Violated);
    }

    #[test]
    fn tolerance_override() {
        let mut r = VerificationReport::new("x", 1e-9);
        r.judge(1e-6);
        assert_eq!(r.clone().with_tolerance(1e-3).status, Status::ConfirmedMarginal);
        assert_eq!(r.with_tolerance(1e-7).status, Status::Confirmed);
        let mut r = VerificationReport::new("y", 0.0);
        r.judge(-1.0);
        r.witnesses.push("A_".into());
        assert_eq!(r.with_tolerance(1.0).status, Status::Violated);
    }

    #[test]
    fn claim_ids_round_trip() {
        for c in ClaimId::ALL {
            assert_eq!(ClaimId::parse(c.as_str()), Some(c));
        }
    }

    #[test]
    fn serializes_with_fixed_keys() {
        let r = VerificationReport::new("x", 1e-9).param("n", 3);
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(
            json,
            r#"{"claim":"x","status":"inapplicable","margin":0.0,"tolerance":1e-9,"witnesses":[],"params":{"n":3}}"#
        );
    }
}
