//! Verification verdicts and their text and JSON renderings.

use std::fmt;
use std::time::Duration;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::series::{Agreement, LaurentSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClaimKind {
    Identity,
    Congruence,
    Internal,
    /// A coefficient relation or recurrence checked index by index.
    Relation,
}

impl ClaimKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ClaimKind::Identity => "identity",
            ClaimKind::Congruence => "congruence",
            ClaimKind::Internal => "internal",
            ClaimKind::Relation => "relation",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

/// Where a claim first breaks: an exponent (identities) or `n` (congruences),
/// with the two integers that should have matched.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub index: i64,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

#[derive(Debug, Clone)]
pub struct ClaimReport {
    pub label: String,
    pub kind: ClaimKind,
    pub status: Status,
    /// Order the claim was evaluated at.
    pub order: i64,
    /// Number of coefficients or indices compared.
    pub checked: u64,
    pub witness: Option<Witness>,
    pub error: Option<String>,
    pub elapsed: Duration,
}

impl ClaimReport {
    pub fn pass(label: impl Into<String>, kind: ClaimKind, order: i64, checked: u64) -> Self {
        ClaimReport {
            label: label.into(),
            kind,
            status: Status::Pass,
            order,
            checked,
            witness: None,
            error: None,
            elapsed: Duration::ZERO,
        }
    }

    pub fn fail(
        label: impl Into<String>,
        kind: ClaimKind,
        order: i64,
        checked: u64,
        witness: Witness,
    ) -> Self {
        ClaimReport {
            status: Status::Fail,
            witness: Some(witness),
            ..Self::pass(label, kind, order, checked)
        }
    }

    pub fn error(
        label: impl Into<String>,
        kind: ClaimKind,
        order: i64,
        error: impl fmt::Display,
    ) -> Self {
        ClaimReport {
            status: Status::Error,
            error: Some(error.to_string()),
            ..Self::pass(label, kind, order, 0)
        }
    }

    /// Compares two evaluated sides below `order`.
    pub fn compare_series(
        label: impl Into<String>,
        lhs: &LaurentSeries,
        rhs: &LaurentSeries,
        order: i64,
    ) -> Self {
        let label = label.into();
        match lhs.equal_up_to(rhs, order) {
            Ok(agreement) => {
                let start = lhs.valuation().min(rhs.valuation()).min(order);
                let checked = (order - start) as u64;
                match agreement {
                    Agreement::Equal => Self::pass(label, ClaimKind::Identity, order, checked),
                    Agreement::Differs(m) => Self::fail(
                        label,
                        ClaimKind::Identity,
                        order,
                        (m.exponent - start) as u64,
                        Witness {
                            index: m.exponent,
                            lhs: m.left,
                            rhs: m.right,
                        },
                    ),
                }
            }
            Err(e) => Self::error(label, ClaimKind::Identity, order, e),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn with_elapsed(mut self, elapsed: Duration) -> Self {
        self.elapsed = elapsed;
        self
    }

    pub fn with_kind(mut self, kind: ClaimKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn to_json(&self) -> Value {
        json!({
            "label": self.label,
            "kind": self.kind.as_str(),
            "status": self.status.as_str(),
            "order": self.order,
            "checked": self.checked,
            "witness": self.witness.as_ref().map(|w| json!({
                "index": w.index.to_string(),
                "lhs": w.lhs.to_string(),
                "rhs": w.rhs.to_string(),
            })),
        })
    }
}

impl fmt::Display for ClaimReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        };
        write!(
            f,
            "[{tag}] {} ({}, order {}, {} checked, {:.1} ms)",
            self.label,
            self.kind.as_str(),
            self.order,
            self.checked,
            self.elapsed.as_secs_f64() * 1e3
        )?;
        if let Some(w) = &self.witness {
            write!(
                f,
                "\n       first mismatch at {}: {} vs {}",
                w.index, w.lhs, w.rhs
            )?;
        }
        if let Some(e) = &self.error {
            write!(f, "\n       {e}")?;
        }
        Ok(())
    }
}

/// A suite of claim verdicts; passes iff every claim passes.
#[derive(Debug, Clone)]
pub struct Report {
    pub order: i64,
    pub claims: Vec<ClaimReport>,
}

impl Report {
    pub fn new(order: i64) -> Self {
        Report {
            order,
            claims: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.claims.iter().all(ClaimReport::passed)
    }

    pub fn count(&self, status: Status) -> usize {
        self.claims.iter().filter(|c| c.status == status).count()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "order": self.order,
            "claims": self.claims.iter().map(ClaimReport::to_json).collect::<Vec<_>>(),
            "passed": self.passed(),
        })
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.claims {
            writeln!(f, "{c}")?;
        }
        write!(
            f,
            "{} claims: {} passed, {} failed, {} errors",
            self.claims.len(),
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Error)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_passes() {
        let r = Report::new(500);
        assert!(r.passed());
        assert_eq!(
            r.to_json(),
            json!({"order": 500, "claims": [], "passed": true})
        );
    }

    #[test]
    fn witness_integers_are_strings() {
        let c = ClaimReport::fail(
            "x",
            ClaimKind::Identity,
            10,
            1,
            Witness {
                index: 1,
                lhs: BigInt::parse_bytes(b"123456789012345678901234567890", 10).unwrap(),
                rhs: BigInt::from(-4),
            },
        );
        let v = c.to_json();
        assert_eq!(v["witness"]["lhs"], "123456789012345678901234567890");
        assert_eq!(v["witness"]["rhs"], "-4");
        assert_eq!(v["status"], "fail");
        let mut r = Report::new(10);
        r.claims.push(c);
        assert_eq!(r.to_json()["passed"], false);
    }

    #[test]
    fn compare_reports_first_mismatch() {
        let a = LaurentSeries::from_i64s(0, &[1, 2, 3, 4]);
        let b = LaurentSeries::from_i64s(0, &[1, 2, 5, 4]);
        let r = ClaimReport::compare_series("t", &a, &b, 4);
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.witness.unwrap().index, 2);
        let r = ClaimReport::compare_series("t", &a, &b, 5);
        assert_eq!(r.status, Status::Error);
    }
}
