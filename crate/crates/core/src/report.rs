//! Verification outcomes and their text / JSON renderings.

use std::fmt;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::series::TruncatedSeries;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Status {
    ExactMatch,
    /// `index` is the smallest offending exponent (series equality) or the
    /// smallest offending `n` (index relations). Values are decimal strings.
    Mismatch { index: i64, lhs: String, rhs: String },
    Skipped { reason: String },
}

impl Status {
    pub fn is_match(&self) -> bool {
        matches!(self, Status::ExactMatch)
    }

    pub fn is_mismatch(&self) -> bool {
        matches!(self, Status::Mismatch { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub id: String,
    pub order: usize,
    #[serde(flatten)]
    pub status: Status,
    /// Number of coefficients or `n` values compared.
    pub checked: u64,
    #[serde(serialize_with = "as_millis")]
    pub elapsed: Duration,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

fn as_millis<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64((d.as_secs_f64() * 1e6).round() / 1e3)
}

impl VerificationReport {
    pub fn new(id: impl Into<String>, order: usize, status: Status, checked: u64) -> Self {
        VerificationReport {
            id: id.into(),
            order,
            status,
            checked,
            elapsed: Duration::ZERO,
            detail: None,
        }
    }

    pub fn skipped(id: impl Into<String>, order: usize, reason: impl Into<String>) -> Self {
        Self::new(id, order, Status::Skipped { reason: reason.into() }, 0)
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn timed(mut self, start: Instant) -> Self {
        self.elapsed = start.elapsed();
        self
    }

    pub fn is_match(&self) -> bool {
        self.status.is_match()
    }

    /// One line: `PASS <id> N=<order> ...`. Elapsed time is left out unless
    /// `with_time` is set, so the default rendering is deterministic.
    pub fn to_line(&self, with_time: bool) -> String {
        let mut line = match &self.status {
            Status::ExactMatch => format!("PASS {} N={} checked={}", self.id, self.order, self.checked),
            Status::Mismatch { index, lhs, rhs } => format!(
                "FAIL {} N={} first mismatch at index {}: lhs {}, rhs {}",
                self.id, self.order, index, lhs, rhs
            ),
            Status::Skipped { reason } => format!("SKIP {} N={} {}", self.id, self.order, reason),
        };
        if let Some(detail) = &self.detail {
            line.push_str(" [");
            line.push_str(detail);
            line.push(']');
        }
        if with_time {
            line.push_str(&format!(" ({:.1} ms)", self.elapsed.as_secs_f64() * 1e3));
        }
        line
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_line(false))
    }
}

/// Compares two series coefficientwise up to `order` (both must reach it).
pub fn compare_series(
    id: &str,
    lhs: &TruncatedSeries,
    rhs: &TruncatedSeries,
    order: usize,
) -> VerificationReport {
    let lhs = lhs.truncate(order);
    let rhs = rhs.truncate(order);
    debug_assert_eq!(lhs.order(), rhs.order());
    let status = match lhs.first_mismatch(&rhs) {
        None => Status::ExactMatch,
        Some(i) => Status::Mismatch {
            index: i as i64,
            lhs: lhs.coeffs()[i].to_string(),
            rhs: rhs.coeffs()[i].to_string(),
        },
    };
    VerificationReport::new(id, order, status, lhs.order() as u64 + 1)
}

/// Totals over a batch of reports.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn of(reports: &[VerificationReport]) -> Self {
        let mut s = Summary::default();
        for r in reports {
            match r.status {
                Status::ExactMatch => s.passed += 1,
                Status::Mismatch { .. } => s.failed += 1,
                Status::Skipped { .. } => s.skipped += 1,
            }
        }
        s
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} passed, {} failed, {} skipped", self.passed, self.failed, self.skipped)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compare_reports_first_index() {
        let a = TruncatedSeries::from_i64s(&[1, 2, 3, 4], 3);
        let b = TruncatedSeries::from_i64s(&[1, 2, 0, 0], 3);
        let r = compare_series("x", &a, &b, 3);
        assert_eq!(
            r.status,
            Status::Mismatch { index: 2, lhs: "3".into(), rhs: "0".into() }
        );
        assert!(compare_series("x", &a, &b, 1).is_match());
    }

    #[test]
    fn line_and_json_forms() {
        let r = VerificationReport::new("thm.x", 10, Status::ExactMatch, 11);
        assert_eq!(r.to_line(false), "PASS thm.x N=10 checked=11");
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["id"], "thm.x");
        assert_eq!(json["status"], "exact-match");
        assert_eq!(json["order"], 10);
        let bad = VerificationReport::new(
            "y",
            5,
            Status::Mismatch { index: 0, lhs: "4".into(), rhs: "3".into() },
            1,
        );
        assert_eq!(bad.to_line(false), "FAIL y N=5 first mismatch at index 0: lhs 4, rhs 3");
        let json: serde_json::Value = serde_json::from_str(&bad.to_json()).unwrap();
        assert_eq!(json["status"], "mismatch");
        assert_eq!(json["index"], 0);
    }

    #[test]
    fn summary_counts() {
        let reports = vec![
            VerificationReport::new("a", 1, Status::ExactMatch, 1),
            VerificationReport::skipped("b", 1, "too big"),
            VerificationReport::new("c", 1, Status::Mismatch { index: 1, lhs: "1".into(), rhs: "2".into() }, 1),
        ];
        let s = Summary::of(&reports);
        assert_eq!(s, Summary { passed: 1, failed: 1, skipped: 1 });
        assert!(!s.all_passed());
    }
}
