//! Pass/fail records for identity sweeps.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Outcome of one identity over a sweep of cases. A failing record carries
/// the first counterexample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub identity: String,
    pub case: String,
    pub pass: bool,
    pub cases: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub records: Vec<Record>,
}

impl Report {
    pub fn from_tallies(tallies: impl IntoIterator<Item = Tally>) -> Report {
        Report {
            records: tallies.into_iter().map(Tally::finish).collect(),
        }
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn extend(&mut self, other: Report) {
        self.records.extend(other.records);
    }

    pub fn record(&self, identity: &str) -> Option<&Record> {
        self.records.iter().find(|r| r.identity == identity)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.records {
            let status = if r.pass { "PASS" } else { "FAIL" };
            write!(f, "{status} {} ({} cases", r.identity, r.cases)?;
            if r.failures > 0 {
                write!(f, ", {} failures", r.failures)?;
            }
            writeln!(f, ")")?;
            if !r.pass {
                writeln!(f, "  case: {}", r.case)?;
                if let (Some(l), Some(rr)) = (&r.lhs, &r.rhs) {
                    writeln!(f, "  lhs:  {l}")?;
                    writeln!(f, "  rhs:  {rr}")?;
                }
            }
        }
        Ok(())
    }
}

/// Accumulates cases for one identity.
#[derive(Clone, Debug)]
pub struct Tally {
    identity: String,
    cases: usize,
    failures: usize,
    first_failure: Option<(String, Option<String>, Option<String>)>,
}

impl Tally {
    pub fn new(identity: impl Into<String>) -> Self {
        Tally {
            identity: identity.into(),
            cases: 0,
            failures: 0,
            first_failure: None,
        }
    }

    /// Records `lhs == rhs` for one case.
    pub fn check<T: PartialEq + fmt::Display>(&mut self, case: &str, lhs: &T, rhs: &T) -> bool {
        self.cases += 1;
        let ok = lhs == rhs;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some((case.to_string(), Some(lhs.to_string()), Some(rhs.to_string())));
            }
        }
        ok
    }

    /// Records a boolean condition for one case.
    pub fn check_that(&mut self, case: &str, ok: bool) -> bool {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some((case.to_string(), None, None));
            }
        }
        ok
    }

    pub fn cases(&self) -> usize {
        self.cases
    }

    pub fn finish(self) -> Record {
        match self.first_failure {
            None => Record {
                identity: self.identity,
                case: format!("all {} cases", self.cases),
                pass: true,
                cases: self.cases,
                failures: 0,
                lhs: None,
                rhs: None,
            },
            Some((case, lhs, rhs)) => Record {
                identity: self.identity,
                case,
                pass: false,
                cases: self.cases,
                failures: self.failures,
                lhs,
                rhs,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_failure_is_kept() {
        let mut t = Tally::new("demo");
        t.check("a", &1, &1);
        t.check("b", &1, &2);
        t.check("c", &3, &4);
        let r = t.finish();
        assert!(!r.pass);
        assert_eq!((r.cases, r.failures), (3, 2));
        assert_eq!(r.case, "b");
        assert_eq!(r.lhs.as_deref(), Some("1"));
    }

    #[test]
    fn json_shape() {
        let mut t = Tally::new("demo");
        t.check_that("x", true);
        let report = Report::from_tallies([t]);
        let v = report.to_json();
        assert_eq!(v["records"][0]["identity"], "demo");
        assert_eq!(v["records"][0]["pass"], true);
        assert!(v["records"][0].get("lhs").is_none());
    }
}
