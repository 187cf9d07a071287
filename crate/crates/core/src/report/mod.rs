//! The JSON report written by the command-line tool, and its SVG figures.

pub mod svg;

use std::collections::BTreeMap;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::heron::ChainStep;
use crate::record::CertificateRecord;
use crate::scalar::QuadScalar;

pub use svg::{emit_svg, render_svg};

pub const SCHEMA_VERSION: u32 = 1;

/// An exact value (authoritative) with an advisory 12-digit decimal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exact {
    pub exact: String,
    pub decimal: String,
}

impl From<&QuadScalar> for Exact {
    fn from(v: &QuadScalar) -> Self {
        Exact {
            exact: v.to_string(),
            decimal: v.to_decimal(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedValue {
    pub name: String,
    pub exact: String,
    /// Absent for values that are not numbers (labels, polynomials).
    pub decimal: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub name: String,
    pub ok: bool,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepEntry {
    pub name: String,
    pub left_label: String,
    pub right_label: String,
    pub left: Exact,
    pub right: Exact,
    pub equal: bool,
    /// Names of the entries in `certificates` backing this step.
    pub certificates: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateEntry {
    pub name: String,
    pub kind: String,
    pub verdict: bool,
    pub expected: Exact,
    pub actual: Exact,
    pub pieces: usize,
    pub failure: Option<String>,
}

impl CertificateEntry {
    pub fn from_record(prefix: Option<&str>, r: &CertificateRecord) -> Self {
        CertificateEntry {
            name: match prefix {
                Some(p) => format!("{}/{}", p, r.name),
                None => r.name.clone(),
            },
            kind: r.kind.label().to_string(),
            verdict: r.verdict,
            expected: (&r.expected).into(),
            actual: (&r.actual).into(),
            pieces: r.pieces,
            failure: r.failure.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema: u32,
    pub command: String,
    pub args: Vec<String>,
    pub inputs: BTreeMap<String, String>,
    pub verdict: bool,
    pub failure: Option<String>,
    pub values: Vec<NamedValue>,
    pub checks: Vec<CheckEntry>,
    pub steps: Vec<StepEntry>,
    pub certificates: Vec<CertificateEntry>,
    pub figures: Vec<String>,
    /// Seconds since the Unix epoch; the only field that varies between runs.
    pub timestamp: String,
}

impl ReportDocument {
    pub fn new(command: &str, args: &[String]) -> Self {
        ReportDocument {
            schema: SCHEMA_VERSION,
            command: command.to_string(),
            args: args.to_vec(),
            inputs: BTreeMap::new(),
            verdict: false,
            failure: None,
            values: Vec::new(),
            checks: Vec::new(),
            steps: Vec::new(),
            certificates: Vec::new(),
            figures: Vec::new(),
            timestamp: String::new(),
        }
    }

    pub fn input(&mut self, name: &str, value: impl ToString) {
        self.inputs.insert(name.to_string(), value.to_string());
    }

    pub fn value(&mut self, name: &str, v: &QuadScalar) {
        self.values.push(NamedValue {
            name: name.to_string(),
            exact: v.to_string(),
            decimal: Some(v.to_decimal()),
        });
    }

    pub fn text(&mut self, name: &str, v: impl ToString) {
        self.values.push(NamedValue {
            name: name.to_string(),
            exact: v.to_string(),
            decimal: None,
        });
    }

    pub fn check(&mut self, name: &str, ok: bool, detail: Option<String>) {
        self.checks.push(CheckEntry {
            name: name.to_string(),
            ok,
            detail,
        });
    }

    pub fn certificate(&mut self, prefix: Option<&str>, r: &CertificateRecord) {
        self.certificates.push(CertificateEntry::from_record(prefix, r));
    }

    /// Adds a chain step and its certificates (named `step/certificate`).
    pub fn step(&mut self, s: &ChainStep) {
        let mut names = Vec::new();
        for c in &s.certificates {
            let entry = CertificateEntry::from_record(Some(s.name), c);
            names.push(entry.name.clone());
            self.certificates.push(entry);
        }
        self.steps.push(StepEntry {
            name: s.name.to_string(),
            left_label: s.left_label.to_string(),
            right_label: s.right_label.to_string(),
            left: (&s.left).into(),
            right: (&s.right).into(),
            equal: s.equal,
            certificates: names,
        });
    }

    /// Sets `verdict` from the checks, steps and certificates; `failure`
    /// names the first thing that did not hold.
    pub fn finish(&mut self) {
        self.failure = self
            .certificates
            .iter()
            .find(|c| !c.verdict)
            .map(|c| {
                format!(
                    "certificate {} failed: {}",
                    c.name,
                    c.failure.clone().unwrap_or_default()
                )
            })
            .or_else(|| {
                self.steps
                    .iter()
                    .find(|s| !s.equal || s.certificates.is_empty())
                    .map(|s| format!("step {} does not hold", s.name))
            })
            .or_else(|| {
                self.checks.iter().find(|c| !c.ok).map(|c| match &c.detail {
                    Some(d) => format!("check {} failed: {}", c.name, d),
                    None => format!("check {} failed", c.name),
                })
            });
        self.verdict = self.failure.is_none();
    }

    /// Test hook: fails the certificate called `name`, or the first one for `"first"`.
    pub fn corrupt(&mut self, name: &str) -> bool {
        let target = if name == "first" {
            self.certificates.first_mut()
        } else {
            self.certificates.iter_mut().find(|c| c.name == name)
        };
        match target {
            Some(c) => {
                c.verdict = false;
                c.failure = Some("certificate corrupted on request".into());
                self.finish();
                true
            }
            None => false,
        }
    }

    pub fn stamp(&mut self) {
        let secs = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        self.timestamp = secs.to_string();
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    /// A copy with the timestamp cleared, for run-to-run comparison.
    pub fn without_timestamp(&self) -> Self {
        ReportDocument {
            timestamp: String::new(),
            ..self.clone()
        }
    }

    pub fn find_value(&self, name: &str) -> Option<&NamedValue> {
        self.values.iter().find(|v| v.name == name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::record::CertificateKind;

    fn sample() -> ReportDocument {
        let mut doc = ReportDocument::new("demo", &["demo".to_string(), "--x".to_string()]);
        doc.input("x", "3/7");
        let v = QuadScalar::sqrt_of(&crate::scalar::rat(5, 1)).unwrap();
        doc.value("root", &v);
        doc.text("label", "xzyw");
        doc.certificate(
            None,
            &CertificateRecord {
                name: "c".into(),
                kind: CertificateKind::Tiling,
                verdict: true,
                expected: v.clone(),
                actual: v,
                pieces: 2,
                failure: None,
            },
        );
        doc.check("ok", true, None);
        doc.finish();
        doc.stamp();
        doc
    }

    #[test]
    fn json_round_trip() {
        let doc = sample();
        let back = ReportDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        let exact: QuadScalar = back.values[0].exact.parse().unwrap();
        assert_eq!(&exact * &exact, QuadScalar::from_int(5));
        assert_eq!(back.values[0].decimal.as_deref(), Some("2.2360679775"));
    }

    #[test]
    fn corrupting_flips_verdict() {
        let mut doc = sample();
        assert!(doc.verdict);
        assert!(!doc.corrupt("missing"));
        assert!(doc.corrupt("c"));
        assert!(!doc.verdict);
        assert!(doc.failure.as_deref().unwrap().contains("certificate c"));
    }

    #[test]
    fn failed_check_is_named() {
        let mut doc = sample();
        doc.check("count", false, Some("3 != 4".into()));
        doc.finish();
        assert_eq!(doc.failure.as_deref(), Some("check count failed: 3 != 4"));
    }
}
