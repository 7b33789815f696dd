//! Verification reports: every violated identity with its location and both
//! sides' coordinates.

use serde_json::{json, Value};

use crate::linalg::{format_scalar, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub identity: String,
    pub location: String,
    pub lhs: Vec<Scalar>,
    pub rhs: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Report {
    pub subject: String,
    pub checks: usize,
    pub violations: Vec<Violation>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Report {
        Report {
            subject: subject.into(),
            ..Report::default()
        }
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    /// Record one comparison `lhs = rhs`.
    pub fn check(&mut self, identity: &str, location: impl FnOnce() -> String, lhs: &[Scalar], rhs: &[Scalar]) {
        self.checks += 1;
        if lhs != rhs {
            self.violations.push(Violation {
                identity: identity.to_string(),
                location: location(),
                lhs: lhs.to_vec(),
                rhs: rhs.to_vec(),
            });
        }
    }

    /// Record a failed condition without coordinates.
    pub fn fail(&mut self, identity: &str, location: impl Into<String>) {
        self.checks += 1;
        self.violations.push(Violation {
            identity: identity.to_string(),
            location: location.into(),
            lhs: vec![],
            rhs: vec![],
        });
    }

    pub fn pass(&mut self) {
        self.checks += 1;
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn merge(&mut self, other: Report) {
        self.checks += other.checks;
        self.violations.extend(other.violations);
        self.notes.extend(other.notes);
    }

    pub fn first_violation(&self) -> Option<&Violation> {
        self.violations.first()
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let status = if self.is_valid() { "valid" } else { "INVALID" };
        s.push_str(&format!(
            "{}: {} ({} checks, {} violations)\n",
            self.subject,
            status,
            self.checks,
            self.violations.len()
        ));
        for v in &self.violations {
            s.push_str(&format!(
                "  violated {} at {}: lhs = {} rhs = {}\n",
                v.identity,
                v.location,
                fmt_vec(&v.lhs),
                fmt_vec(&v.rhs)
            ));
        }
        for n in &self.notes {
            s.push_str(&format!("  note: {n}\n"));
        }
        s
    }

    pub fn to_json(&self) -> Value {
        json!({
            "subject": self.subject,
            "valid": self.is_valid(),
            "checks": self.checks,
            "violations": self.violations.iter().map(|v| json!({
                "identity": v.identity,
                "location": v.location,
                "lhs": v.lhs.iter().map(format_scalar).collect::<Vec<_>>(),
                "rhs": v.rhs.iter().map(format_scalar).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "notes": self.notes,
        })
    }
}

pub fn fmt_vec(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(format_scalar).collect();
    format!("({})", parts.join(", "))
}
