use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::scalar::FieldSpec;

/// Version tag written into every serialized report.
pub const REPORT_SCHEMA: &str = "plethyverify-report/1";

/// A polynomial input together with the two sides that were compared.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub input: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, String>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Check {
    pub fn new(name: &str, pass: bool) -> Check {
        Check { name: name.to_string(), params: BTreeMap::new(), pass, detail: None, witness: None }
    }

    pub fn detail(mut self, d: impl Into<String>) -> Check {
        self.detail = Some(d.into());
        self
    }

    pub fn witness(mut self, w: Witness) -> Check {
        self.witness = Some(w);
        self
    }

    pub fn param(mut self, k: &str, v: impl ToString) -> Check {
        self.params.insert(k.to_string(), v.to_string());
        self
    }
}

/// The outcome of one verification run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub kind: String,
    pub params: BTreeMap<String, u32>,
    pub field: String,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

impl VerificationReport {
    pub fn new(kind: &str, field: FieldSpec, params: &[(&str, u32)]) -> VerificationReport {
        VerificationReport {
            kind: kind.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            field: field.to_string(),
            checks: Vec::new(),
            elapsed_ms: None,
        }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// `hook (M=1, N=2, d=2) over GF(2)`.
    pub fn title(&self) -> String {
        let p: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        if p.is_empty() {
            return format!("{} over {}", self.kind, self.field);
        }
        format!("{} ({}) over {}", self.kind, p.join(", "), self.field)
    }

    /// One line per check, `PASS`/`FAIL` first.
    pub fn render_text(&self) -> String {
        let mut out = format!("{}\n", self.title());
        for c in &self.checks {
            out.push_str(&format!("  {} {}", if c.pass { "PASS" } else { "FAIL" }, c.name));
            if !c.params.is_empty() {
                let p: Vec<String> = c.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                out.push_str(&format!(" [{}]", p.join(", ")));
            }
            if let Some(d) = &c.detail {
                out.push_str(&format!(": {d}"));
            }
            out.push('\n');
            if let Some(w) = &c.witness {
                out.push_str(&format!("    input: {}\n    lhs:   {}\n    rhs:   {}\n", w.input, w.lhs, w.rhs));
            }
        }
        if let Some(ms) = self.elapsed_ms {
            out.push_str(&format!("  time: {ms} ms\n"));
        }
        out
    }
}
