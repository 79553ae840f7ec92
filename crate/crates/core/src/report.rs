//! Machine-readable verification reports.

use serde::Serialize;
use serde_json::Value;
use std::fmt::Write;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub instance: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl CheckReport {
    pub fn pass(check: impl Into<String>, instance: impl Into<String>) -> Self {
        CheckReport { check: check.into(), instance: instance.into(), status: Status::Pass, witness: None }
    }

    pub fn fail(check: impl Into<String>, instance: impl Into<String>, witness: impl Serialize) -> Self {
        CheckReport {
            check: check.into(),
            instance: instance.into(),
            status: Status::Fail,
            witness: Some(serde_json::to_value(witness).unwrap_or(Value::Null)),
        }
    }

    /// Pass when `witness` is `None`, fail carrying it otherwise.
    pub fn expect_none<W: Serialize>(
        check: impl Into<String>,
        instance: impl Into<String>,
        witness: Option<W>,
    ) -> Self {
        match witness {
            None => Self::pass(check, instance),
            Some(w) => Self::fail(check, instance, w),
        }
    }

    pub fn from_bool(check: impl Into<String>, instance: impl Into<String>, ok: bool) -> Self {
        if ok {
            Self::pass(check, instance)
        } else {
            Self::fail(check, instance, Value::Null)
        }
    }

    /// Attaches an informational witness without changing the status.
    pub fn with_witness(mut self, witness: impl Serialize) -> Self {
        self.witness = Some(serde_json::to_value(witness).unwrap_or(Value::Null));
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

pub fn all_pass(reports: &[CheckReport]) -> bool {
    reports.iter().all(CheckReport::passed)
}

/// One line per check: `PASS check [instance]`, with the witness on failure.
pub fn render_human(reports: &[CheckReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let tag = if r.passed() { "PASS" } else { "FAIL" };
        let _ = write!(out, "{tag} {} [{}]", r.check, r.instance);
        if let (false, Some(w)) = (r.passed(), &r.witness) {
            let _ = write!(out, ": {w}");
        }
        out.push('\n');
    }
    out
}
