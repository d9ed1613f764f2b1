//! Plain and JSON reports.
//!
//! JSON schema, version 1. Every report is one object on its own line:
//!
//! ```text
//! schema_version  1
//! query           {kind, n, m}       n and m are null outside containment queries
//! outcome         "holds" | "fails" | "resource_limited" | null
//! limit           breached cap for resource_limited, else null
//! method          "saturation" | "monomial-lattice" | "criterion" | ... | null
//! witness         polynomial text in the query's ring, or null
//! note            free text, or null
//! elapsed_ms      wall clock of the computation
//! field           {char}
//! limits          {max_degree, max_steps, max_pairs, timeout_ms}
//! ideal           generators of the input ideal, or null
//! data            command-specific payload (omitted when empty)
//! ```

use std::time::Duration;

use serde::Serialize;
use serde_json::Value;
use symcontain::polyring::Field;
use symcontain::symbolic::{ContainmentReport, Outcome};
use symcontain::Error;

use crate::{Expect, RunConfig};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Debug, Clone)]
pub struct Query {
    pub kind: String,
    pub n: Option<u32>,
    pub m: Option<u32>,
}

#[derive(Serialize, Debug, Clone)]
pub struct FieldInfo {
    pub char: u64,
}

#[derive(Serialize, Debug, Clone)]
pub struct LimitsInfo {
    pub max_degree: u64,
    pub max_steps: u64,
    pub max_pairs: usize,
    pub timeout_ms: Option<u64>,
}

#[derive(Serialize, Debug, Clone)]
pub struct Report {
    pub schema_version: u32,
    pub query: Query,
    pub outcome: Option<String>,
    pub limit: Option<String>,
    pub method: Option<String>,
    pub witness: Option<String>,
    pub note: Option<String>,
    pub elapsed_ms: u64,
    pub field: FieldInfo,
    pub limits: LimitsInfo,
    pub ideal: Option<String>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub data: Value,
}

impl Report {
    pub fn new(cfg: &RunConfig, kind: &str) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            query: Query { kind: kind.to_string(), n: None, m: None },
            outcome: None,
            limit: None,
            method: None,
            witness: None,
            note: None,
            elapsed_ms: 0,
            field: FieldInfo { char: cfg.field.characteristic() },
            limits: LimitsInfo {
                max_degree: cfg.limits.max_degree,
                max_steps: cfg.limits.max_steps,
                max_pairs: cfg.limits.max_pairs,
                timeout_ms: cfg.timeout.map(|t| t.as_millis() as u64),
            },
            ideal: None,
            data: Value::Null,
        }
    }

    pub fn containment<F: Field>(cfg: &RunConfig, kind: &str, r: &ContainmentReport<F>, elapsed: Duration) -> Self {
        let mut out = Report::new(cfg, kind);
        out.query.n = Some(r.n);
        out.query.m = Some(r.m);
        let (outcome, limit) = outcome_fields(r.outcome);
        out.outcome = Some(outcome);
        out.limit = limit;
        out.method = Some(r.method.to_string());
        out.witness = r.witness.as_ref().map(|w| w.to_string());
        out.note = r.note.clone();
        out.elapsed_ms = elapsed.as_millis() as u64;
        out
    }

    pub fn json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// One line per containment verdict, plus witness and note lines.
    pub fn plain_containment(&self) -> String {
        let (n, m) = (self.query.n.unwrap_or(0), self.query.m.unwrap_or(0));
        let mut verdict = self.outcome.clone().unwrap_or_default();
        if let Some(l) = &self.limit {
            verdict = format!("{verdict} ({l})");
        }
        let mut text = format!(
            "I^({n}) ⊆ I^{m}: {verdict}  [{}, {} ms]",
            self.method.as_deref().unwrap_or("-"),
            self.elapsed_ms
        );
        if let Some(w) = &self.witness {
            text += &format!("\n  witness: {w}");
        }
        if let Some(note) = &self.note {
            text += &format!("\n  note: {note}");
        }
        text
    }
}

pub fn outcome_fields(o: Outcome) -> (String, Option<String>) {
    match o {
        Outcome::Holds => ("holds".into(), None),
        Outcome::Fails => ("fails".into(), None),
        Outcome::ResourceLimited(k) => ("resource_limited".into(), Some(k.to_string())),
    }
}

/// Report emitted in JSON mode when a command stops with an error.
pub fn error_json(kind: &str, e: &Error) -> String {
    let mut v = serde_json::json!({
        "schema_version": SCHEMA_VERSION,
        "query": {"kind": kind, "n": null, "m": null},
        "error": e.to_string(),
    });
    if let Error::ResourceLimit(k) = e {
        v["outcome"] = "resource_limited".into();
        v["limit"] = k.to_string().into();
    }
    v.to_string()
}

/// Exit status accumulated over the reports of one command.
#[derive(Clone, Copy, Debug, Default)]
pub struct Status {
    pub limited: bool,
    pub mismatch: bool,
}

impl Status {
    pub fn record(&mut self, outcome: Outcome, expect: Option<Expect>) {
        match (outcome, expect) {
            (Outcome::ResourceLimited(_), _) => self.limited = true,
            (Outcome::Holds, Some(Expect::Fails)) | (Outcome::Fails, Some(Expect::Holds)) => self.mismatch = true,
            _ => {}
        }
    }

    pub fn code(self) -> u8 {
        if self.limited {
            4
        } else if self.mismatch {
            5
        } else {
            0
        }
    }
}
