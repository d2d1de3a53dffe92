//! Ordered verdict lists shared by the tensor checks, the suites and the CLI.

use std::fmt;

use serde::Serialize;

use crate::symexpr::Poly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Error,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Error => "ERROR",
        })
    }
}

/// A printable counterexample: `label = expr`, where `expr` is in the
/// canonical expression grammar over the chart named by `coords`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub label: String,
    pub expr: String,
    pub coords: Vec<String>,
}

impl Witness {
    pub fn from_poly(label: impl Into<String>, p: &Poly) -> Self {
        Witness {
            label: label.into(),
            expr: p.to_string(),
            coords: p.space().names().to_vec(),
        }
    }

    /// A witness that is a plain number rather than a polynomial.
    pub fn scalar(label: impl Into<String>, value: impl fmt::Display) -> Self {
        Witness { label: label.into(), expr: value.to_string(), coords: Vec::new() }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.label, self.expr)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckEntry {
    pub check_id: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// Informational entries are reported but do not affect the exit status.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub informational: bool,
}

impl CheckEntry {
    pub fn new(check_id: impl Into<String>, verdict: Verdict) -> Self {
        CheckEntry {
            check_id: check_id.into(),
            verdict,
            witness: None,
            note: None,
            informational: false,
        }
    }

    pub fn pass(check_id: impl Into<String>) -> Self {
        Self::new(check_id, Verdict::Pass)
    }

    /// Pass when `witness` is `None`, otherwise fail carrying it.
    pub fn from_witness(check_id: impl Into<String>, witness: Option<Witness>) -> Self {
        let verdict = if witness.is_some() { Verdict::Fail } else { Verdict::Pass };
        CheckEntry { witness, ..Self::new(check_id, verdict) }
    }

    pub fn with_witness(mut self, w: Witness) -> Self {
        self.witness = Some(w);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn informational(mut self) -> Self {
        self.informational = true;
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub error: usize,
    /// Entries of any verdict that do not affect the exit status.
    pub informational: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CheckReport {
    entries: Vec<CheckEntry>,
}

#[derive(Serialize)]
struct ReportDoc<'a> {
    entries: &'a [CheckEntry],
    summary: Summary,
}

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, entry: CheckEntry) {
        self.entries.push(entry);
    }

    /// Appends `other`'s entries with `prefix` prepended to each id.
    pub fn extend_prefixed(&mut self, prefix: &str, other: CheckReport) {
        for mut e in other.entries {
            e.check_id = format!("{prefix}{}", e.check_id);
            self.entries.push(e);
        }
    }

    pub fn entries(&self) -> &[CheckEntry] {
        &self.entries
    }

    pub fn get(&self, check_id: &str) -> Option<&CheckEntry> {
        self.entries.iter().find(|e| e.check_id == check_id)
    }

    pub fn summary(&self) -> Summary {
        let mut s = Summary::default();
        for e in &self.entries {
            s.informational += usize::from(e.informational);
            match e.verdict {
                Verdict::Pass => s.pass += 1,
                Verdict::Fail => s.fail += 1,
                Verdict::Error => s.error += 1,
            }
        }
        s
    }

    /// True when every non-informational entry passed.
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.informational || e.passed())
    }

    pub fn to_json(&self) -> String {
        let doc = ReportDoc { entries: &self.entries, summary: self.summary() };
        serde_json::to_string_pretty(&doc).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let tag = if e.informational { " (info)" } else { "" };
            out.push_str(&format!("[{}] {}{}\n", e.verdict, e.check_id, tag));
            if let Some(w) = &e.witness {
                out.push_str(&format!("    witness: {w}\n"));
            }
            if let Some(n) = &e.note {
                out.push_str(&format!("    note: {n}\n"));
            }
        }
        let s = self.summary();
        out.push_str(&format!("summary: {} pass, {} fail, {} error", s.pass, s.fail, s.error));
        if s.informational > 0 {
            out.push_str(&format!(" ({} informational)", s.informational));
        }
        out.push('\n');
        out
    }
}
