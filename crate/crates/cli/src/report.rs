use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

/// How far a verdict can be trusted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Caveat {
    /// decided exactly
    Exact,
    /// holds on the stated window only
    Windowed,
    /// a bounded search found nothing; not a refutation
    SearchExhausted,
}

impl Caveat {
    pub fn as_str(self) -> &'static str {
        match self {
            Caveat::Exact => "exact",
            Caveat::Windowed => "windowed",
            Caveat::SearchExhausted => "search-exhausted",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Finding {
    pub name: String,
    pub verdict: String,
    pub caveat: Caveat,
    pub summary: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matches_expected: Option<bool>,
    pub details: Value,
}

impl Finding {
    pub fn new(name: &str, verdict: impl Into<String>, caveat: Caveat, summary: impl Into<String>, details: impl Serialize) -> Self {
        Finding {
            name: name.into(),
            verdict: verdict.into(),
            caveat,
            summary: summary.into(),
            expected: None,
            matches_expected: None,
            details: serde_json::to_value(details).expect("report values serialize"),
        }
    }

    /// Pins the verdict a reproduction must produce.
    pub fn expect(mut self, expected: &str) -> Self {
        self.matches_expected = Some(self.verdict == expected);
        self.expected = Some(expected.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    /// the weakest caveat among the findings
    pub caveat: Caveat,
    pub findings: Vec<Finding>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl Report {
    pub fn new(command: &str, id: Option<&str>, findings: Vec<Finding>) -> Self {
        let caveat = findings.iter().map(|f| f.caveat).max().unwrap_or(Caveat::Exact);
        Report { schema_version: SCHEMA_VERSION, command: command.into(), id: id.map(Into::into), caveat, findings, wall_time_ms: None }
    }

    pub fn all_match(&self) -> bool {
        self.findings.iter().all(|f| f.matches_expected != Some(false))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let title = self.id.as_deref().map_or(self.command.clone(), |id| format!("{} {id}", self.command));
        let _ = writeln!(out, "{title} [{}]", self.caveat.as_str());
        for f in &self.findings {
            let _ = write!(out, "  {}: {} [{}]", f.name, f.verdict, f.caveat.as_str());
            match (&f.expected, f.matches_expected) {
                (Some(e), Some(true)) => {
                    let _ = write!(out, " expected {e}: ok");
                }
                (Some(e), _) => {
                    let _ = write!(out, " expected {e}: MISMATCH");
                }
                _ => {}
            }
            out.push('\n');
            if !f.summary.is_empty() {
                let _ = writeln!(out, "    {}", f.summary);
            }
        }
        if let Some(ms) = self.wall_time_ms {
            let _ = writeln!(out, "  wall time {ms} ms");
        }
        out
    }
}
