//! Output assembly: every command produces one [`OutputRecord`] which is
//! serialized to JSON, CSV, or plain text. Counts are emitted as exact
//! decimal strings (never floats), and identical invocations produce
//! byte-identical output when the elapsed field is suppressed.

use clap::ValueEnum;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Format::Json => write!(f, "json"),
            Format::Csv => write!(f, "csv"),
            Format::Text => write!(f, "text"),
        }
    }
}

/// One row of a distribution table, with the count as a decimal string.
#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub k: usize,
    pub count: String,
}

/// Outcome of one named check inside a verification run.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Ok,
    Fail,
    Skipped,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Outcome::Ok => "ok",
            Outcome::Fail => "FAIL",
            Outcome::Skipped => "skipped",
        })
    }
}

impl Check {
    pub fn ok(name: impl Into<String>) -> Self {
        Check { name: name.into(), outcome: Outcome::Ok, detail: None }
    }

    pub fn ok_with(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check { name: name.into(), outcome: Outcome::Ok, detail: Some(detail.into()) }
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check { name: name.into(), outcome: Outcome::Fail, detail: Some(detail.into()) }
    }

    pub fn skipped(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check { name: name.into(), outcome: Outcome::Skipped, detail: Some(detail.into()) }
    }

    pub fn passed(&self) -> bool {
        self.outcome != Outcome::Fail
    }
}

/// Flattened audit counters (numbers that fit in u64 stay numeric; the
/// booleans report the verified inequalities).
#[derive(Debug, Clone, Serialize)]
pub struct AuditSummary {
    pub n: usize,
    pub k: usize,
    pub restriction: String,
    pub source_low: u64,
    pub source_high: u64,
    pub target: u64,
    pub domain_pairs: u64,
    pub defined: u64,
    pub undefined: u64,
    pub image_size: u64,
    pub injective: bool,
    pub target_intersecting_pairs: u64,
    pub intersecting_nonimage: u64,
    pub counting_step_holds: bool,
    pub product_inequality_holds: bool,
    pub closure_holds: bool,
    pub b_equals_d_pairs: u64,
    pub cross_junction_pairs: u64,
    pub bounce_junction_pairs: u64,
    pub specialized_mismatches: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EdgeRecord {
    pub dir: char,
    pub label: usize,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Payload {
    Table {
        n: usize,
        statistic: String,
        total: String,
        rows: Vec<TableRow>,
    },
    Verification {
        target: String,
        pass: bool,
        checks: Vec<Check>,
        #[serde(skip_serializing_if = "Vec::is_empty")]
        audits: Vec<AuditSummary>,
    },
    Render {
        path: String,
        edges: Vec<EdgeRecord>,
        lines: Vec<String>,
    },
}

/// The single record a command emits.
#[derive(Debug, Clone, Serialize)]
pub struct OutputRecord {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub payload: Payload,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

impl OutputRecord {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut out = serde_json::to_string_pretty(self).expect("serializable record");
                out.push('\n');
                out
            }
            Format::Csv => self.render_csv(),
            Format::Text => self.render_text(),
        }
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        match &self.payload {
            Payload::Table { n, rows, .. } => {
                out.push_str("n,k,count\n");
                for row in rows {
                    out.push_str(&format!("{n},{},{}\n", row.k, row.count));
                }
            }
            Payload::Verification { checks, .. } => {
                out.push_str("check,outcome\n");
                for check in checks {
                    out.push_str(&format!("{},{}\n", check.name, check.outcome));
                }
            }
            // A drawing has no tabular form; fall back to the text grid.
            Payload::Render { .. } => return self.render_text(),
        }
        out
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        match &self.payload {
            Payload::Table { n, statistic, total, rows } => {
                out.push_str(&format!("{statistic} distribution for n = {n}\n"));
                let width = rows.iter().map(|r| r.count.len()).max().unwrap_or(1);
                for row in rows {
                    out.push_str(&format!("  k = {:<2} {:>width$}\n", row.k, row.count));
                }
                out.push_str(&format!("  total  {total:>width$}\n"));
            }
            Payload::Verification { target, pass, checks, .. } => {
                for check in checks {
                    match &check.detail {
                        Some(detail) => {
                            out.push_str(&format!("{:7} {} — {detail}\n", check.outcome, check.name))
                        }
                        None => out.push_str(&format!("{:7} {}\n", check.outcome, check.name)),
                    }
                }
                out.push_str(&format!(
                    "{}: {}\n",
                    target,
                    if *pass { "PASS" } else { "FAIL" }
                ));
            }
            Payload::Render { path, lines, .. } => {
                out.push_str(&format!("{path}\n"));
                for line in lines {
                    out.push_str(line);
                    out.push('\n');
                }
            }
        }
        if let Some(ms) = self.elapsed_ms {
            out.push_str(&format!("elapsed: {ms} ms\n"));
        }
        out
    }
}
