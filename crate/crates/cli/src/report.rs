//! Run reports and their JSON, CSV, Markdown and plain-text renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub status: Status,
    /// Values backing the verdict, as exact strings.
    pub witness: BTreeMap<String, String>,
}

impl CheckRecord {
    pub fn new(id: impl Into<String>, ok: bool) -> Self {
        CheckRecord {
            id: id.into(),
            status: Status::from_bool(ok),
            witness: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.witness.insert(key.to_string(), value.to_string());
        self
    }

    /// A check comparing two exact values.
    pub fn equal(id: impl Into<String>, expected: impl ToString, got: impl ToString) -> Self {
        let (e, g) = (expected.to_string(), got.to_string());
        CheckRecord::new(id, e == g).with("expected", e).with("got", g)
    }

    fn witness_line(&self) -> String {
        self.witness
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";")
    }
}

/// Rows of exact strings under named columns.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub suite: String,
    pub checks: Vec<CheckRecord>,
    #[serde(skip_serializing_if = "Table::is_empty")]
    pub table: Table,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
    #[serde(skip)]
    pub summary: Vec<String>,
    pub exit_status: i32,
}

impl RunReport {
    pub fn new(suite: impl Into<String>) -> Self {
        RunReport {
            suite: suite.into(),
            checks: Vec::new(),
            table: Table::default(),
            detail: None,
            summary: Vec::new(),
            exit_status: 0,
        }
    }

    pub fn check(&mut self, c: CheckRecord) {
        self.checks.push(c);
        self.exit_status = i32::from(!self.passed());
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn detail(&mut self, v: &impl Serialize) -> Result<(), CliError> {
        self.detail = Some(serde_json::to_value(v)?);
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
    Md,
}

fn sort_keys(v: Value) -> Value {
    match v {
        Value::Object(map) => {
            let sorted: BTreeMap<String, Value> = map.into_iter().map(|(k, v)| (k, sort_keys(v))).collect();
            Value::Object(sorted.into_iter().collect())
        }
        Value::Array(items) => Value::Array(items.into_iter().map(sort_keys).collect()),
        other => other,
    }
}

fn render_json(r: &RunReport) -> Result<String, CliError> {
    let v = sort_keys(serde_json::to_value(r)?);
    Ok(serde_json::to_string_pretty(&v)? + "\n")
}

fn render_csv(r: &RunReport) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    if r.table.is_empty() {
        w.write_record(["id", "status", "witness"])?;
        for c in &r.checks {
            w.write_record([c.id.as_str(), c.status.as_str(), &c.witness_line()])?;
        }
    } else {
        w.write_record(&r.table.columns)?;
        for row in &r.table.rows {
            w.write_record(row)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
}

fn md_table(columns: &[String], rows: &[Vec<String>]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "| {} |", columns.join(" | "));
    let _ = writeln!(s, "|{}", "---|".repeat(columns.len()));
    for row in rows {
        let _ = writeln!(s, "| {} |", row.join(" | "));
    }
    s
}

fn check_rows(r: &RunReport) -> Vec<Vec<String>> {
    r.checks
        .iter()
        .map(|c| vec![c.id.clone(), c.status.as_str().to_string(), c.witness_line()])
        .collect()
}

fn render_md(r: &RunReport) -> String {
    let mut s = format!("## {}\n\n", r.suite);
    for line in &r.summary {
        let _ = writeln!(s, "{line}\n");
    }
    if !r.table.is_empty() {
        s += &md_table(&r.table.columns, &r.table.rows);
        s.push('\n');
    }
    if !r.checks.is_empty() {
        let cols = ["check".to_string(), "status".into(), "witness".into()];
        s += &md_table(&cols, &check_rows(r));
        let _ = writeln!(s, "\nresult: {}", Status::from_bool(r.passed()).as_str());
    }
    s
}

fn render_text(r: &RunReport) -> String {
    let mut s = String::new();
    if !r.summary.is_empty() {
        for line in &r.summary {
            let _ = writeln!(s, "{line}");
        }
    } else if !r.table.is_empty() {
        let _ = writeln!(s, "{}", r.table.columns.join("\t"));
        for row in &r.table.rows {
            let _ = writeln!(s, "{}", row.join("\t"));
        }
    }
    for c in &r.checks {
        let w = c.witness_line();
        let _ = writeln!(s, "{} {}{}", c.status.as_str(), c.id, if w.is_empty() { String::new() } else { format!(" {w}") });
    }
    if !r.checks.is_empty() {
        let failed = r.checks.iter().filter(|c| c.status == Status::Fail).count();
        let _ = writeln!(s, "{}: {} checks, {failed} failed", r.suite, r.checks.len());
    }
    s
}

pub fn render(r: &RunReport, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => render_json(r),
        Format::Csv => render_csv(r),
        Format::Md => Ok(render_md(r)),
        Format::Text => Ok(render_text(r)),
    }
}

/// Render `r` and write it to `path`, or to standard output.
pub fn emit_report(r: &RunReport, format: Format, path: Option<&Path>) -> Result<(), CliError> {
    let s = render(r, format)?;
    match path {
        Some(p) => std::fs::write(p, s).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{s}");
            Ok(())
        }
    }
}
