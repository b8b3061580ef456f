//! Per-command reports and their JSON, CSV and text renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::script::Format;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Provenance {
    pub source: &'static str,
    pub operation: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CoefficientBlock {
    /// Dual Hilbert coefficients.
    pub c: Vec<i64>,
    /// Hilbert-Samuel coefficients.
    pub e: Vec<i64>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ReductionBlock {
    pub r: i64,
    /// Generators of the minimal reduction found.
    pub j: Vec<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CheckRow {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CommandReport {
    pub command: String,
    pub line: usize,
    pub inputs: BTreeMap<String, String>,
    pub provenance: Provenance,
    pub values: Vec<i64>,
    pub postulation: Option<i64>,
    pub coefficients: Option<CoefficientBlock>,
    pub series_numerator: Vec<i64>,
    pub reduction: Option<ReductionBlock>,
    pub phi: Option<i64>,
    pub quantities: BTreeMap<String, i64>,
    pub verdict: Option<&'static str>,
    pub checks: Vec<CheckRow>,
    pub witness: Vec<String>,
    pub error: Option<String>,
    pub field: String,
    pub seed: u64,
}

impl CommandReport {
    pub fn new(command: impl Into<String>, line: usize, operation: impl Into<String>, field: String, seed: u64) -> Self {
        CommandReport {
            command: command.into(),
            line,
            inputs: BTreeMap::new(),
            provenance: Provenance { source: "computed", operation: operation.into() },
            values: Vec::new(),
            postulation: None,
            coefficients: None,
            series_numerator: Vec::new(),
            reduction: None,
            phi: None,
            quantities: BTreeMap::new(),
            verdict: None,
            checks: Vec::new(),
            witness: Vec::new(),
            error: None,
            field,
            seed,
        }
    }

    pub fn input(mut self, key: &str, value: impl ToString) -> Self {
        self.inputs.insert(key.to_string(), value.to_string());
        self
    }

    /// Whether the command errored or a claim failed.
    pub fn failed(&self) -> bool {
        self.error.is_some() || self.verdict == Some("fail")
    }
}

pub fn render(reports: &[CommandReport], format: Format) -> String {
    match format {
        Format::Json => json(reports),
        Format::Csv => csv(reports),
        Format::Text => text(reports),
    }
}

fn json(reports: &[CommandReport]) -> String {
    let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
    s.push('\n');
    s
}

/// Long format: one row per reported number.
fn csv(reports: &[CommandReport]) -> String {
    let mut out = String::from("line,command,quantity,n,value\n");
    for r in reports {
        let mut row = |q: &str, n: Option<usize>, v: &str| {
            let n = n.map(|n| n.to_string()).unwrap_or_default();
            let _ = writeln!(out, "{},{},{},{},{}", r.line, r.command, csv_field(q), n, csv_field(v));
        };
        for (n, v) in r.values.iter().enumerate() {
            row("value", Some(n), &v.to_string());
        }
        if let Some(p) = r.postulation {
            row("postulation", None, &p.to_string());
        }
        if let Some(c) = &r.coefficients {
            for (i, v) in c.c.iter().enumerate() {
                row("c", Some(i), &v.to_string());
            }
            for (i, v) in c.e.iter().enumerate() {
                row("e", Some(i), &v.to_string());
            }
        }
        for (i, v) in r.series_numerator.iter().enumerate() {
            row("series_numerator", Some(i), &v.to_string());
        }
        if let Some(red) = &r.reduction {
            row("r", None, &red.r.to_string());
        }
        if let Some(p) = r.phi {
            row("phi", None, &p.to_string());
        }
        for (k, v) in &r.quantities {
            row(k, None, &v.to_string());
        }
        if let Some(v) = r.verdict {
            row("verdict", None, v);
        }
        if let Some(e) = &r.error {
            row("error", None, e);
        }
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn text(reports: &[CommandReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let inputs: Vec<String> = r.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(out, "[line {}] {} {}", r.line, r.command, inputs.join(" "));
        if let Some(e) = &r.error {
            let _ = writeln!(out, "  error: {e}");
            continue;
        }
        if !r.values.is_empty() {
            let _ = writeln!(out, "  values: {:?}", r.values);
        }
        if let Some(p) = r.postulation {
            let _ = writeln!(out, "  postulation: {p}");
        }
        if let Some(c) = &r.coefficients {
            let _ = writeln!(out, "  c: {:?}", c.c);
            let _ = writeln!(out, "  e: {:?}", c.e);
        }
        if !r.series_numerator.is_empty() {
            let _ = writeln!(out, "  series numerator: {:?}", r.series_numerator);
        }
        if let Some(red) = &r.reduction {
            let _ = writeln!(out, "  reduction number: {} (J = ({}))", red.r, red.j.join(", "));
        }
        if let Some(p) = r.phi {
            let _ = writeln!(out, "  phi: {p}");
        }
        for (k, v) in &r.quantities {
            let _ = writeln!(out, "  {k}: {v}");
        }
        for c in &r.checks {
            let _ = writeln!(out, "  [{}] {}: {} vs {}", if c.ok { "ok" } else { "FAIL" }, c.name, c.lhs, c.rhs);
        }
        for w in &r.witness {
            let _ = writeln!(out, "  note: {w}");
        }
        if let Some(v) = r.verdict {
            let _ = writeln!(out, "  verdict: {v}");
        }
    }
    out
}
