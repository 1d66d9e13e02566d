//! The report envelope shared by every command and its two renderings.

use std::fmt::Write;

use fihom::input::ModuleFile;
use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

/// Outcome of the checks a command performed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Violation,
    Inconclusive,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Violation => 1,
            Status::Inconclusive => 3,
        }
    }

    /// The worse of two outcomes.
    pub fn and(self, other: Status) -> Status {
        match (self, other) {
            (Status::Violation, _) | (_, Status::Violation) => Status::Violation,
            (Status::Inconclusive, _) | (_, Status::Inconclusive) => Status::Inconclusive,
            _ => Status::Pass,
        }
    }
}

/// A flat table for the TSV rendering.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, header: &[&str]) -> Self {
        Table {
            name: name.to_string(),
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

pub struct Outcome {
    pub result: Value,
    pub tables: Vec<Table>,
    pub caveats: Vec<String>,
    pub status: Status,
}

#[derive(Serialize)]
struct Envelope<'a> {
    schema_version: u32,
    command: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    input: Option<&'a ModuleFile>,
    status: Status,
    caveats: &'a [String],
    result: &'a Value,
}

pub fn render_json(command: &str, input: Option<&ModuleFile>, outcome: &Outcome) -> String {
    let envelope = Envelope {
        schema_version: SCHEMA_VERSION,
        command,
        input,
        status: outcome.status,
        caveats: &outcome.caveats,
        result: &outcome.result,
    };
    let mut s = serde_json::to_string_pretty(&envelope).expect("reports serialize");
    s.push('\n');
    s
}

pub fn render_tsv(command: &str, outcome: &Outcome) -> String {
    let mut s = String::new();
    writeln!(s, "# schema_version\t{SCHEMA_VERSION}").unwrap();
    writeln!(s, "# command\t{command}").unwrap();
    for t in &outcome.tables {
        writeln!(s, "# table\t{}", t.name).unwrap();
        writeln!(s, "{}", t.header.join("\t")).unwrap();
        for r in &t.rows {
            writeln!(s, "{}", r.join("\t")).unwrap();
        }
    }
    for c in &outcome.caveats {
        writeln!(s, "# caveat\t{c}").unwrap();
    }
    let status = serde_json::to_value(outcome.status).unwrap();
    writeln!(s, "# status\t{}", status.as_str().unwrap()).unwrap();
    s
}
