//! One command result rendered as human text, JSON or CSV.

use std::fmt::Write as _;

use chainlab_core::logvalue::ExactLogValue;
use clap::ValueEnum;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
}

/// How the command ended, mapped onto the exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Outcome {
    Success,
    /// Some target could not be decided within the budget.
    Incomplete,
    /// A verifier found a counterexample.
    Violations,
}

impl Outcome {
    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Success => 0,
            Outcome::Violations => 2,
            Outcome::Incomplete => 3,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub outcome: Outcome,
    human: String,
    json: Value,
    csv_header: Vec<String>,
    csv_rows: Vec<Vec<String>>,
    csv_text: Option<String>,
}

impl Report {
    pub fn new(json: Value) -> Self {
        Report {
            outcome: Outcome::Success,
            human: String::new(),
            json,
            csv_header: Vec::new(),
            csv_rows: Vec::new(),
            csv_text: None,
        }
    }

    pub fn line(&mut self, text: impl AsRef<str>) -> &mut Self {
        self.human.push_str(text.as_ref());
        self.human.push('\n');
        self
    }

    pub fn field(&mut self, key: &str, value: impl std::fmt::Display) -> &mut Self {
        writeln!(self.human, "{key}: {value}").expect("writing to a string");
        self
    }

    pub fn header<S: ToString>(&mut self, columns: &[S]) -> &mut Self {
        self.csv_header = columns.iter().map(ToString::to_string).collect();
        self
    }

    pub fn row(&mut self, cells: Vec<String>) -> &mut Self {
        self.csv_rows.push(cells);
        self
    }

    pub fn set_json(&mut self, json: Value) -> &mut Self {
        self.json = json;
        self
    }

    /// Replaces the header and rows with ready-made CSV.
    pub fn csv_text(&mut self, text: String) -> &mut Self {
        self.csv_text = Some(text);
        self
    }

    pub fn with_outcome(mut self, outcome: Outcome) -> Self {
        self.outcome = self.outcome.max(outcome);
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Human => self.human.clone(),
            Format::Json => {
                let mut text = serde_json::to_string_pretty(&self.json).expect("json values serialize");
                text.push('\n');
                text
            }
            Format::Csv if self.csv_text.is_some() => self.csv_text.clone().unwrap_or_default(),
            Format::Csv => {
                let mut writer = csv::Writer::from_writer(Vec::new());
                writer.write_record(&self.csv_header).expect("writing to memory");
                for row in &self.csv_rows {
                    writer.write_record(row).expect("writing to memory");
                }
                String::from_utf8(writer.into_inner().expect("flush to memory")).expect("csv is utf-8")
            }
        }
    }
}

/// Six-place decimal alongside the exact `(c, m, scale)` encoding.
pub fn value_json(v: &ExactLogValue) -> Value {
    json!({ "decimal": v.to_fixed(6), "exact": v.encoding() })
}
