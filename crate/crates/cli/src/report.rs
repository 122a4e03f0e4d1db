//! Run reports and their markdown, JSON and CSV renderings.
//!
//! All three renderings carry the same data. CSV uses a long layout, one
//! record per datum: `section,name,row,value`.

use std::fmt::Write as _;
use std::time::Duration;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Markdown,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetUsage {
    pub nodes: usize,
    pub budget: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub verdicts: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<BudgetUsage>,
    /// Only filled in with `--timing`, so that reports stay byte-identical
    /// across runs by default.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        RunReport {
            command: command.into(),
            parameters: Vec::new(),
            columns: Vec::new(),
            rows: Vec::new(),
            verdicts: Vec::new(),
            budget: None,
            elapsed_ms: None,
        }
    }

    pub fn param(&mut self, name: &str, value: impl ToString) -> &mut Self {
        self.parameters.push((name.to_string(), value.to_string()));
        self
    }

    pub fn columns(&mut self, names: &[&str]) -> &mut Self {
        self.columns = names.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn row(&mut self, cells: Vec<String>) -> &mut Self {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
        self
    }

    pub fn verdict(&mut self, name: &str, value: impl ToString) -> &mut Self {
        self.verdicts.push((name.to_string(), value.to_string()));
        self
    }

    pub fn budget(&mut self, nodes: usize, budget: usize) -> &mut Self {
        self.budget = Some(BudgetUsage { nodes, budget });
        self
    }

    pub fn timing(&mut self, elapsed: Duration) -> &mut Self {
        self.elapsed_ms = Some(elapsed.as_millis() as u64);
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Markdown => self.markdown(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Csv => self.csv(),
        }
    }

    fn markdown(&self) -> String {
        let mut out = String::new();
        writeln!(out, "# {}", self.command).unwrap();
        if !self.parameters.is_empty() {
            out.push('\n');
            table(&mut out, &["parameter", "value"], self.parameters.iter().map(|(k, v)| vec![k.clone(), v.clone()]));
        }
        if !self.columns.is_empty() {
            out.push('\n');
            let cols: Vec<&str> = self.columns.iter().map(String::as_str).collect();
            table(&mut out, &cols, self.rows.iter().cloned());
        }
        out.push('\n');
        for (k, v) in &self.verdicts {
            writeln!(out, "{k}: {v}").unwrap();
        }
        if let Some(b) = self.budget {
            writeln!(out, "nodes: {} of budget {}", b.nodes, b.budget).unwrap();
        }
        if let Some(ms) = self.elapsed_ms {
            writeln!(out, "elapsed: {ms} ms").unwrap();
        }
        out
    }

    /// Every datum as `(section, name, row, value)`.
    pub fn records(&self) -> Vec<[String; 4]> {
        let mut out = vec![["command".into(), "command".into(), String::new(), self.command.clone()]];
        for (k, v) in &self.parameters {
            out.push(["parameter".into(), k.clone(), String::new(), v.clone()]);
        }
        for (i, row) in self.rows.iter().enumerate() {
            for (c, cell) in self.columns.iter().zip(row) {
                out.push(["result".into(), c.clone(), i.to_string(), cell.clone()]);
            }
        }
        for (k, v) in &self.verdicts {
            out.push(["verdict".into(), k.clone(), String::new(), v.clone()]);
        }
        if let Some(b) = self.budget {
            out.push(["budget".into(), "nodes".into(), String::new(), b.nodes.to_string()]);
            out.push(["budget".into(), "budget".into(), String::new(), b.budget.to_string()]);
        }
        if let Some(ms) = self.elapsed_ms {
            out.push(["timing".into(), "elapsed_ms".into(), String::new(), ms.to_string()]);
        }
        out
    }

    fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["section", "name", "row", "value"]).expect("in-memory write");
        for r in self.records() {
            w.write_record(&r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
    }
}

fn table(out: &mut String, header: &[&str], rows: impl Iterator<Item = Vec<String>>) {
    let esc = |s: &str| s.replace('|', "\\|");
    writeln!(out, "| {} |", header.iter().map(|h| esc(h)).collect::<Vec<_>>().join(" | ")).unwrap();
    writeln!(out, "|{}", "---|".repeat(header.len())).unwrap();
    for r in rows {
        writeln!(out, "| {} |", r.iter().map(|c| esc(c)).collect::<Vec<_>>().join(" | ")).unwrap();
    }
}
