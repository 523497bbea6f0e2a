use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::cv::EvalReport;
use crate::corpus::{write_file, SpeechAct};
use crate::error::Result;

/// Table columns: the six classes in report order, then the weighted average.
pub const COLUMNS: [&str; 7] = ["As", "Ex", "Qu", "Rc", "Rq", "Mis", "Avg"];

/// Content hashes identifying what a report was computed from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub corpus: String,
    pub lexicons: String,
    pub config: String,
    /// The effective configuration the `config` hash was computed over.
    pub effective_config: serde_json::Value,
}

impl Provenance {
    pub fn new(corpus: String, lexicons: String, config: &impl Serialize) -> Self {
        let effective_config = serde_json::to_value(config).expect("config serializes");
        let hash = hex::encode(Sha256::digest(effective_config.to_string().as_bytes()));
        Provenance {
            corpus,
            lexicons,
            config: hash,
            effective_config,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub label: String,
    /// F1 per class in [`COLUMNS`] order, then the weighted average.
    pub values: Vec<f64>,
}

impl ReportRow {
    pub fn from_report(label: impl Into<String>, report: &EvalReport) -> Self {
        let mut values: Vec<f64> = SpeechAct::REPORT_ORDER
            .iter()
            .map(|&c| report.scores.get(c).f1)
            .collect();
        values.push(report.scores.weighted_f1);
        ReportRow {
            label: label.into(),
            values,
        }
    }

    pub fn average(&self) -> f64 {
        self.values[COLUMNS.len() - 1]
    }
}

/// A Table-shaped report: rows are configurations, columns classes plus Avg.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub title: String,
    pub provenance: Provenance,
    pub columns: Vec<String>,
    pub rows: Vec<ReportRow>,
    pub details: Vec<EvalReport>,
}

impl ReportDocument {
    pub fn new(title: impl Into<String>, provenance: Provenance) -> Self {
        ReportDocument {
            title: title.into(),
            provenance,
            columns: COLUMNS.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            details: Vec::new(),
        }
    }

    pub fn push(&mut self, label: impl Into<String>, report: EvalReport) {
        self.rows.push(ReportRow::from_report(label, &report));
        self.details.push(report);
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        write_file(path, self.to_json().as_bytes())
    }

    /// Fixed-width table with two-decimal scores.
    pub fn render_table(&self) -> String {
        let width = self
            .rows
            .iter()
            .map(|r| r.label.len())
            .max()
            .unwrap_or(0)
            .max(6);
        let mut out = String::new();
        writeln!(out, "{}", self.title).unwrap();
        write!(out, "{:<width$}", "").unwrap();
        for c in COLUMNS {
            write!(out, " {c:>5}").unwrap();
        }
        out.push('\n');
        for row in &self.rows {
            write!(out, "{:<width$}", row.label).unwrap();
            for v in &row.values {
                write!(out, " {v:>5.2}").unwrap();
            }
            out.push('\n');
        }
        for report in &self.details {
            for w in &report.warnings {
                writeln!(out, "warning: {w}").unwrap();
            }
        }
        out
    }
}
