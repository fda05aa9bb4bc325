//! Report rows and their CSV / JSON renderings.

use std::io::Write;

use qreality::{Assertion, Check};
use serde::Serialize;

use crate::config::Format;
use crate::sweep::SweepRow;

/// Digits after the point in scientific notation: 12 significant digits.
const PRECISION: usize = 11;

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub scenario: String,
    pub assertion_id: String,
    pub paper_anchor: String,
    pub measured: f64,
    pub expected: f64,
    pub slack: f64,
    pub pass: bool,
    pub kind: &'static str,
    /// Position of the sample within its suite, for ordering.
    pub sample: Option<usize>,
    base_id: String,
}

impl ReportRow {
    pub fn from_assertion(scenario: &str, a: &Assertion, sample: Option<usize>) -> Self {
        let kind = match a.check {
            Check::Identity { .. } => "identity",
            Check::AtLeast { .. } => "at_least",
            Check::AtMost { .. } => "at_most",
        };
        ReportRow {
            scenario: scenario.to_string(),
            assertion_id: match sample {
                Some(i) => format!("{}[{i}]", a.id),
                None => a.id.clone(),
            },
            paper_anchor: a.anchor.clone(),
            measured: a.measured,
            expected: a.expected,
            slack: a.slack(),
            pass: a.passed(),
            kind,
            sample,
            base_id: a.id.clone(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub rows: Vec<ReportRow>,
    pub table: Option<Vec<SweepRow>>,
}

impl Report {
    /// Orders rows by scenario, then assertion id, then sample index.
    pub fn sort(&mut self) {
        self.rows
            .sort_by(|a, b| (&a.scenario, &a.base_id, a.sample).cmp(&(&b.scenario, &b.base_id, b.sample)));
    }

    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| !r.pass).count()
    }

    pub fn write(&self, format: Format, out: impl Write) -> std::io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Structured => self.write_structured(out),
        }
    }

    fn write_csv(&self, out: impl Write) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "scenario",
            "assertion_id",
            "paper_anchor",
            "measured",
            "expected",
            "slack",
            "pass",
        ])?;
        for r in &self.rows {
            w.write_record([
                r.scenario.as_str(),
                r.assertion_id.as_str(),
                r.paper_anchor.as_str(),
                &number(r.measured),
                &number(r.expected),
                &number(r.slack),
                if r.pass { "true" } else { "false" },
            ])?;
        }
        w.flush()
    }

    fn write_structured(&self, mut out: impl Write) -> std::io::Result<()> {
        #[derive(Serialize)]
        struct Row<'a> {
            scenario: &'a str,
            assertion_id: &'a str,
            paper_anchor: &'a str,
            kind: &'a str,
            measured: f64,
            expected: f64,
            slack: f64,
            pass: bool,
        }
        #[derive(Serialize)]
        struct Doc<'a> {
            passed: bool,
            rows: Vec<Row<'a>>,
            #[serde(skip_serializing_if = "Option::is_none")]
            table: Option<Vec<SweepRow>>,
        }
        let doc = Doc {
            passed: self.all_passed(),
            rows: self
                .rows
                .iter()
                .map(|r| Row {
                    scenario: &r.scenario,
                    assertion_id: &r.assertion_id,
                    paper_anchor: &r.paper_anchor,
                    kind: r.kind,
                    measured: rounded(r.measured),
                    expected: rounded(r.expected),
                    slack: rounded(r.slack),
                    pass: r.pass,
                })
                .collect(),
            table: self.table.as_ref().map(|t| {
                t.iter()
                    .map(|s| SweepRow {
                        epsilon: rounded(s.epsilon),
                        delta_r: rounded(s.delta_r),
                        lower_bound: rounded(s.lower_bound),
                        fannes_bound: rounded(s.fannes_bound),
                        delta_info_s: rounded(s.delta_info_s),
                        delta_info_x: rounded(s.delta_info_x),
                        delta_mutual_sx: rounded(s.delta_mutual_sx),
                    })
                    .collect()
            }),
        };
        serde_json::to_writer_pretty(&mut out, &doc)?;
        writeln!(out)
    }
}

/// Scientific notation with 12 significant digits.
pub fn number(x: f64) -> String {
    format!("{x:.PRECISION$e}")
}

fn rounded(x: f64) -> f64 {
    number(x).parse().unwrap_or(x)
}
