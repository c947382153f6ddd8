use serde::{Deserialize, Serialize};

use super::config::Problem;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub name: String,
    pub avg_perf_ratio: f64,
    pub ci_plus: f64,
    pub ci_minus: f64,
    /// Expected cost (ski), profit (one-max) or completed length (contract).
    pub expected_value: f64,
    pub ev_ci_plus: f64,
    pub ev_ci_minus: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub problem: Problem,
    pub repetitions: usize,
    pub rows: Vec<ReportRow>,
}

impl ExperimentReport {
    pub fn row(&self, name: &str) -> Option<&ReportRow> {
        self.rows.iter().find(|r| r.name == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportFormat {
    Csv,
    Markdown,
}

fn value_label(problem: Problem) -> &'static str {
    match problem {
        Problem::Ski => "expected_cost",
        Problem::OneMax => "expected_profit",
        Problem::Contract => "expected_length",
    }
}

/// Formats with six significant digits, `%g` style.
pub fn format_sig(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return if v.is_nan() {
            "nan".into()
        } else if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{v:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if !(-4..6).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{m}e{sign}{:02}", exp.abs());
    }
    let decimals = (5 - exp).max(0) as usize;
    trim_zeros(&format!("{v:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn metric_rows(report: &ExperimentReport) -> Vec<(&'static str, Vec<f64>)> {
    let col = |f: fn(&ReportRow) -> f64| report.rows.iter().map(f).collect::<Vec<_>>();
    vec![
        ("avg_perf_ratio", col(|r| r.avg_perf_ratio)),
        ("ci_plus", col(|r| r.ci_plus)),
        ("ci_minus", col(|r| r.ci_minus)),
        (value_label(report.problem), col(|r| r.expected_value)),
        ("ev_ci_plus", col(|r| r.ev_ci_plus)),
        ("ev_ci_minus", col(|r| r.ev_ci_minus)),
    ]
}

/// Algorithms as columns, metrics as rows.
pub fn emit_report(report: &ExperimentReport, format: ReportFormat) -> String {
    let names: Vec<&str> = report.rows.iter().map(|r| r.name.as_str()).collect();
    match format {
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut header = vec!["metric"];
            header.extend(&names);
            w.write_record(&header).expect("in-memory write");
            if !report.rows.is_empty() {
                for (label, values) in metric_rows(report) {
                    let mut rec = vec![label.to_string()];
                    rec.extend(values.iter().map(|&v| format_sig(v)));
                    w.write_record(&rec).expect("in-memory write");
                }
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 output")
        }
        ReportFormat::Markdown => {
            let mut out = format!("| metric |{}\n", names.iter().map(|n| format!(" {n} |")).collect::<String>());
            out.push_str(&format!("|---|{}\n", "---:|".repeat(names.len())));
            if !report.rows.is_empty() {
                for (label, values) in metric_rows(report) {
                    let cells: Vec<String> = values.iter().map(|&v| format_sig(v)).collect();
                    out.push_str(&format!("| {label} | {} |\n", cells.join(" | ")));
                }
            }
            out
        }
    }
}
