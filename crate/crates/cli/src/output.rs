use std::path::Path;

use oscillab::experiments::verdict_report;

use crate::jobs::JobReport;
use crate::CliError;

/// Header plus string rows; rendered with a comma separator and '.' decimals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.header.len(), "row width");
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Vec<u8> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        w.into_inner().expect("in-memory flush")
    }
}

/// Shortest round-trip decimal form.
pub fn fmt_f(x: f64) -> String {
    if x.is_finite() {
        format!("{x}")
    } else {
        String::new()
    }
}

pub fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_f).unwrap_or_default()
}

/// 0 all verdicts pass (or there are none), 1 some fail, 3 inconclusive without failures.
pub fn exit_code(report: &JobReport) -> i32 {
    verdict_report(&report.outcomes).exit_code()
}

/// results.csv, summary.csv, config.json and any SVGs under `dir`.
pub fn write_outputs(report: &JobReport, dir: &Path) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io(format!("out: {}: {e}", dir.display()));
    std::fs::create_dir_all(dir).map_err(io)?;
    std::fs::write(dir.join("results.csv"), report.results.to_csv()).map_err(io)?;
    std::fs::write(dir.join("summary.csv"), report.summary.to_csv()).map_err(io)?;
    let mut cfg = report.config.clone();
    cfg.job = Some(report.job);
    cfg.out = None;
    let json = serde_json::to_string_pretty(&cfg).expect("config serializes");
    std::fs::write(dir.join("config.json"), json + "\n").map_err(io)?;
    for (name, body) in &report.svgs {
        std::fs::write(dir.join(name), body).map_err(io)?;
    }
    Ok(())
}
