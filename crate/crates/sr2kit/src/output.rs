//! On-disk artifacts: trace CSV, plot series and the summary document.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use sr2kit_core::IterationRecord;

use crate::io::IoError;

/// First line of every trace file. Bump the version when columns change.
pub const TRACE_MAGIC: &str = "# sr2kit trace v1";

pub const TRACE_COLUMNS: [&str; 15] = [
    "t",
    "epoch",
    "outcome",
    "accepted",
    "sigma",
    "rho",
    "step_norm_sq",
    "model_decrease",
    "sampled_before",
    "sampled_after",
    "full_objective",
    "nnz",
    "batch_size",
    "surrogate",
    "wall_time",
];

fn opt(v: Option<f64>) -> String {
    v.map_or_else(String::new, |v| v.to_string())
}

pub fn write_trace<W: Write>(writer: W, trace: &[IterationRecord], epoch_len: usize) -> Result<(), IoError> {
    let mut w = BufWriter::new(writer);
    writeln!(w, "{TRACE_MAGIC}")?;
    let mut csv = csv::Writer::from_writer(w);
    let csv_err = |e: csv::Error| IoError::Invalid(e.to_string());
    csv.write_record(TRACE_COLUMNS).map_err(csv_err)?;
    for r in trace {
        csv.write_record([
            r.t.to_string(),
            (r.t / epoch_len.max(1)).to_string(),
            r.outcome.as_str().to_owned(),
            u8::from(r.accepted()).to_string(),
            r.sigma.to_string(),
            opt(r.rho),
            r.step_norm_sq.to_string(),
            r.model_decrease.to_string(),
            r.sampled_before.to_string(),
            r.sampled_after.to_string(),
            opt(r.full_objective),
            r.nnz.to_string(),
            r.batch_size.to_string(),
            opt(r.surrogate),
            r.wall_time.to_string(),
        ])
        .map_err(csv_err)?;
    }
    csv.flush()?;
    Ok(())
}

/// Reads a trace back as string fields, checking the version line and header.
pub fn read_trace(path: &Path) -> Result<Vec<Vec<String>>, IoError> {
    let text = std::fs::read_to_string(path)?;
    let mut lines = text.lines();
    if lines.next() != Some(TRACE_MAGIC) {
        return Err(IoError::Parse {
            line: 1,
            msg: format!("{}: missing `{TRACE_MAGIC}`", path.display()),
        });
    }
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let header = rdr.headers().map_err(|e| IoError::Invalid(e.to_string()))?;
    if header.iter().ne(TRACE_COLUMNS) {
        return Err(IoError::Invalid(format!("{}: unexpected trace header", path.display())));
    }
    rdr.records()
        .map(|r| {
            r.map(|rec| rec.iter().map(str::to_owned).collect())
                .map_err(|e| IoError::Parse {
                    line: e.position().map_or(0, |p| p.line()),
                    msg: e.to_string(),
                })
        })
        .collect()
}

/// Two-column text with a `#` header line.
pub fn write_series(path: &Path, x_name: &str, y_name: &str, rows: &[(f64, f64)]) -> Result<(), IoError> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "# {x_name} {y_name}")?;
    for (x, y) in rows {
        writeln!(w, "{x} {y}")?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_series(path: &Path) -> Result<Vec<(f64, f64)>, IoError> {
    let text = std::fs::read_to_string(path)?;
    let mut rows = Vec::new();
    for (k, line) in text.lines().enumerate() {
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let bad = || IoError::Parse {
            line: k as u64 + 1,
            msg: format!("{}: expected two numbers", path.display()),
        };
        let mut it = line.split_whitespace().map(str::parse::<f64>);
        match (it.next(), it.next(), it.next()) {
            (Some(Ok(a)), Some(Ok(b)), None) => rows.push((a, b)),
            _ => return Err(bad()),
        }
    }
    Ok(rows)
}

/// One matrix cell in `summary.json` and the cell's `meta.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub index: usize,
    pub cell: String,
    pub problem: String,
    pub solver: String,
    pub label: String,
    pub reg: String,
    pub lambda: Option<f64>,
    pub k: Option<usize>,
    pub seed: u64,
    pub status: String,
    pub error: Option<String>,
    pub iterations: usize,
    pub epochs: f64,
    pub stop_reason: Option<String>,
    pub initial_objective: Option<f64>,
    pub final_objective: Option<f64>,
    pub accuracy: Option<f64>,
    pub pct_zero: f64,
    #[serde(rename = "pct_below_1e-3")]
    pub pct_below_1e_3: f64,
    pub nnz: usize,
    pub dim: usize,
    pub sigma_final: Option<f64>,
    pub successes: usize,
    pub very_successes: usize,
    pub failures: usize,
    pub assumption_rejections: usize,
    pub stationarity: Option<f64>,
    pub support_recovered: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub version: u32,
    pub cells: Vec<SummaryRow>,
    pub skipped: Vec<String>,
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), IoError> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| IoError::Invalid(e.to_string()))?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, IoError> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| IoError::Parse {
        line: e.line() as u64,
        msg: format!("{}: {e}", path.display()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use sr2kit_core::Outcome;

    #[test]
    fn trace_round_trip() {
        let rec = IterationRecord {
            t: 3,
            outcome: Outcome::Successful,
            sigma: 1.5,
            rho: Some(0.25),
            step_norm_sq: 1e-3,
            model_decrease: 0.1,
            sampled_before: 2.0,
            sampled_after: 1.9,
            full_objective: None,
            nnz: 4,
            batch_size: 8,
            surrogate: None,
            wall_time: 0.01,
        };
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("trace.csv");
        write_trace(File::create(&path).unwrap(), &[rec], 2).unwrap();
        let rows = read_trace(&path).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0][1], "1");
        assert_eq!(rows[0][2], "successful");
        assert_eq!(rows[0][10], "");
        assert_eq!(rows[0].last().unwrap(), "0.01");
    }

    #[test]
    fn series_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.dat");
        let rows = vec![(1e-8, 50.0), (0.1, 96.5)];
        write_series(&path, "alpha", "sparsity", &rows).unwrap();
        assert_eq!(read_series(&path).unwrap(), rows);
    }
}
