//! Dataset loaders and writers (CSV, LIBSVM) and the flat model file.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use sr2kit_core::linalg::Matrix;
use sr2kit_core::Dataset;

pub const MODEL_MAGIC: &str = "# sr2kit model v1";

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Open { path: String, source: std::io::Error },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("line {line}: {msg}")]
    Parse { line: u64, msg: String },
    #[error("{0}")]
    Invalid(String),
}

fn parse_err(line: u64, msg: impl Into<String>) -> IoError {
    IoError::Parse { line, msg: msg.into() }
}

fn open(path: &Path) -> Result<File, IoError> {
    File::open(path).map_err(|source| IoError::Open {
        path: path.display().to_string(),
        source,
    })
}

fn finite(v: f64, line: u64) -> Result<f64, IoError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(parse_err(line, format!("non-finite value {v}")))
    }
}

/// Comma-separated rows with the target in the last column. A first row with any
/// non-numeric field is taken as a header and skipped.
pub fn read_csv<R: Read>(reader: R) -> Result<Dataset, IoError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(reader);
    let mut features = Vec::new();
    let mut targets = Vec::new();
    let mut width = None;
    for (k, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_err(line, e.to_string())
        })?;
        let line = record.position().map_or(k as u64 + 1, |p| p.line());
        let parsed: Result<Vec<f64>, _> = record.iter().map(str::parse::<f64>).collect();
        let row = match parsed {
            Ok(row) => row,
            Err(_) if k == 0 => continue,
            Err(e) => return Err(parse_err(line, format!("{e} in {:?}", record.as_slice()))),
        };
        if row.len() < 2 {
            return Err(parse_err(line, "need at least one feature and a target"));
        }
        match width {
            None => width = Some(row.len()),
            Some(w) if w != row.len() => {
                return Err(parse_err(line, format!("expected {w} fields, found {}", row.len())))
            }
            _ => {}
        }
        for v in &row {
            finite(*v, line)?;
        }
        let (x, y) = row.split_at(row.len() - 1);
        features.extend_from_slice(x);
        targets.push(y[0]);
    }
    let Some(w) = width else {
        return Err(IoError::Invalid("no data rows".into()));
    };
    let d = w - 1;
    Dataset::new(Matrix::from_row_major(targets.len(), d, features), targets)
        .map_err(|e| IoError::Invalid(e.to_string()))
}

/// `label idx:value ...` with 1-based indices. `dim` fixes the feature count;
/// otherwise the largest index seen is used.
pub fn read_libsvm<R: Read>(reader: R, dim: Option<usize>) -> Result<Dataset, IoError> {
    let mut rows: Vec<Vec<(usize, f64)>> = Vec::new();
    let mut targets = Vec::new();
    let mut max_index = 0;
    for (k, line) in BufReader::new(reader).lines().enumerate() {
        let line_no = k as u64 + 1;
        let line = line?;
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut fields = content.split_whitespace();
        let label = fields.next().unwrap_or_default();
        let label: f64 = label
            .parse()
            .map_err(|_| parse_err(line_no, format!("bad label {label:?}")))?;
        targets.push(finite(label, line_no)?);
        let mut row = Vec::new();
        let mut last = 0;
        for field in fields {
            let (idx, val) = field
                .split_once(':')
                .ok_or_else(|| parse_err(line_no, format!("expected index:value, found {field:?}")))?;
            let idx: usize = idx
                .parse()
                .map_err(|_| parse_err(line_no, format!("bad index {idx:?}")))?;
            if idx == 0 {
                return Err(parse_err(line_no, "indices are 1-based"));
            }
            if idx <= last {
                return Err(parse_err(line_no, "indices must be strictly increasing"));
            }
            if let Some(d) = dim {
                if idx > d {
                    return Err(parse_err(line_no, format!("index {idx} exceeds dimension {d}")));
                }
            }
            let val: f64 = val
                .parse()
                .map_err(|_| parse_err(line_no, format!("bad value {val:?}")))?;
            row.push((idx - 1, finite(val, line_no)?));
            last = idx;
        }
        max_index = max_index.max(last);
        rows.push(row);
    }
    let d = dim.unwrap_or(max_index);
    if rows.is_empty() || d == 0 {
        return Err(IoError::Invalid("no data rows or no features".into()));
    }
    let mut m = vec![0.0; rows.len() * d];
    for (i, row) in rows.iter().enumerate() {
        for &(j, v) in row {
            m[i * d + j] = v;
        }
    }
    Dataset::new(Matrix::from_row_major(rows.len(), d, m), targets)
        .map_err(|e| IoError::Invalid(e.to_string()))
}

pub fn write_csv<W: Write>(writer: W, data: &Dataset) -> Result<(), IoError> {
    let mut w = csv::Writer::from_writer(writer);
    let mut buf = Vec::with_capacity(data.num_features() + 1);
    for i in 0..data.len() {
        buf.clear();
        buf.extend(data.features.row(i).iter().map(f64::to_string));
        buf.push(data.targets[i].to_string());
        w.write_record(&buf).map_err(|e| IoError::Invalid(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

/// Writes every nonzero with its 1-based index.
pub fn write_libsvm<W: Write>(writer: W, data: &Dataset) -> Result<(), IoError> {
    let mut w = BufWriter::new(writer);
    for i in 0..data.len() {
        write!(w, "{}", data.targets[i])?;
        for (j, v) in data.features.row(i).iter().enumerate() {
            if *v != 0.0 {
                write!(w, " {}:{}", j + 1, v)?;
            }
        }
        writeln!(w)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DataFormat {
    Csv,
    Libsvm,
}

impl DataFormat {
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("svm" | "libsvm" | "svmlight") => DataFormat::Libsvm,
            _ => DataFormat::Csv,
        }
    }
}

pub fn load_dataset(path: &Path, format: DataFormat, dim: Option<usize>) -> Result<Dataset, IoError> {
    let file = open(path)?;
    let tag = |e: IoError| match e {
        IoError::Parse { line, msg } => IoError::Parse {
            line,
            msg: format!("{}: {msg}", path.display()),
        },
        other => other,
    };
    match format {
        DataFormat::Csv => read_csv(file).map_err(tag),
        DataFormat::Libsvm => read_libsvm(file, dim).map_err(tag),
    }
}

/// Model file: a magic line, `dim <n>`, then one value per line.
pub fn write_model<W: Write>(writer: W, x: &[f64]) -> Result<(), IoError> {
    let mut w = BufWriter::new(writer);
    writeln!(w, "{MODEL_MAGIC}")?;
    writeln!(w, "dim {}", x.len())?;
    for v in x {
        writeln!(w, "{v}")?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_model<R: Read>(reader: R) -> Result<Vec<f64>, IoError> {
    let mut dim = None;
    let mut values = Vec::new();
    for (k, line) in BufReader::new(reader).lines().enumerate() {
        let line_no = k as u64 + 1;
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if dim.is_none() {
            let n = line
                .strip_prefix("dim")
                .map(str::trim)
                .and_then(|s| s.parse::<usize>().ok())
                .ok_or_else(|| parse_err(line_no, "expected a `dim <n>` header"))?;
            dim = Some(n);
            values.reserve(n);
            continue;
        }
        let v: f64 = line
            .parse()
            .map_err(|_| parse_err(line_no, format!("bad value {line:?}")))?;
        values.push(finite(v, line_no)?);
    }
    match dim {
        None => Err(IoError::Invalid("model file has no dimension header".into())),
        Some(n) if n != values.len() => Err(IoError::Invalid(format!(
            "header says dim {n} but {} values follow",
            values.len()
        ))),
        Some(_) => Ok(values),
    }
}

pub fn load_model(path: &Path) -> Result<Vec<f64>, IoError> {
    read_model(open(path)?)
}
