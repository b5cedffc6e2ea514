//! Loading, normalizing and synthesizing datasets.

mod synth;

pub use synth::{synth, Shape, SynthSpec};

use std::collections::HashMap;
use std::io::Read;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::model::Dataset;

/// Which CSV column, if any, holds class labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabelColumn {
    Index(usize),
    Name(String),
}

impl std::str::FromStr for LabelColumn {
    type Err = std::convert::Infallible;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s.parse::<usize>() {
            Ok(i) => LabelColumn::Index(i),
            Err(_) => LabelColumn::Name(s.to_string()),
        })
    }
}

#[derive(Debug, Clone)]
pub struct CsvOptions {
    pub has_header: bool,
    pub label_column: Option<LabelColumn>,
    pub delimiter: u8,
}

impl Default for CsvOptions {
    fn default() -> Self {
        Self {
            has_header: false,
            label_column: None,
            delimiter: b',',
        }
    }
}

/// Reads a numeric CSV file. The dataset is named after the file stem.
pub fn load_csv(path: impl AsRef<Path>, options: &CsvOptions) -> Result<Dataset> {
    let path = path.as_ref();
    let mut text = String::new();
    std::fs::File::open(path)?.read_to_string(&mut text)?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "dataset".into());
    parse_csv(&text, options).map(|d| d.with_name(name))
}

/// Parses CSV text. Error rows and columns are 0-based positions among data
/// records (the header is not counted).
pub fn parse_csv(text: &str, options: &CsvOptions) -> Result<Dataset> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(options.has_header)
        .delimiter(options.delimiter)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());

    let label_idx = match &options.label_column {
        None => None,
        Some(LabelColumn::Index(i)) => Some(*i),
        Some(LabelColumn::Name(name)) => {
            if !options.has_header {
                return Err(Error::InvalidParam(format!(
                    "label column {name:?} given by name but the file has no header"
                )));
            }
            let headers = reader.headers().map_err(csv_err)?;
            Some(headers.iter().position(|h| h == name).ok_or_else(|| {
                Error::InvalidParam(format!("no column named {name:?} in header"))
            })?)
        }
    };

    let mut width = None;
    let mut features = Vec::new();
    let mut raw_labels = Vec::new();
    let mut rows = 0usize;
    for (row, record) in reader.records().enumerate() {
        let record = record.map_err(csv_err)?;
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        let expected = *width.get_or_insert(record.len());
        if record.len() != expected {
            return Err(Error::RaggedRows {
                row,
                expected,
                found: record.len(),
            });
        }
        if let Some(l) = label_idx {
            if l >= expected {
                return Err(Error::InvalidParam(format!(
                    "label column {l} out of range for {expected} columns"
                )));
            }
        }
        for (col, field) in record.iter().enumerate() {
            if Some(col) == label_idx {
                raw_labels.push(field.to_string());
                continue;
            }
            let v: f64 = field.parse().map_err(|_| Error::Parse {
                row,
                col,
                msg: format!("not a number: {field:?}"),
            })?;
            if !v.is_finite() {
                return Err(Error::Parse {
                    row,
                    col,
                    msg: format!("non-finite value {field:?}"),
                });
            }
            features.push(v);
        }
        rows += 1;
    }
    if rows == 0 {
        return Err(Error::Parse {
            row: 0,
            col: 0,
            msg: "no data rows".into(),
        });
    }
    let m = width.unwrap_or(0) - usize::from(label_idx.is_some());
    if m == 0 {
        return Err(Error::Parse {
            row: 0,
            col: 0,
            msg: "no feature columns".into(),
        });
    }
    let labels = label_idx.map(|_| {
        let mut ids: HashMap<String, usize> = HashMap::new();
        raw_labels
            .into_iter()
            .map(|l| {
                let next = ids.len();
                *ids.entry(l).or_insert(next)
            })
            .collect()
    });
    Dataset::new("dataset", rows, m, features, labels)
}

fn csv_err(e: csv::Error) -> Error {
    let row = e.position().map_or(0, |p| p.record() as usize);
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Parse {
            row,
            col: 0,
            msg: format!("{other:?}"),
        },
    }
}

/// Writes features (and labels, as a trailing `label` column) with a header row.
/// Values are printed in shortest round-trip form.
pub fn write_csv(dataset: &Dataset, path: impl AsRef<Path>) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    let mut header: Vec<String> = (0..dataset.m()).map(|j| format!("x{j}")).collect();
    if dataset.labels().is_some() {
        header.push("label".into());
    }
    w.write_record(&header).map_err(csv_err)?;
    for i in 0..dataset.n() {
        let mut rec: Vec<String> = dataset.row(i).iter().map(|v| format!("{v:?}")).collect();
        if let Some(l) = dataset.labels() {
            rec.push(l[i].to_string());
        }
        w.write_record(&rec).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

/// Rescales every column to `[0, 1]`; constant columns become 0.
pub fn minmax_normalize(dataset: &Dataset) -> Dataset {
    let (n, m) = (dataset.n(), dataset.m());
    let mut lo = vec![f64::INFINITY; m];
    let mut hi = vec![f64::NEG_INFINITY; m];
    for i in 0..n {
        for (j, &v) in dataset.row(i).iter().enumerate() {
            lo[j] = lo[j].min(v);
            hi[j] = hi[j].max(v);
        }
    }
    let mut features = Vec::with_capacity(n * m);
    for i in 0..n {
        for (j, &v) in dataset.row(i).iter().enumerate() {
            let span = hi[j] - lo[j];
            features.push(if span > 0.0 { (v - lo[j]) / span } else { 0.0 });
        }
    }
    Dataset::new(
        dataset.name(),
        n,
        m,
        features,
        dataset.labels().map(<[usize]>::to_vec),
    )
    .expect("rescaling preserves shape and finiteness")
}

/// SHA-256 over the shape and the little-endian bytes of every feature value.
pub fn checksum(dataset: &Dataset) -> String {
    let mut h = Sha256::new();
    h.update((dataset.n() as u64).to_le_bytes());
    h.update((dataset.m() as u64).to_le_bytes());
    for v in dataset.features() {
        h.update(v.to_le_bytes());
    }
    hex::encode(h.finalize())
}
