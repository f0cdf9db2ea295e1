//! Loading labelled series files and reading/writing feature tables.

use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::features::{feature_names, FeatureVector, N_FEATURES};
use crate::series::{FeatureValue, Marker, TimeSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Test,
}

/// Labelled series from one dataset. Series lengths may differ.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassifiedDataset {
    pub name: String,
    pub series: Vec<TimeSeries>,
    pub labels: Vec<String>,
    pub split: Option<Vec<Split>>,
}

impl ClassifiedDataset {
    pub fn len(&self) -> usize {
        self.series.len()
    }

    pub fn is_empty(&self) -> bool {
        self.series.is_empty()
    }

    fn join(name: String, train: Self, test: Self) -> Self {
        let split = std::iter::repeat_n(Split::Train, train.len())
            .chain(std::iter::repeat_n(Split::Test, test.len()))
            .collect();
        let mut series = train.series;
        series.extend(test.series);
        let mut labels = train.labels;
        labels.extend(test.labels);
        Self {
            name,
            series,
            labels,
            split: Some(split),
        }
    }
}

fn dataset_name(path: &Path) -> String {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    for suffix in ["_TRAIN", "_TEST"] {
        if let Some(base) = stem.strip_suffix(suffix) {
            return base.to_owned();
        }
    }
    stem
}

/// Reads a file where each line is a label followed by samples, separated
/// by tabs or commas (detected from the first data line).
pub fn load_ucr_tsv(path: &Path) -> Result<ClassifiedDataset> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let malformed = |line: usize, reason: String| Error::MalformedLine {
        path: path.to_path_buf(),
        line,
        reason,
    };
    let mut delim = None;
    let mut series = Vec::new();
    let mut labels = Vec::new();
    for (k, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        let lineno = k + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let d = *delim.get_or_insert(if line.contains('\t') { '\t' } else { ',' });
        let mut tokens: Vec<&str> = line.split(d).map(str::trim).collect();
        while tokens.len() > 1 && tokens.last() == Some(&"") {
            tokens.pop();
        }
        let (label, rest) = tokens.split_first().expect("split yields at least one token");
        if label.is_empty() {
            return Err(malformed(lineno, "missing label".into()));
        }
        if rest.is_empty() {
            return Err(malformed(lineno, "no samples after the label".into()));
        }
        let mut samples = Vec::with_capacity(rest.len());
        for tok in rest {
            match tok.parse::<f64>() {
                Ok(v) if v.is_finite() => samples.push(v),
                _ => return Err(malformed(lineno, format!("`{tok}` is not a finite number"))),
            }
        }
        labels.push((*label).to_owned());
        series.push(TimeSeries::new(samples).map_err(|e| malformed(lineno, e.to_string()))?);
    }
    if series.is_empty() {
        return Err(Error::EmptyFile(path.to_path_buf()));
    }
    Ok(ClassifiedDataset {
        name: dataset_name(path),
        series,
        labels,
        split: None,
    })
}

fn partner(path: &Path) -> Option<PathBuf> {
    let stem = path.file_stem()?.to_str()?;
    let other = if let Some(b) = stem.strip_suffix("_TRAIN") {
        format!("{b}_TEST")
    } else {
        format!("{}_TRAIN", stem.strip_suffix("_TEST")?)
    };
    let mut p = path.with_file_name(other);
    if let Some(ext) = path.extension() {
        p.set_extension(ext);
    }
    p.exists().then_some(p)
}

/// Loads a file and, when it is one half of a `_TRAIN`/`_TEST` pair whose
/// partner exists, both halves with split flags (train rows first).
pub fn load_dataset(path: &Path) -> Result<ClassifiedDataset> {
    let Some(other) = partner(path) else {
        return load_ucr_tsv(path);
    };
    let is_train = path
        .file_stem()
        .is_some_and(|s| s.to_string_lossy().ends_with("_TRAIN"));
    let (train, test) = if is_train { (path.to_path_buf(), other) } else { (other, path.to_path_buf()) };
    Ok(ClassifiedDataset::join(dataset_name(path), load_ucr_tsv(&train)?, load_ucr_tsv(&test)?))
}

/// Every dataset in a directory, sorted by file name, with train/test pairs
/// merged into one dataset.
pub fn load_dataset_dir(dir: &Path) -> Result<Vec<ClassifiedDataset>> {
    let entries = std::fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut files: Vec<PathBuf> = Vec::new();
    for e in entries {
        let p = e.map_err(|e| Error::io(dir, e))?.path();
        let data_ext = p
            .extension()
            .is_some_and(|x| matches!(x.to_str(), Some("tsv" | "csv" | "txt")));
        if p.is_file() && data_ext {
            files.push(p);
        }
    }
    files.sort();
    let mut out = Vec::new();
    for p in &files {
        let is_test_half = p.file_stem().is_some_and(|s| s.to_string_lossy().ends_with("_TEST"));
        if is_test_half && partner(p).is_some() {
            continue;
        }
        out.push(load_dataset(p)?);
    }
    if out.is_empty() {
        return Err(Error::EmptyFile(dir.to_path_buf()));
    }
    Ok(out)
}

/// Output format of a feature table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableFormat {
    Csv,
    Json,
}

/// Feature vectors with optional per-row labels.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureTable {
    pub labels: Option<Vec<String>>,
    pub vectors: Vec<FeatureVector>,
}

fn flag_string(v: &FeatureVector) -> String {
    v.values()
        .iter()
        .map(|x| x.marker().map_or('.', Marker::code))
        .collect()
}

fn parse_row(values: &[&str], flags: &str, row: usize) -> std::result::Result<FeatureVector, String> {
    let codes: Vec<char> = flags.chars().collect();
    if codes.len() != N_FEATURES {
        return Err(format!("row {row}: flags must have {N_FEATURES} codes"));
    }
    let mut out = [FeatureValue::Special(Marker::DegenerateInput); N_FEATURES];
    for (k, (cell, code)) in values.iter().zip(&codes).enumerate() {
        out[k] = match (code, Marker::from_code(*code)) {
            ('.', _) => FeatureValue::Value(
                cell.parse::<f64>()
                    .map_err(|_| format!("row {row}: `{cell}` is not a number"))?,
            ),
            (_, Some(m)) if cell.is_empty() => FeatureValue::Special(m),
            _ => return Err(format!("row {row}: invalid cell `{cell}` with flag `{code}`")),
        };
    }
    Ok(FeatureVector::new(out))
}

/// Writes the table as CSV or JSON.
///
/// CSV: optional `label` column, the 22 feature columns (empty for special
/// values) and a `flags` column of one code per feature ('.', 'D' or 'N').
/// JSON: an array of records with `label`, `features` (null for special
/// values) and `flags`.
pub fn write_feature_table(table: &FeatureTable, out: impl Write, format: TableFormat) -> Result<()> {
    let io_err = |m: String| Error::IoFailure {
        path: PathBuf::from("<output>"),
        message: m,
    };
    if let Some(l) = &table.labels {
        if l.len() != table.vectors.len() {
            return Err(Error::LengthMismatch {
                left: l.len(),
                right: table.vectors.len(),
            });
        }
    }
    let names = feature_names();
    match format {
        TableFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let mut header: Vec<&str> = Vec::with_capacity(N_FEATURES + 2);
            if table.labels.is_some() {
                header.push("label");
            }
            header.extend(names);
            header.push("flags");
            w.write_record(&header).map_err(|e| io_err(e.to_string()))?;
            for (r, v) in table.vectors.iter().enumerate() {
                let mut rec: Vec<String> = Vec::with_capacity(N_FEATURES + 2);
                if let Some(l) = &table.labels {
                    rec.push(l[r].clone());
                }
                rec.extend(v.values().iter().map(|x| x.value().map_or(String::new(), |f| format!("{f:?}"))));
                rec.push(flag_string(v));
                w.write_record(&rec).map_err(|e| io_err(e.to_string()))?;
            }
            w.flush().map_err(|e| io_err(e.to_string()))?;
        }
        TableFormat::Json => {
            let records: Vec<Value> = table
                .vectors
                .iter()
                .enumerate()
                .map(|(r, v)| {
                    let mut rec = Map::new();
                    if let Some(l) = &table.labels {
                        rec.insert("label".into(), Value::String(l[r].clone()));
                    }
                    let feats: Map<String, Value> = names
                        .iter()
                        .zip(v.values())
                        .map(|(n, x)| ((*n).to_owned(), x.value().map_or(Value::Null, Value::from)))
                        .collect();
                    rec.insert("features".into(), Value::Object(feats));
                    rec.insert("flags".into(), Value::String(flag_string(v)));
                    Value::Object(rec)
                })
                .collect();
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, &records).map_err(|e| io_err(e.to_string()))?;
            writeln!(out).map_err(|e| io_err(e.to_string()))?;
        }
    }
    Ok(())
}

/// Writes a feature table to a file.
pub fn write_feature_table_file(table: &FeatureTable, path: &Path, format: TableFormat) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut buf = std::io::BufWriter::new(file);
    write_feature_table(table, &mut buf, format).map_err(|e| match e {
        Error::IoFailure { message, .. } => Error::IoFailure {
            path: path.to_path_buf(),
            message,
        },
        other => other,
    })?;
    buf.flush().map_err(|e| Error::io(path, e))
}

/// Reads a table produced by [`write_feature_table`]; the format is taken
/// from the first non-blank character.
pub fn read_feature_table(path: &Path) -> Result<FeatureTable> {
    let mut text = String::new();
    File::open(path)
        .and_then(|mut f| f.read_to_string(&mut text))
        .map_err(|e| Error::io(path, e))?;
    let bad = |reason: String| Error::MalformedLine {
        path: path.to_path_buf(),
        line: 0,
        reason,
    };
    if text.trim_start().starts_with('[') {
        let records: Vec<Value> = serde_json::from_str(&text).map_err(|e| bad(e.to_string()))?;
        let mut labels = Vec::new();
        let mut vectors = Vec::new();
        for (r, rec) in records.iter().enumerate() {
            if let Some(l) = rec.get("label").and_then(Value::as_str) {
                labels.push(l.to_owned());
            }
            let feats = rec
                .get("features")
                .and_then(Value::as_object)
                .ok_or_else(|| bad(format!("record {r} has no features")))?;
            let flags = rec.get("flags").and_then(Value::as_str).unwrap_or_default();
            let cells: Vec<String> = feature_names()
                .iter()
                .map(|n| feats.get(*n).and_then(Value::as_f64).map_or(String::new(), |v| format!("{v:?}")))
                .collect();
            let cells: Vec<&str> = cells.iter().map(String::as_str).collect();
            vectors.push(parse_row(&cells, flags, r).map_err(bad)?);
        }
        if !labels.is_empty() && labels.len() != vectors.len() {
            return Err(bad("labels present on some records only".into()));
        }
        return Ok(FeatureTable {
            labels: (!labels.is_empty()).then_some(labels),
            vectors,
        });
    }
    let mut rdr = csv::ReaderBuilder::new().from_reader(text.as_bytes());
    let header = rdr.headers().map_err(|e| bad(e.to_string()))?.clone();
    let has_label = header.get(0) == Some("label");
    let offset = usize::from(has_label);
    let expected: Vec<&str> = feature_names().to_vec();
    let got: Vec<&str> = header.iter().skip(offset).take(N_FEATURES).collect();
    if got != expected || header.get(offset + N_FEATURES) != Some("flags") {
        return Err(bad("header does not list the feature columns".into()));
    }
    let mut labels = Vec::new();
    let mut vectors = Vec::new();
    for (r, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| bad(e.to_string()))?;
        if has_label {
            labels.push(rec[0].to_owned());
        }
        let cells: Vec<&str> = (offset..offset + N_FEATURES).map(|k| &rec[k]).collect();
        vectors.push(parse_row(&cells, &rec[offset + N_FEATURES], r + 1).map_err(bad)?);
    }
    Ok(FeatureTable {
        labels: has_label.then_some(labels),
        vectors,
    })
}

/// A feature pool for one task: `label` column then one column per feature.
/// Empty or `NaN` cells are special values.
#[derive(Debug, Clone, PartialEq)]
pub struct PoolTable {
    pub name: String,
    pub feature_names: Vec<String>,
    pub labels: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
}

/// Reads a pool table (CSV, header `label,<feature>,...`).
pub fn read_pool_table(path: &Path) -> Result<PoolTable> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let bad = |line: usize, reason: String| Error::MalformedLine {
        path: path.to_path_buf(),
        line,
        reason,
    };
    let mut rdr = csv::Reader::from_reader(BufReader::new(file));
    let header = rdr.headers().map_err(|e| bad(1, e.to_string()))?.clone();
    if header.get(0) != Some("label") || header.len() < 2 {
        return Err(bad(1, "expected a `label` column followed by feature columns".into()));
    }
    let feature_names: Vec<String> = header.iter().skip(1).map(str::to_owned).collect();
    let mut labels = Vec::new();
    let mut rows = Vec::new();
    for (k, rec) in rdr.records().enumerate() {
        let line = k + 2;
        let rec = rec.map_err(|e| bad(line, e.to_string()))?;
        labels.push(rec[0].to_owned());
        let row = rec
            .iter()
            .skip(1)
            .map(|c| match c.trim() {
                "" | "NaN" | "nan" => Ok(None),
                t => match t.parse::<f64>() {
                    Ok(v) if v.is_finite() => Ok(Some(v)),
                    _ => Err(bad(line, format!("`{t}` is not a finite number"))),
                },
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::EmptyFile(path.to_path_buf()));
    }
    let stem = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = stem.strip_suffix(".features.csv").unwrap_or(&stem).to_owned();
    Ok(PoolTable {
        name,
        feature_names,
        labels,
        rows,
    })
}
