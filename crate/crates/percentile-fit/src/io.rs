//! File formats: CSV datasets, JSON fit reports, JSON experiment configs.
//!
//! Datasets are plain CSV with a mandatory header — `x1,…,xd` for point
//! clouds, `x1,…,xp,y` for regression. Values are written with the shortest
//! representation that round-trips, so parse → write → parse is lossless.
//!
//! Reports are JSON with point indices 1-based and every float carrying 17
//! significant digits, which is enough to reconstruct the exact bits.

use std::io::{Read, Write};

use serde::Deserialize;

use crate::bench::ExperimentConfig;
use crate::data::Dataset;
use crate::solvers::FitReport;

/// Errors from reading or writing files; distinct from solver errors so the
/// CLI can map them to its own exit code.
#[derive(Debug, thiserror::Error)]
pub enum FileError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Format(String),
}

fn format_err(msg: String) -> FileError {
    FileError::Format(msg)
}

/// Reads a dataset CSV. A final column named `y` makes it a regression
/// dataset; all other columns must be named `x1, x2, …` in order.
pub fn read_dataset<R: Read>(reader: R) -> Result<Dataset, FileError> {
    let mut csv = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = csv.headers()?.clone();
    let labeled = headers.iter().last() == Some("y");
    let feature_cols = headers.len() - usize::from(labeled);
    if feature_cols == 0 {
        return Err(format_err(
            "dataset needs at least one feature column".into(),
        ));
    }
    for (i, name) in headers.iter().take(feature_cols).enumerate() {
        let expected = format!("x{}", i + 1);
        if name != expected {
            return Err(format_err(format!(
                "header column {} must be '{expected}' (or 'y' last), got '{name}'",
                i + 1
            )));
        }
    }

    let mut rows = Vec::new();
    let mut labels = Vec::new();
    for (i, record) in csv.records().enumerate() {
        let record = record?;
        let line = i + 2; // 1-based, after the header
        let mut values = Vec::with_capacity(record.len());
        for (col, cell) in record.iter().enumerate() {
            let v: f64 = cell.parse().map_err(|_| {
                format_err(format!(
                    "row {line}, column {}: cannot parse '{cell}' as a number",
                    col + 1
                ))
            })?;
            if !v.is_finite() {
                return Err(format_err(format!(
                    "row {line}, column {}: non-finite value '{cell}'",
                    col + 1
                )));
            }
            values.push(v);
        }
        if labeled {
            labels.push(values.pop().expect("row has the label column"));
        }
        rows.push(values);
    }
    if rows.is_empty() {
        return Err(format_err("dataset has no data rows".into()));
    }
    let dataset = if labeled {
        Dataset::from_rows(rows, labels)
    } else {
        Dataset::from_features(rows)
    };
    dataset.map_err(|e| format_err(e.to_string()))
}

/// Writes a dataset in the format `read_dataset` accepts.
pub fn write_dataset<W: Write>(out: W, dataset: &Dataset) -> Result<(), FileError> {
    let mut w = csv::Writer::from_writer(out);
    let mut header: Vec<String> = (1..=dataset.feature_dim()).map(|i| format!("x{i}")).collect();
    if dataset.labeled() {
        header.push("y".into());
    }
    w.write_record(&header)?;
    for p in dataset.iter() {
        let mut row: Vec<String> = p.feature().iter().map(f64::to_string).collect();
        if let Some(y) = p.label() {
            row.push(y.to_string());
        }
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// A fit report as stored on disk. Indices are 1-based here, matching the
/// file format rather than the in-memory [`FitReport`].
#[derive(Clone, Debug, Deserialize)]
pub struct ReportDoc {
    pub solver: String,
    pub theta: Vec<f64>,
    pub objective: f64,
    pub winning_subset: Vec<usize>,
    pub inlier_indices: Vec<usize>,
    pub subsets_total: u64,
    pub subsets_solved: u64,
    pub subsets_skipped: u64,
    pub elapsed_s: f64,
}

/// 17 significant digits: the smallest count that reproduces any f64 exactly.
fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Renders a report as JSON, shifting point indices to 1-based.
pub fn report_to_json(report: &FitReport) -> String {
    let floats = |xs: &[f64]| {
        xs.iter()
            .map(|x| fmt17(*x))
            .collect::<Vec<_>>()
            .join(", ")
    };
    let indices = |xs: &[usize]| {
        xs.iter()
            .map(|i| (i + 1).to_string())
            .collect::<Vec<_>>()
            .join(", ")
    };
    format!(
        "{{\n  \"solver\": \"{}\",\n  \"theta\": [{}],\n  \"objective\": {},\n  \
         \"winning_subset\": [{}],\n  \"inlier_indices\": [{}],\n  \
         \"subsets_total\": {},\n  \"subsets_solved\": {},\n  \"subsets_skipped\": {},\n  \
         \"elapsed_s\": {}\n}}\n",
        report.solver.as_str(),
        floats(&report.theta),
        fmt17(report.objective),
        indices(&report.winning_subset),
        indices(&report.inlier_indices),
        report.subsets_total,
        report.subsets_solved,
        report.subsets_skipped,
        fmt17(report.elapsed),
    )
}

pub fn write_report<W: Write>(mut out: W, report: &FitReport) -> Result<(), FileError> {
    out.write_all(report_to_json(report).as_bytes())?;
    Ok(())
}

pub fn read_report<R: Read>(reader: R) -> Result<ReportDoc, FileError> {
    Ok(serde_json::from_reader(reader)?)
}

pub fn read_experiment_config<R: Read>(reader: R) -> Result<ExperimentConfig, FileError> {
    Ok(serde_json::from_reader(reader)?)
}
