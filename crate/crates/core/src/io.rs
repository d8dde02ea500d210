//! CSV ingestion, metric reports and the AUC-by-threshold table.

use crate::assoc::{spearman_rho, spearman_rho_mid};
use crate::cpa::{c_index, cpa_fast};
use crate::error::Error;
use crate::movie::build_movie;
use crate::roc::{roc_curve, somers_d};
use crate::sample::{decompose, PairedSample};
use rayon::prelude::*;
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use serde_json::value::RawValue;
use std::collections::BTreeMap;
use std::io::Read;
use std::path::Path;
use thiserror::Error as ThisError;

#[derive(Debug, ThisError)]
pub enum IoError {
    #[error("column `{0}` not found in header")]
    MissingColumn(String),

    /// `row` is the 1-based data row (the header is not counted).
    #[error("row {row}, column `{column}`: cannot parse `{value}` as a finite number")]
    ParseError { row: usize, column: String, value: String },

    #[error("input has no data rows")]
    EmptyFile,

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Metric(#[from] Error),
}

/// Numeric columns read from a CSV file.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub outcome_column: String,
    pub feature_columns: Vec<String>,
    pub outcomes: Vec<f64>,
    /// One vector per feature column, in `feature_columns` order.
    pub features: Vec<Vec<f64>>,
    pub negated: Vec<String>,
    /// Data rows skipped because a referenced cell was missing.
    pub dropped_rows: Vec<usize>,
}

impl Dataset {
    pub fn n(&self) -> usize {
        self.outcomes.len()
    }

    pub fn feature(&self, name: &str) -> Option<&[f64]> {
        self.feature_columns.iter().position(|c| c == name).map(|i| self.features[i].as_slice())
    }

    pub fn sample(&self, feature: &str) -> Result<PairedSample, IoError> {
        let x = self.feature(feature).ok_or_else(|| IoError::MissingColumn(feature.to_string()))?;
        Ok(PairedSample::new(x.to_vec(), self.outcomes.clone())?)
    }
}

fn is_missing(cell: &str) -> bool {
    matches!(cell, "" | "NA" | "na" | "NaN" | "nan" | "null")
}

pub fn load_csv(path: &Path, outcome: &str, features: &[String], negate: &[String]) -> Result<Dataset, IoError> {
    let file = std::fs::File::open(path)?;
    load_csv_from_reader(file, outcome, features, negate)
}

/// Reads a headed CSV. Rows with an empty or `NA` cell in a referenced column
/// are dropped and recorded; any other unparsable cell is an error.
pub fn load_csv_from_reader<R: Read>(
    reader: R,
    outcome: &str,
    features: &[String],
    negate: &[String],
) -> Result<Dataset, IoError> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(reader);
    let header = rdr.headers()?.clone();
    if header.is_empty() {
        return Err(IoError::EmptyFile);
    }
    let find = |name: &str| {
        header.iter().position(|h| h == name).ok_or_else(|| IoError::MissingColumn(name.to_string()))
    };
    let outcome_idx = find(outcome)?;
    let feature_idx: Vec<usize> = features.iter().map(|f| find(f)).collect::<Result<_, _>>()?;
    for name in negate {
        if !features.contains(name) {
            return Err(IoError::MissingColumn(name.clone()));
        }
    }
    let flip: Vec<bool> = features.iter().map(|f| negate.contains(f)).collect();

    let mut outcomes = Vec::new();
    let mut columns = vec![Vec::new(); features.len()];
    let mut dropped_rows = Vec::new();
    let columns_used: Vec<(usize, &str)> = std::iter::once((outcome_idx, outcome))
        .chain(feature_idx.iter().copied().zip(features.iter().map(String::as_str)))
        .collect();
    let mut row_values = vec![0.0; columns_used.len()];
    for (r, record) in rdr.records().enumerate() {
        let record = record?;
        let row = r + 1;
        let mut missing = false;
        for (slot, &(idx, name)) in row_values.iter_mut().zip(&columns_used) {
            let cell = record.get(idx).unwrap_or("");
            if is_missing(cell) {
                missing = true;
                continue;
            }
            *slot = match cell.parse::<f64>() {
                Ok(v) if v.is_finite() => v,
                _ => {
                    return Err(IoError::ParseError { row, column: name.to_string(), value: cell.to_string() })
                }
            };
        }
        if missing {
            dropped_rows.push(row);
            continue;
        }
        outcomes.push(row_values[0]);
        for (j, col) in columns.iter_mut().enumerate() {
            let v = row_values[j + 1];
            col.push(if flip[j] { -v } else { v });
        }
    }
    if outcomes.is_empty() {
        return Err(IoError::EmptyFile);
    }
    Ok(Dataset {
        outcome_column: outcome.to_string(),
        feature_columns: features.to_vec(),
        outcomes,
        features: columns,
        negated: negate.to_vec(),
        dropped_rows,
    })
}

/// `printf("%.17g")`: 17 significant digits, trailing zeros removed.
pub fn fmt_sig17(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{:.16e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..17).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        trim_zeros(&format!("{:.*}", (16 - exp) as usize, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Metric {
    Cpa,
    CIndex,
    Auc,
    SomersD,
    SpearmanRho,
    SpearmanRhoMid,
}

impl Metric {
    pub const ALL: [Metric; 6] =
        [Metric::Cpa, Metric::CIndex, Metric::Auc, Metric::SomersD, Metric::SpearmanRho, Metric::SpearmanRhoMid];

    pub fn key(self) -> &'static str {
        match self {
            Metric::Cpa => "cpa",
            Metric::CIndex => "cIndex",
            Metric::Auc => "auc",
            Metric::SomersD => "somersD",
            Metric::SpearmanRho => "spearmanRho",
            Metric::SpearmanRhoMid => "spearmanRhoMid",
        }
    }
}

/// Metric values for one feature. `None` means the metric's precondition
/// does not hold for this data (e.g. AUC on a non-binary outcome).
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureReport {
    pub values: Vec<(Metric, Option<f64>)>,
    pub error: Option<String>,
}

impl FeatureReport {
    pub fn get(&self, metric: Metric) -> Option<f64> {
        self.values.iter().find(|(m, _)| *m == metric).and_then(|(_, v)| *v)
    }
}

fn raw_number(v: f64) -> Box<RawValue> {
    RawValue::from_string(fmt_sig17(v)).expect("finite numbers are valid JSON")
}

impl Serialize for FeatureReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.values.len() + 1))?;
        for (metric, value) in &self.values {
            map.serialize_entry(metric.key(), &value.map(raw_number))?;
        }
        map.serialize_entry("error", &self.error)?;
        map.end()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub outcome: String,
    pub n: usize,
    pub classes: usize,
    pub dropped_rows: usize,
    /// Keyed by feature name, so output order is stable.
    pub features: BTreeMap<String, FeatureReport>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_csv(&self, metrics: &[Metric]) -> String {
        let mut out = String::from("feature");
        for m in metrics {
            out.push(',');
            out.push_str(m.key());
        }
        out.push_str(",error\n");
        for (name, f) in &self.features {
            out.push_str(name);
            for m in metrics {
                out.push(',');
                if let Some(v) = f.get(*m) {
                    out.push_str(&fmt_sig17(v));
                }
            }
            out.push(',');
            if let Some(e) = &f.error {
                out.push('"');
                out.push_str(&e.replace('"', "\"\""));
                out.push('"');
            }
            out.push('\n');
        }
        out
    }
}

fn feature_report(sample: Result<PairedSample, IoError>, metrics: &[Metric]) -> FeatureReport {
    let sample = match sample {
        Ok(s) => s,
        Err(e) => {
            return FeatureReport { values: metrics.iter().map(|&m| (m, None)).collect(), error: Some(e.to_string()) }
        }
    };
    let decomposition = decompose(&sample);
    let labels: Option<Vec<bool>> = (decomposition.m() == 2).then(|| {
        let top = decomposition.unique_outcomes()[1];
        sample.outcomes().iter().map(|&y| y == top).collect()
    });
    let mut error = None;
    let mut values = Vec::with_capacity(metrics.len());
    for &metric in metrics {
        let result = match metric {
            Metric::Cpa => cpa_fast(&sample).map(|r| Some(r.value)),
            Metric::CIndex => c_index(&sample).map(Some),
            Metric::Auc => match &labels {
                Some(l) => roc_curve(sample.features(), l).map(|c| Some(c.auc())),
                None => Ok(None),
            },
            Metric::SomersD => match &labels {
                Some(l) => somers_d(sample.features(), l).map(Some),
                None => Ok(None),
            },
            Metric::SpearmanRho => match spearman_rho(&sample) {
                Err(Error::TiesPresent(_)) => Ok(None),
                r => r.map(Some),
            },
            Metric::SpearmanRhoMid => match spearman_rho_mid(&sample) {
                Err(Error::TiesInOutcomes) => Ok(None),
                r => r.map(Some),
            },
        };
        match result {
            Ok(v) => values.push((metric, v)),
            Err(e) => {
                error.get_or_insert_with(|| e.to_string());
                values.push((metric, None));
            }
        }
    }
    FeatureReport { values, error }
}

/// Computes `metrics` for every feature of the dataset, in parallel.
///
/// A feature whose computation fails carries its error message and does
/// not affect the other features.
pub fn run_metrics(dataset: &Dataset, metrics: &[Metric]) -> Report {
    let features: BTreeMap<String, FeatureReport> = dataset
        .feature_columns
        .par_iter()
        .map(|name| (name.clone(), feature_report(dataset.sample(name), metrics)))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    let classes = crate::sample::ClassDecomposition::from_values(&dataset.outcomes).m();
    Report {
        outcome: dataset.outcome_column.clone(),
        n: dataset.n(),
        classes,
        dropped_rows: dataset.dropped_rows.len(),
        features,
    }
}

/// One row per frame: `(z_{c+1}, c, w_c, w_c / max w, AUC_c)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AucRow {
    pub threshold: f64,
    pub class_index: usize,
    pub weight: f64,
    pub relative_weight: f64,
    pub auc: f64,
}

pub fn auc_by_threshold(dataset: &Dataset, feature: &str) -> Result<Vec<AucRow>, IoError> {
    let movie = build_movie(&dataset.sample(feature)?);
    Ok(movie
        .all_frames()
        .iter()
        .map(|f| AucRow {
            threshold: f.threshold_value,
            class_index: f.class_index,
            weight: f.weight,
            relative_weight: f.relative_weight,
            auc: f.auc,
        })
        .collect())
}

pub fn auc_table_csv(rows: &[AucRow]) -> String {
    let mut out = String::from("threshold,class_index,weight,relative_weight,auc\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            fmt_sig17(r.threshold),
            r.class_index,
            fmt_sig17(r.weight),
            fmt_sig17(r.relative_weight),
            fmt_sig17(r.auc)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load(text: &str, outcome: &str, features: &[&str], negate: &[&str]) -> Result<Dataset, IoError> {
        let f: Vec<String> = features.iter().map(|s| s.to_string()).collect();
        let n: Vec<String> = negate.iter().map(|s| s.to_string()).collect();
        load_csv_from_reader(text.as_bytes(), outcome, &f, &n)
    }

    #[test]
    fn sig17_formatting() {
        assert_eq!(fmt_sig17(0.75), "0.75");
        assert_eq!(fmt_sig17(0.1), "0.10000000000000001");
        assert_eq!(fmt_sig17(1.0), "1");
        assert_eq!(fmt_sig17(-2.5), "-2.5");
        assert_eq!(fmt_sig17(1462.0), "1462");
        assert_eq!(fmt_sig17(1e-7), "9.9999999999999995e-08");
        assert_eq!(fmt_sig17(1e20), "1e+20");
        assert_eq!(fmt_sig17(0.0), "0");
        for v in [0.1, 1.0 / 3.0, 2.0f64.sqrt(), 1e-300, 123456.789, -7e22] {
            assert_eq!(fmt_sig17(v).parse::<f64>().unwrap().to_bits(), v.to_bits());
        }
    }

    #[test]
    fn load_three_rows() {
        let d = load("y,x\n1,0.5\n2,0.25\n3,1\n", "y", &["x"], &[]).unwrap();
        assert_eq!(d.n(), 3);
        assert_eq!(d.feature("x").unwrap(), &[0.5, 0.25, 1.0]);
    }

    #[test]
    fn load_errors() {
        assert!(matches!(load("y,x\n1,2\n", "y", &["z"], &[]), Err(IoError::MissingColumn(c)) if c == "z"));
        assert!(matches!(load("y,x\n1,2\n", "q", &["x"], &[]), Err(IoError::MissingColumn(_))));
        assert!(matches!(load("y,x\n1,2\n", "y", &["x"], &["y"]), Err(IoError::MissingColumn(_))));
        assert!(matches!(
            load("y,x\n1,2\n2,abc\n", "y", &["x"], &[]),
            Err(IoError::ParseError { row: 2, ref column, .. }) if column == "x"
        ));
        assert!(matches!(load("y,x\n1,inf\n", "y", &["x"], &[]), Err(IoError::ParseError { row: 1, .. })));
        assert!(matches!(load("", "y", &["x"], &[]), Err(IoError::EmptyFile) | Err(IoError::MissingColumn(_))));
        assert!(matches!(load("y,x\n", "y", &["x"], &[]), Err(IoError::EmptyFile)));
    }

    #[test]
    fn missing_cells_drop_rows() {
        let d = load("y,x,z\n1,2,NA\n2,,1\n3,4,5\n4,5,\n", "y", &["x"], &[]).unwrap();
        assert_eq!(d.n(), 3);
        assert_eq!(d.dropped_rows, vec![2]);
    }

    #[test]
    fn negation_flips_cpa() {
        let text = "y,b\n1,0.5\n2,0.7\n2,0.2\n3,1.1\n4,0.7\n";
        let raw = load(text, "y", &["b"], &[]).unwrap();
        let neg = load(text, "y", &["b"], &["b"]).unwrap();
        assert_eq!(neg.feature("b").unwrap()[0], -0.5);
        let a = cpa_fast(&raw.sample("b").unwrap()).unwrap().exact();
        let b = cpa_fast(&neg.sample("b").unwrap()).unwrap().exact();
        assert_eq!(b, crate::ratio::ExactRatio::new(a.denominator - a.numerator, a.denominator));
    }

    #[test]
    fn binary_report_auc_equals_cpa() {
        let d = load("y,x,w\n0,1,3\n1,2,3\n0,3,3\n1,4,1\n1,0,2\n", "y", &["x", "w"], &[]).unwrap();
        let r = run_metrics(&d, &Metric::ALL);
        for f in r.features.values() {
            assert_eq!(f.get(Metric::Auc), f.get(Metric::Cpa));
            assert!(f.get(Metric::Auc).is_some());
            assert_eq!(f.error, None);
        }
    }

    #[test]
    fn report_keys_are_stable() {
        let d = load("y,x,w\n0,1,3\n1,2,3\n2,3,3\n", "y", &["x", "w"], &[]).unwrap();
        let r = run_metrics(&d, &Metric::ALL);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        for name in ["x", "w"] {
            let keys: Vec<&str> = v["features"][name].as_object().unwrap().keys().map(String::as_str).collect();
            let mut expected = vec!["cpa", "cIndex", "auc", "somersD", "spearmanRho", "spearmanRhoMid", "error"];
            expected.sort();
            let mut keys = keys;
            keys.sort();
            assert_eq!(keys, expected);
        }
        assert!(v["features"]["x"]["auc"].is_null());
        assert!(v["features"]["w"]["spearmanRho"].is_null());
        assert_eq!(v["features"]["x"]["spearmanRho"].as_f64(), Some(1.0));
        // field order inside the text follows the metric order
        let text = r.to_json();
        assert!(text.find("\"cpa\"").unwrap() < text.find("\"cIndex\"").unwrap());
    }

    #[test]
    fn failing_feature_is_isolated() {
        let mut d = load("y,x,w\n0,1,3\n1,2,3\n2,3,3\n", "y", &["x", "w"], &[]).unwrap();
        d.features[1].pop();
        let r = run_metrics(&d, &[Metric::Cpa]);
        assert!(r.features["w"].error.is_some());
        assert_eq!(r.features["x"].get(Metric::Cpa), Some(1.0));
    }

    #[test]
    fn auc_table_rows() {
        let d = load("y,x\n0,1\n1,2\n0,3\n1,4\n", "y", &["x"], &[]).unwrap();
        let rows = auc_by_threshold(&d, "x").unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].weight, 1.0);
        let d = load("y,x\n1,1\n2,2\n3,3\n4,4\n", "y", &["x"], &[]).unwrap();
        let rows = auc_by_threshold(&d, "x").unwrap();
        assert_eq!(rows.len(), 3);
        assert!(rows.iter().all(|r| r.auc == 1.0));
        assert!(rows.windows(2).all(|w| w[0].threshold < w[1].threshold));
        let csv = auc_table_csv(&rows);
        assert!(csv.starts_with("threshold,class_index,weight,relative_weight,auc\n2,1,0.29999999999999999,"));
    }
}
