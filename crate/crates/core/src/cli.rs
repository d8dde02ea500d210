//! The `uroc` command line.
//!
//! Exit codes: 0 success, 2 input error, 3 degenerate data, 4 I/O error.

use crate::error::Error;
use crate::export::{export_frames, roc_csv, roc_svg, simulation_csv, uroc_csv, uroc_svg};
use crate::gaussian::{sample_gaussian, threshold_event, GaussianSpec};
use crate::io::{auc_by_threshold, fmt_sig17, load_csv, run_metrics, Dataset, IoError, Metric};
use crate::movie::{build_movie, ThinningPolicy};
use crate::roc::roc_curve;
use crate::sample::decompose;
use crate::uroc::{uroc_curve, DEFAULT_GRID};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Debug, Parser)]
#[command(name = "uroc", version, about = "ROC movies, UROC curves and CPA for real-valued outcomes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// CPA and C index per feature, plus AUC and Somers' D for binary outcomes
    Cpa(InputArgs),
    /// Classical ROC curve per feature for a binary outcome or `y >= --threshold`
    Roc {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        threshold: Option<f64>,
        #[command(flatten)]
        plot: PlotArgs,
    },
    /// Export ROC movie frames per feature
    Movie {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        thinning: ThinningArgs,
        #[command(flatten)]
        plot: PlotArgs,
    },
    /// UROC curve per feature on a grid of `--grid` subintervals
    Uroc {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
        #[command(flatten)]
        plot: PlotArgs,
    },
    /// All association measures: CPA, C index, AUC, Somers' D, Spearman's rho
    Assoc(InputArgs),
    /// AUC of every ROC movie frame against its threshold
    AucTable(InputArgs),
    /// Seeded Gaussian validation sample as CSV with columns y,x1,x2,x3
    Simulate {
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Output file; stdout when omitted
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// CSV file with a header row
    pub input: PathBuf,
    #[arg(long)]
    pub outcome: String,
    /// Comma-separated feature columns
    #[arg(long, value_delimiter = ',', required = true)]
    pub features: Vec<String>,
    /// Feature columns whose sign is flipped on load
    #[arg(long, value_delimiter = ',')]
    pub negate: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    /// Directory for curve files, created if missing
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    /// Also write an SVG per curve
    #[arg(long)]
    pub svg: bool,
}

#[derive(Debug, Args)]
pub struct ThinningArgs {
    #[arg(long, default_value_t = 400)]
    pub thin_a: usize,
    #[arg(long, default_value_t = 100)]
    pub thin_b: usize,
    /// Thin only movies with more frames than this
    #[arg(long, default_value_t = 500)]
    pub thin_cap: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Degenerate(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Degenerate(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Degenerate(m) | CliError::Io(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::DegenerateOutcomes | Error::SingleClassOutcome | Error::TooFewInstances(_) => {
                CliError::Degenerate(e.to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        match e {
            IoError::Io(_) => CliError::Io(e.to_string()),
            IoError::Csv(ref c) if matches!(c.kind(), csv::ErrorKind::Io(_)) => CliError::Io(e.to_string()),
            IoError::Metric(m) => m.into(),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

/// Parses `args` (including the program name), runs, and returns the exit code.
pub fn run_from<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match execute(&cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.exit_code()
        }
    }
}

fn load(input: &InputArgs) -> Result<Dataset, CliError> {
    let dataset = load_csv(&input.input, &input.outcome, &input.features, &input.negate)?;
    if dataset.n() < 2 {
        return Err(Error::TooFewInstances(dataset.n()).into());
    }
    if dataset.outcomes.iter().all(|&y| y == dataset.outcomes[0]) {
        return Err(Error::DegenerateOutcomes.into());
    }
    Ok(dataset)
}

/// Per-feature rows of named numbers, emitted as JSON or CSV.
struct Summary {
    columns: Vec<&'static str>,
    rows: BTreeMap<String, (Vec<Option<f64>>, Option<String>)>,
}

impl Summary {
    fn new(columns: Vec<&'static str>) -> Self {
        Self { columns, rows: BTreeMap::new() }
    }

    fn insert(&mut self, feature: &str, result: FeatureRow) {
        let row = match result {
            Ok(values) => (values, None),
            Err(e) => (vec![None; self.columns.len()], Some(e)),
        };
        self.rows.insert(feature.to_string(), row);
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let objects: Vec<String> = self
                    .rows
                    .iter()
                    .map(|(name, (values, error))| {
                        let mut entries: Vec<String> = self
                            .columns
                            .iter()
                            .zip(values)
                            .map(|(col, v)| format!("\"{col}\": {}", v.map_or("null".to_string(), fmt_sig17)))
                            .collect();
                        entries.push(format!("\"error\": {}", json_string(error.as_deref())));
                        format!("    {}: {{{}}}", json_string(Some(name)), entries.join(", "))
                    })
                    .collect();
                format!("{{\n  \"features\": {{\n{}\n  }}\n}}\n", objects.join(",\n"))
            }
            Format::Csv => {
                let mut text = format!("feature,{},error\n", self.columns.join(","));
                for (name, (values, error)) in &self.rows {
                    text.push_str(name);
                    for v in values {
                        text.push(',');
                        if let Some(v) = v {
                            text.push_str(&fmt_sig17(*v));
                        }
                    }
                    text.push(',');
                    if let Some(e) = error {
                        text.push_str(&format!("\"{}\"", e.replace('"', "\"\"")));
                    }
                    text.push('\n');
                }
                text
            }
        }
    }
}

fn json_string(s: Option<&str>) -> String {
    serde_json::to_string(&s).expect("strings serialize")
}

type FeatureRow = Result<Vec<Option<f64>>, String>;

fn par_features<F>(dataset: &Dataset, f: F) -> Vec<(String, FeatureRow)>
where
    F: Fn(&str) -> Result<Vec<Option<f64>>, CliError> + Sync,
{
    dataset
        .feature_columns
        .par_iter()
        .map(|name| (name.clone(), f(name).map_err(|e| e.message().to_string())))
        .collect()
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))
}

fn metric_report(input: &InputArgs, metrics: &[Metric], out: &mut dyn Write) -> Result<(), CliError> {
    let dataset = load(input)?;
    let report = run_metrics(&dataset, metrics);
    let text = match input.format {
        Format::Json => report.to_json() + "\n",
        Format::Csv => report.to_csv(metrics),
    };
    out.write_all(text.as_bytes())?;
    Ok(())
}

pub fn execute(command: &Command, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Cpa(input) => metric_report(input, &[Metric::Cpa, Metric::CIndex, Metric::Auc, Metric::SomersD], out),
        Command::Assoc(input) => metric_report(input, &Metric::ALL, out),
        Command::Roc { input, threshold, plot } => {
            let dataset = load(input)?;
            let labels: Vec<bool> = match threshold {
                Some(theta) => threshold_event(&dataset.outcomes, *theta),
                None => {
                    let d = crate::sample::ClassDecomposition::from_values(&dataset.outcomes);
                    if d.m() != 2 {
                        return Err(CliError::Input(format!(
                            "outcome has {} distinct values; pass --threshold for a non-binary outcome",
                            d.m()
                        )));
                    }
                    let top = d.unique_outcomes()[1];
                    dataset.outcomes.iter().map(|&y| y == top).collect()
                }
            };
            if labels.iter().all(|&l| l) || labels.iter().all(|&l| !l) {
                return Err(Error::SingleClassOutcome.into());
            }
            if let Some(dir) = &plot.out_dir {
                ensure_dir(dir)?;
            }
            let mut summary = Summary::new(vec!["auc", "vertices"]);
            for (name, row) in par_features(&dataset, |name| {
                let curve = roc_curve(dataset.feature(name).expect("loaded column"), &labels)?;
                if let Some(dir) = &plot.out_dir {
                    write_file(&dir.join(format!("roc_{name}.csv")), &roc_csv(&curve))?;
                    if plot.svg {
                        write_file(&dir.join(format!("roc_{name}.svg")), &roc_svg(&curve))?;
                    }
                }
                Ok(vec![Some(curve.auc()), Some(curve.vertices().len() as f64)])
            }) {
                summary.insert(&name, row);
            }
            out.write_all(summary.render(input.format).as_bytes())?;
            Ok(())
        }
        Command::Movie { input, thinning, plot } => {
            let dataset = load(input)?;
            let dir = plot.out_dir.as_ref().ok_or_else(|| CliError::Input("movie requires --out-dir".into()))?;
            let policy = ThinningPolicy { a: thinning.thin_a, b: thinning.thin_b, cap: thinning.thin_cap };
            let mut summary = Summary::new(vec!["frames", "exported", "cpa"]);
            for (name, row) in par_features(&dataset, |name| {
                let movie = build_movie(&dataset.sample(name)?).with_policy(&policy)?;
                let target = dir.join(name);
                export_frames(&movie, &target, plot.svg)
                    .map_err(|e| CliError::Io(format!("{}: {e}", target.display())))?;
                Ok(vec![
                    Some(movie.all_frames().len() as f64),
                    Some(movie.frames().len() as f64),
                    Some(movie.weighted_auc()),
                ])
            }) {
                summary.insert(&name, row);
            }
            out.write_all(summary.render(input.format).as_bytes())?;
            Ok(())
        }
        Command::Uroc { input, grid, plot } => {
            if *grid < 2 {
                return Err(Error::GridTooCoarse(*grid).into());
            }
            let dataset = load(input)?;
            if let Some(dir) = &plot.out_dir {
                ensure_dir(dir)?;
            }
            let mut summary = Summary::new(vec!["cpa", "uroc_area"]);
            for (name, row) in par_features(&dataset, |name| {
                let movie = build_movie(&dataset.sample(name)?);
                let curve = uroc_curve(&movie, movie.weights(), *grid)?;
                let cpa = movie.weighted_auc();
                if let Some(dir) = &plot.out_dir {
                    write_file(&dir.join(format!("uroc_{name}.csv")), &uroc_csv(&curve, cpa))?;
                    if plot.svg {
                        write_file(&dir.join(format!("uroc_{name}.svg")), &uroc_svg(&curve, cpa))?;
                    }
                }
                Ok(vec![Some(cpa), Some(curve.cpa_from_area())])
            }) {
                summary.insert(&name, row);
            }
            out.write_all(summary.render(input.format).as_bytes())?;
            Ok(())
        }
        Command::AucTable(input) => {
            let dataset = load(input)?;
            let m = decompose(&dataset.sample(&dataset.feature_columns[0])?).m();
            let tables: Vec<_> = dataset
                .feature_columns
                .par_iter()
                .map(|name| auc_by_threshold(&dataset, name).map(|t| (name.clone(), t)))
                .collect::<Result<_, _>>()?;
            let mut tables: Vec<_> = tables;
            tables.sort_by(|a, b| a.0.cmp(&b.0));
            let text = match input.format {
                Format::Csv => {
                    let mut text = String::from("feature,threshold,class_index,weight,relative_weight,auc\n");
                    for (name, rows) in &tables {
                        for r in rows {
                            text.push_str(&format!(
                                "{name},{},{},{},{},{}\n",
                                fmt_sig17(r.threshold),
                                r.class_index,
                                fmt_sig17(r.weight),
                                fmt_sig17(r.relative_weight),
                                fmt_sig17(r.auc)
                            ));
                        }
                    }
                    text
                }
                Format::Json => {
                    let mut parts = Vec::new();
                    for (name, rows) in &tables {
                        let cells: Vec<String> = rows
                            .iter()
                            .map(|r| {
                                format!(
                                    "{{\"threshold\":{},\"class_index\":{},\"weight\":{},\"relative_weight\":{},\"auc\":{}}}",
                                    fmt_sig17(r.threshold),
                                    r.class_index,
                                    fmt_sig17(r.weight),
                                    fmt_sig17(r.relative_weight),
                                    fmt_sig17(r.auc)
                                )
                            })
                            .collect();
                        parts.push(format!("{}:[{}]", json_string(Some(name)), cells.join(",")));
                    }
                    format!("{{\"classes\":{m},\"features\":{{{}}}}}\n", parts.join(","))
                }
            };
            out.write_all(text.as_bytes())?;
            Ok(())
        }
        Command::Simulate { n, seed, output } => {
            let sample = sample_gaussian(&GaussianSpec::new(*n, *seed))?;
            let text = simulation_csv(&sample);
            match output {
                Some(path) => write_file(path, &text),
                None => {
                    out.write_all(text.as_bytes())?;
                    Ok(())
                }
            }
        }
    }
}
