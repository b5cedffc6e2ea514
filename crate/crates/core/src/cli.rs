//! Command-line front end.
//!
//! Exit codes: 0 success, 2 usage or validation, 3 input/output, 4 algorithm.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::cluster::{gbdpc, gbsc, ClusterAssignment, RunMeta};
use crate::dataio::{self, CsvOptions, LabelColumn, Shape, SynthSpec};
use crate::error::Error;
use crate::generation::{generate_cheng, generate_pojg, generate_xie};
use crate::metrics::{clustering_accuracy, nmi, ContingencyTable};
use crate::model::{make_ball, validate_partition, Dataset, GBSet};
use crate::quality::{total_quality, QualityParams};

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_ALGORITHM: i32 = 4;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn io(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_IO,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidParam(_) | Error::UnknownShape(_) => EXIT_USAGE,
            Error::Io(_)
            | Error::Parse { .. }
            | Error::RaggedRows { .. }
            | Error::InvalidDataset(_) => EXIT_IO,
            _ => EXIT_ALGORITHM,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "granball", version, about = "Granular-ball generation and clustering")]
pub struct Cli {
    /// Seed for every randomized step
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Min-max normalize features before generating balls
    #[arg(long, global = true)]
    pub normalize: bool,
    /// Output format for reports
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Pojg,
    Cheng,
    Xie,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Gbdpc,
    Gbsc,
}

#[derive(Debug, Args)]
pub struct DataArgs {
    /// CSV file with one instance per row
    #[arg(long)]
    pub input: PathBuf,
    /// The first row is a header
    #[arg(long)]
    pub header: bool,
    /// Column holding class labels, by 0-based index or header name
    #[arg(long)]
    pub label_column: Option<LabelColumn>,
    #[arg(long, default_value_t = ',')]
    pub delimiter: char,
}

impl DataArgs {
    fn options(&self) -> CliResult<CsvOptions> {
        csv_options(self.header, self.label_column.clone(), self.delimiter)
    }
}

fn csv_options(
    has_header: bool,
    label_column: Option<LabelColumn>,
    delimiter: char,
) -> CliResult<CsvOptions> {
    if !delimiter.is_ascii() {
        return Err(CliError::usage("delimiter must be a single ASCII character"));
    }
    Ok(CsvOptions {
        has_header,
        label_column,
        delimiter: delimiter as u8,
    })
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate granular balls from a dataset
    Generate {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long, value_enum)]
        method: Method,
        /// Specificity weight (required for pojg; also scores the summary's total quality)
        #[arg(long)]
        gamma: Option<f64>,
        /// Leaf-size threshold scale in (0, 1] (pojg only)
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Cluster the balls of a balls file
    Cluster {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long)]
        balls: PathBuf,
        #[arg(long, value_enum)]
        algo: Algo,
        #[arg(long)]
        k: usize,
        /// Gaussian affinity width (gbsc)
        #[arg(long)]
        sigma: Option<f64>,
        /// Truncation distance as a fraction of the largest center distance (gbdpc)
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Score an assignment against the dataset's labels
    Eval {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long)]
        assignment: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare generators on ball count, total quality and wall time
    Bench {
        /// Dataset files (repeatable)
        #[arg(long = "input", required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long)]
        header: bool,
        #[arg(long)]
        label_column: Option<LabelColumn>,
        #[arg(long, default_value_t = ',')]
        delimiter: char,
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = [Method::Pojg, Method::Cheng, Method::Xie])]
        methods: Vec<Method>,
        #[arg(long, default_value_t = 1)]
        reps: usize,
        /// A value or an inclusive `start:step:end` range
        #[arg(long, default_value = "1")]
        gamma: ParamRange,
        /// A value or an inclusive `start:step:end` range
        #[arg(long, default_value = "0.3")]
        delta: ParamRange,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a labeled synthetic 2-D dataset as CSV
    Synth {
        #[arg(long)]
        shape: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.05)]
        noise: f64,
        /// Number of blobs (blobs only)
        #[arg(long, default_value_t = 3)]
        classes: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Export ball circles and labeled points of a 2-D dataset for plotting
    Plotdata {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long)]
        balls: PathBuf,
        #[arg(long)]
        assignment: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A single value or an inclusive arithmetic progression `start:step:end`.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamRange(pub Vec<f64>);

impl std::str::FromStr for ParamRange {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<f64> = s
            .split(':')
            .map(|p| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}")))
            .collect::<Result<_, _>>()?;
        match parts.as_slice() {
            [v] => Ok(Self(vec![*v])),
            [start, step, end] => {
                if !step.is_finite() || *step <= 0.0 || end < start {
                    return Err(format!("bad range {s:?}: need step > 0 and end >= start"));
                }
                let count = ((end - start) / step + 1e-9).floor() as usize + 1;
                Ok(Self((0..count).map(|i| start + i as f64 * step).collect()))
            }
            _ => Err(format!("expected a number or start:step:end, got {s:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetInfo {
    pub name: String,
    pub n: usize,
    pub m: usize,
    pub checksum: String,
}

impl DatasetInfo {
    fn of(dataset: &Dataset) -> Self {
        Self {
            name: dataset.name().to_string(),
            n: dataset.n(),
            m: dataset.m(),
            checksum: dataio::checksum(dataset),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerationParams {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub gamma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub delta: Option<f64>,
    pub normalized: bool,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BallRecord {
    pub members: Vec<usize>,
    pub center: Vec<f64>,
    pub avg_radius: f64,
    pub max_radius: f64,
}

/// The balls file written by `generate`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BallsDoc {
    pub dataset: DatasetInfo,
    pub method: Method,
    pub params: GenerationParams,
    pub balls: Vec<BallRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssignmentMeta {
    #[serde(flatten)]
    pub run: RunMeta,
    pub generator: Method,
    pub normalized: bool,
    pub nmi_normalization: String,
    pub version: String,
}

/// The assignment file written by `cluster`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssignmentDoc {
    pub dataset: DatasetInfo,
    pub run_meta: AssignmentMeta,
    pub k: usize,
    pub ball_labels: Vec<usize>,
    pub instance_labels: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub acc: f64,
    pub nmi: f64,
    pub n: usize,
    pub k_pred: usize,
    pub k_true: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub method: Method,
    pub dataset: String,
    pub gamma: Option<f64>,
    pub delta: Option<f64>,
    pub balls: usize,
    pub total_quality: f64,
    pub median_seconds: f64,
    pub reps: usize,
    pub normalized: bool,
}

#[derive(Debug, Serialize)]
struct GenerateSummary {
    method: Method,
    balls: usize,
    max_ball_size: usize,
    total_quality: f64,
    quality_gamma: f64,
    elapsed_seconds: f64,
}

/// Parses `args` and runs the command, writing reports to `stdout`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write) -> CliResult<()>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                write!(stdout, "{e}").map_err(|e| CliError::io(e.to_string()))?;
                return Ok(());
            }
            return Err(CliError::usage(e.to_string()));
        }
    };
    execute(&cli, stdout)
}

pub fn execute(cli: &Cli, stdout: &mut dyn Write) -> CliResult<()> {
    match &cli.command {
        Command::Generate {
            data,
            method,
            gamma,
            delta,
            out,
        } => cmd_generate(cli, data, *method, *gamma, *delta, out, stdout),
        Command::Cluster {
            data,
            balls,
            algo,
            k,
            sigma,
            lambda,
            out,
        } => cmd_cluster(cli, data, balls, *algo, *k, *sigma, *lambda, out),
        Command::Eval {
            data,
            assignment,
            out,
        } => cmd_eval(cli, data, assignment, out.as_deref(), stdout),
        Command::Bench {
            inputs,
            header,
            label_column,
            delimiter,
            methods,
            reps,
            gamma,
            delta,
            out,
        } => {
            let opts = csv_options(*header, label_column.clone(), *delimiter)?;
            cmd_bench(cli, inputs, &opts, methods, *reps, gamma, delta, out.as_deref(), stdout)
        }
        Command::Synth {
            shape,
            n,
            noise,
            classes,
            out,
        } => cmd_synth(cli, shape, *n, *noise, *classes, out),
        Command::Plotdata {
            data,
            balls,
            assignment,
            out,
        } => cmd_plotdata(cli, data, balls, assignment.as_deref(), out.as_deref(), stdout),
    }
}

fn load(data: &DataArgs, normalize: bool) -> CliResult<Dataset> {
    let d = dataio::load_csv(&data.input, &data.options()?)
        .map_err(|e| with_path(e, &data.input))?;
    Ok(if normalize {
        dataio::minmax_normalize(&d)
    } else {
        d
    })
}

fn with_path(e: Error, path: &Path) -> CliError {
    let mut err = CliError::from(e);
    err.message = format!("{}: {}", path.display(), err.message);
    err
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::io(format!("{}: {e}", path.display())))
}

fn write_text(path: Option<&Path>, text: &str, stdout: &mut dyn Write) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| CliError::io(format!("{}: {e}", p.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| CliError::io(e.to_string())),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}

fn to_csv<T: Serialize>(rows: &[T]) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| CliError::io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn report<T: Serialize>(format: Format, rows: &[T]) -> CliResult<String> {
    match format {
        Format::Json if rows.len() == 1 => Ok(to_json(&rows[0])),
        Format::Json => Ok(to_json(&rows)),
        Format::Csv => to_csv(rows),
    }
}

fn run_generator(dataset: &Dataset, method: Method, params: Option<&QualityParams>) -> CliResult<GBSet> {
    Ok(match method {
        Method::Pojg => generate_pojg(dataset, params.expect("validated pojg parameters"))?,
        Method::Cheng => generate_cheng(dataset)?,
        Method::Xie => generate_xie(dataset)?,
    })
}

fn cmd_generate(
    cli: &Cli,
    data: &DataArgs,
    method: Method,
    gamma: Option<f64>,
    delta: Option<f64>,
    out: &Path,
    stdout: &mut dyn Write,
) -> CliResult<()> {
    let params = match method {
        Method::Pojg => {
            let (Some(g), Some(d)) = (gamma, delta) else {
                return Err(CliError::usage("--method pojg requires --gamma and --delta"));
            };
            Some(QualityParams::new(g, d)?)
        }
        _ => {
            if delta.is_some() {
                return Err(CliError::usage("--delta applies to --method pojg only"));
            }
            if let Some(g) = gamma {
                QualityParams::new(g, 1.0)?;
            }
            None
        }
    };
    let dataset = load(data, cli.normalize)?;

    let start = Instant::now();
    let gbset = run_generator(&dataset, method, params.as_ref())?;
    let elapsed = start.elapsed().as_secs_f64();

    debug_assert!(validate_partition(&gbset).valid);
    let quality_gamma = gamma.unwrap_or(1.0);
    let scoring = QualityParams {
        gamma: quality_gamma,
        delta: 1.0,
    };
    let doc = BallsDoc {
        dataset: DatasetInfo::of(&dataset),
        method,
        params: GenerationParams {
            gamma: params.map(|p| p.gamma),
            delta: params.map(|p| p.delta),
            normalized: cli.normalize,
            seed: cli.seed,
        },
        balls: gbset
            .balls()
            .iter()
            .map(|b| BallRecord {
                members: b.members().to_vec(),
                center: b.center().to_vec(),
                avg_radius: b.avg_radius(),
                max_radius: b.max_radius(),
            })
            .collect(),
    };
    write_text(Some(out), &to_json(&doc), stdout)?;

    let summary = GenerateSummary {
        method,
        balls: gbset.len(),
        max_ball_size: gbset.balls().iter().map(|b| b.len()).max().unwrap_or(0),
        total_quality: total_quality(gbset.balls(), &dataset, &scoring),
        quality_gamma,
        elapsed_seconds: elapsed,
    };
    write_text(None, &report(cli.format, &[summary])?, stdout)
}

/// Loads a balls file and the dataset it was generated from, checking they match.
fn load_balls(data: &DataArgs, path: &Path, normalize_flag: bool) -> CliResult<(BallsDoc, Dataset, GBSet)> {
    let doc: BallsDoc = read_json(path)?;
    if normalize_flag && !doc.params.normalized {
        return Err(CliError::usage(
            "--normalize given but the balls were generated without normalization",
        ));
    }
    let dataset = load(data, doc.params.normalized)?;
    if DatasetInfo::of(&dataset).checksum != doc.dataset.checksum {
        return Err(CliError::usage(format!(
            "{} does not match the dataset the balls were generated from",
            data.input.display()
        )));
    }
    let balls = doc
        .balls
        .iter()
        .map(|b| make_ball(&dataset, &b.members))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::io(format!("{}: {e}", path.display())))?;
    let gbset = GBSet::new(balls, dataset.n());
    let check = validate_partition(&gbset);
    if !check.valid {
        return Err(CliError::io(format!(
            "{}: balls do not partition the dataset ({} missing, {} duplicated)",
            path.display(),
            check.missing.len(),
            check.duplicated.len()
        )));
    }
    Ok((doc, dataset, gbset))
}

#[allow(clippy::too_many_arguments)]
fn cmd_cluster(
    cli: &Cli,
    data: &DataArgs,
    balls: &Path,
    algo: Algo,
    k: usize,
    sigma: Option<f64>,
    lambda: Option<f64>,
    out: &Path,
) -> CliResult<()> {
    if k == 0 {
        return Err(CliError::usage("--k must be at least 1"));
    }
    match algo {
        Algo::Gbsc => match sigma {
            Some(s) if s.is_finite() && s > 0.0 => {}
            _ => return Err(CliError::usage("gbsc requires --sigma > 0")),
        },
        Algo::Gbdpc => match lambda {
            Some(l) if l > 0.0 && l <= 1.0 => {}
            _ => return Err(CliError::usage("gbdpc requires --lambda in (0, 1]")),
        },
    }
    let (doc, dataset, gbset) = load_balls(data, balls, cli.normalize)?;
    let assignment: ClusterAssignment = match algo {
        Algo::Gbdpc => gbdpc(&gbset, k, lambda.expect("validated"))?,
        Algo::Gbsc => gbsc(&gbset, k, sigma.expect("validated"), cli.seed)?,
    };
    let mut run = assignment.run_meta;
    run.gamma = doc.params.gamma;
    run.delta = doc.params.delta;
    run.seed = Some(cli.seed);
    let out_doc = AssignmentDoc {
        dataset: DatasetInfo::of(&dataset),
        run_meta: AssignmentMeta {
            run,
            generator: doc.method,
            normalized: doc.params.normalized,
            nmi_normalization: "geometric".into(),
            version: env!("CARGO_PKG_VERSION").into(),
        },
        k: assignment.k,
        ball_labels: assignment.ball_labels,
        instance_labels: assignment.instance_labels,
    };
    write_text(Some(out), &to_json(&out_doc), &mut std::io::sink())
}

fn cmd_eval(
    cli: &Cli,
    data: &DataArgs,
    assignment: &Path,
    out: Option<&Path>,
    stdout: &mut dyn Write,
) -> CliResult<()> {
    let doc: AssignmentDoc = read_json(assignment)?;
    let dataset = load(data, false)?;
    let Some(truth) = dataset.labels() else {
        return Err(CliError::usage(
            "dataset has no labels; pass --label-column",
        ));
    };
    if doc.instance_labels.len() != truth.len() {
        return Err(CliError::usage(format!(
            "assignment has {} labels but the dataset has {} rows",
            doc.instance_labels.len(),
            truth.len()
        )));
    }
    let table = ContingencyTable::new(&doc.instance_labels, truth)?;
    let rep = EvalReport {
        acc: clustering_accuracy(&doc.instance_labels, truth)?,
        nmi: nmi(&doc.instance_labels, truth)?,
        n: truth.len(),
        k_pred: table.k_pred(),
        k_true: table.k_true(),
    };
    write_text(out, &report(cli.format, &[rep])?, stdout)
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let k = values.len();
    if k % 2 == 1 {
        values[k / 2]
    } else {
        0.5 * (values[k / 2 - 1] + values[k / 2])
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_bench(
    cli: &Cli,
    inputs: &[PathBuf],
    opts: &CsvOptions,
    methods: &[Method],
    reps: usize,
    gamma: &ParamRange,
    delta: &ParamRange,
    out: Option<&Path>,
    stdout: &mut dyn Write,
) -> CliResult<()> {
    if reps == 0 {
        return Err(CliError::usage("--reps must be at least 1"));
    }
    let mut grid = Vec::new();
    for &g in &gamma.0 {
        for &d in &delta.0 {
            grid.push(QualityParams::new(g, d)?);
        }
    }
    let scoring_gamma = gamma.0[0];
    let mut rows = Vec::new();
    for path in inputs {
        let mut dataset = dataio::load_csv(path, opts).map_err(|e| with_path(e, path))?;
        if cli.normalize {
            dataset = dataio::minmax_normalize(&dataset);
        }
        for &method in methods {
            let cells: Vec<Option<QualityParams>> = match method {
                Method::Pojg => grid.iter().copied().map(Some).collect(),
                _ => vec![None],
            };
            for params in cells {
                let mut times = Vec::with_capacity(reps);
                let mut last = None;
                for _ in 0..reps {
                    let start = Instant::now();
                    let gb = run_generator(&dataset, method, params.as_ref())?;
                    times.push(start.elapsed().as_secs_f64());
                    last = Some(gb);
                }
                let gb = last.expect("reps >= 1");
                let scoring = QualityParams {
                    gamma: params.map_or(scoring_gamma, |p| p.gamma),
                    delta: 1.0,
                };
                rows.push(BenchRow {
                    method,
                    dataset: dataset.name().to_string(),
                    gamma: params.map(|p| p.gamma),
                    delta: params.map(|p| p.delta),
                    balls: gb.len(),
                    total_quality: total_quality(gb.balls(), &dataset, &scoring),
                    median_seconds: median(&mut times),
                    reps,
                    normalized: cli.normalize,
                });
            }
        }
    }
    let text = match cli.format {
        Format::Json => to_json(&rows),
        Format::Csv => to_csv(&rows)?,
    };
    write_text(out, &text, stdout)
}

fn cmd_synth(cli: &Cli, shape: &str, n: usize, noise: f64, classes: usize, out: &Path) -> CliResult<()> {
    let shape: Shape = shape.parse()?;
    let spec = SynthSpec::new(shape, n, noise, cli.seed).with_classes(classes);
    let dataset = dataio::synth(&spec)?;
    dataio::write_csv(&dataset, out).map_err(|e| with_path(e, out))
}

#[derive(Debug, Serialize)]
struct PlotBall {
    ball_id: usize,
    center_x: f64,
    center_y: f64,
    avg_radius: f64,
    member_count: usize,
}

#[derive(Debug, Serialize)]
struct PlotPoint {
    x: f64,
    y: f64,
    ball_id: usize,
    cluster_id: Option<usize>,
}

#[derive(Debug, Serialize)]
struct PlotDoc {
    balls: Vec<PlotBall>,
    points: Vec<PlotPoint>,
}

#[derive(Debug, Serialize)]
struct PlotCsvRow {
    record: &'static str,
    x: f64,
    y: f64,
    avg_radius: Option<f64>,
    member_count: Option<usize>,
    ball_id: usize,
    cluster_id: Option<usize>,
}

fn cmd_plotdata(
    cli: &Cli,
    data: &DataArgs,
    balls: &Path,
    assignment: Option<&Path>,
    out: Option<&Path>,
    stdout: &mut dyn Write,
) -> CliResult<()> {
    let (_, dataset, gbset) = load_balls(data, balls, cli.normalize)?;
    if dataset.m() != 2 {
        return Err(CliError::usage(format!(
            "plot data needs a 2-D dataset, got {} columns",
            dataset.m()
        )));
    }
    let clusters = match assignment {
        Some(p) => {
            let doc: AssignmentDoc = read_json(p)?;
            if doc.instance_labels.len() != dataset.n() {
                return Err(CliError::usage("assignment does not match the dataset"));
            }
            Some(doc.instance_labels)
        }
        None => None,
    };
    let owner = gbset.ball_of_instance();
    let plot = PlotDoc {
        balls: gbset
            .balls()
            .iter()
            .enumerate()
            .map(|(id, b)| PlotBall {
                ball_id: id,
                center_x: b.center()[0],
                center_y: b.center()[1],
                avg_radius: b.avg_radius(),
                member_count: b.len(),
            })
            .collect(),
        points: (0..dataset.n())
            .map(|i| PlotPoint {
                x: dataset.row(i)[0],
                y: dataset.row(i)[1],
                ball_id: owner[i],
                cluster_id: clusters.as_ref().map(|c| c[i]),
            })
            .collect(),
    };
    let text = match cli.format {
        Format::Json => to_json(&plot),
        Format::Csv => {
            let rows: Vec<PlotCsvRow> = plot
                .balls
                .iter()
                .map(|b| PlotCsvRow {
                    record: "ball",
                    x: b.center_x,
                    y: b.center_y,
                    avg_radius: Some(b.avg_radius),
                    member_count: Some(b.member_count),
                    ball_id: b.ball_id,
                    cluster_id: None,
                })
                .chain(plot.points.iter().map(|p| PlotCsvRow {
                    record: "point",
                    x: p.x,
                    y: p.y,
                    avg_radius: None,
                    member_count: None,
                    ball_id: p.ball_id,
                    cluster_id: p.cluster_id,
                }))
                .collect();
            to_csv(&rows)?
        }
    };
    write_text(out, &text, stdout)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        let g: ParamRange = "0:1:10".parse().unwrap();
        let d: ParamRange = "0.1:0.1:1".parse().unwrap();
        assert_eq!(g.0.len() * d.0.len(), 110);
        assert!((d.0[9] - 1.0).abs() < 1e-12);
        assert_eq!("0.5".parse::<ParamRange>().unwrap().0, vec![0.5]);
        assert!("1:0:2".parse::<ParamRange>().is_err());
        assert!("a".parse::<ParamRange>().is_err());
    }

    #[test]
    fn error_codes() {
        assert_eq!(CliError::from(Error::InvalidParam("x".into())).code, EXIT_USAGE);
        assert_eq!(CliError::from(Error::RaggedRows { row: 0, expected: 1, found: 2 }).code, EXIT_IO);
        assert_eq!(CliError::from(Error::TooFewBalls { balls: 1, k: 2 }).code, EXIT_ALGORITHM);
    }

    #[test]
    fn median_of_reps() {
        assert_eq!(median(&mut [5.0, 1.0, 3.0, 2.0, 4.0]), 3.0);
        assert_eq!(median(&mut [1.0, 2.0]), 1.5);
    }
}
