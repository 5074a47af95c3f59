//! `qksvm` — train and evaluate quantum-kernel SVMs from the command line.
//!
//! Exit codes are a stable contract for scripting: 0 success, 2 invalid
//! input or configuration, 3 degenerate data, 4 internal invariant
//! violation. Errors print one machine-parsable line to stderr:
//! `error[<kind>]: <message>`.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qksvm::Error;

#[derive(Parser)]
#[command(name = "qksvm", version, about = "Quantum-kernel SVM binary classification toolkit")]
struct Cli {
    /// JSON config file mirroring the long flags; explicit flags override it.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Load a CSV, split, standardize, project to the qubit count, rescale.
    Prepare(PrepareArgs),
    /// Train an SVM on a prepared training CSV and save the model JSON.
    Train(TrainArgs),
    /// Predict labels for a CSV with a saved model.
    Predict(PredictArgs),
    /// Train quantum and classical kernels on one split and compare.
    Compare(CompareArgs),
    /// Export the Gram matrix of a dataset as CSV.
    Kernel(KernelArgs),
    /// Render test points and the decision boundary as an SVG.
    Plot(PlotArgs),
    /// Generate the synthetic dataset separable under the feature map.
    AdhocGen(AdhocGenArgs),
}

#[derive(Args)]
struct PrepareArgs {
    /// Input CSV with a header row and a label column.
    #[arg(long)]
    data: Option<PathBuf>,
    /// Label column name (or index when no header matches).
    #[arg(long)]
    label_col: Option<String>,
    /// Label value mapped to +1.
    #[arg(long)]
    positive_label: Option<String>,
    /// Qubit count; PCA keeps this many components.
    #[arg(long)]
    qubits: Option<usize>,
    #[arg(long)]
    test_fraction: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Lower edge of the encoding range.
    #[arg(long, allow_hyphen_values = true)]
    rescale_lo: Option<f64>,
    /// Upper edge of the encoding range.
    #[arg(long, allow_hyphen_values = true)]
    rescale_hi: Option<f64>,
    /// Output directory for train.csv, test.csv, preprocess.json.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct KernelCommonArgs {
    /// quantum | linear | polynomial | rbf
    #[arg(long)]
    kernel: Option<String>,
    /// Feature map repetitions.
    #[arg(long)]
    depth: Option<usize>,
    /// linear | full
    #[arg(long)]
    entanglement: Option<String>,
    /// product | plain  (pair-phase angle rule)
    #[arg(long)]
    pair_scale: Option<String>,
    /// exact | sampled
    #[arg(long)]
    mode: Option<String>,
    #[arg(long)]
    shots: Option<u64>,
    /// Polynomial kernel degree.
    #[arg(long)]
    degree: Option<u32>,
    /// Polynomial kernel offset.
    #[arg(long, allow_hyphen_values = true)]
    coef0: Option<f64>,
    /// RBF kernel width.
    #[arg(long)]
    gamma: Option<f64>,
}

#[derive(Args)]
struct TrainArgs {
    /// Prepared training CSV.
    #[arg(long)]
    data: Option<PathBuf>,
    #[arg(long)]
    label_col: Option<String>,
    #[arg(long)]
    positive_label: Option<String>,
    #[command(flatten)]
    kernel_args: KernelCommonArgs,
    /// Box constraint C.
    #[arg(long)]
    c: Option<f64>,
    /// KKT tolerance.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    max_passes: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Model JSON output path.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PredictArgs {
    /// Model JSON path.
    #[arg(long)]
    model: Option<PathBuf>,
    /// CSV of points; a label column adds an accuracy line.
    #[arg(long)]
    data: Option<PathBuf>,
    #[arg(long)]
    label_col: Option<String>,
    #[arg(long)]
    positive_label: Option<String>,
    /// Predictions CSV output path.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    /// Directory holding train.csv and test.csv (from prepare or adhoc-gen).
    #[arg(long)]
    data: Option<PathBuf>,
    #[arg(long)]
    label_col: Option<String>,
    #[arg(long)]
    positive_label: Option<String>,
    #[command(flatten)]
    kernel_args: KernelCommonArgs,
    #[arg(long)]
    c: Option<f64>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    max_passes: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Report JSON output path.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct KernelArgs {
    /// CSV of points (label column ignored if present).
    #[arg(long)]
    data: Option<PathBuf>,
    #[arg(long)]
    label_col: Option<String>,
    #[command(flatten)]
    kernel_args: KernelCommonArgs,
    #[arg(long)]
    seed: Option<u64>,
    /// Gram CSV output path.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PlotArgs {
    /// Model JSON path.
    #[arg(long)]
    model: Option<PathBuf>,
    /// CSV of 2-feature points to scatter.
    #[arg(long)]
    data: Option<PathBuf>,
    #[arg(long)]
    label_col: Option<String>,
    #[arg(long)]
    positive_label: Option<String>,
    /// SVG output path.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AdhocGenArgs {
    /// Qubit count (2 or 3).
    #[arg(long)]
    qubits: Option<usize>,
    #[arg(long)]
    train_per_class: Option<usize>,
    #[arg(long)]
    test_per_class: Option<usize>,
    /// Minimum |parity expectation| kept.
    #[arg(long)]
    gap: Option<f64>,
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long)]
    entanglement: Option<String>,
    #[arg(long)]
    pair_scale: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory for train.csv and test.csv.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn error_kind(err: &Error) -> (&'static str, u8) {
    match err {
        Error::DegenerateData(_) | Error::DegenerateFeature { .. } | Error::Stratification { .. } => {
            ("degenerate-data", 3)
        }
        Error::Internal(_) => ("internal", 4),
        _ => ("input", 2),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match config::FileConfig::load(cli.config.as_deref()) {
        Ok(c) => c,
        Err(err) => {
            let (kind, code) = error_kind(&err);
            eprintln!("error[{kind}]: {err}");
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Prepare(args) => commands::prepare(&args, &config),
        Command::Train(args) => commands::train(&args, &config),
        Command::Predict(args) => commands::predict(&args, &config),
        Command::Compare(args) => commands::compare(&args, &config),
        Command::Kernel(args) => commands::kernel(&args, &config),
        Command::Plot(args) => commands::plot(&args, &config),
        Command::AdhocGen(args) => commands::adhoc_gen(&args, &config),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let (kind, code) = error_kind(&err);
            eprintln!("error[{kind}]: {err}");
            ExitCode::from(code)
        }
    }
}
