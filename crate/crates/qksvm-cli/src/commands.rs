use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use qksvm::data::{self, PreprocessModel};
use qksvm::feature_map::{Entanglement, FeatureMapConfig, PairScale};
use qksvm::kernel::{gram_matrix, KernelEstimator};
use qksvm::plot::decision_boundary_svg;
use qksvm::svm::{
    decision_values, dual_objective, gram_from_spec, predict as svm_predict, train_smo,
    KernelSpec, SVMModel, TrainConfig,
};
use qksvm::{Error, Result, DEFAULT_SEED};

use crate::config::FileConfig;
use crate::{
    AdhocGenArgs, CompareArgs, KernelArgs, KernelCommonArgs, PlotArgs, PredictArgs, PrepareArgs,
    TrainArgs,
};

const DEFAULT_LABEL_COL: &str = "label";
const DEFAULT_POSITIVE: &str = "1";

fn require_path(flag: Option<&PathBuf>, cfg: &FileConfig, key: &str) -> Result<PathBuf> {
    flag.cloned()
        .map_or_else(|| cfg.path(key), |p| Ok(Some(p)))?
        .ok_or_else(|| Error::Input(format!("missing --{key} (flag or config key '{key}')")))
}

fn out_path(flag: Option<&PathBuf>, cfg: &FileConfig, default: &str) -> Result<PathBuf> {
    Ok(flag
        .cloned()
        .map_or_else(|| cfg.path("out"), |p| Ok(Some(p)))?
        .unwrap_or_else(|| PathBuf::from(default)))
}

fn label_col(flag: Option<&String>, cfg: &FileConfig) -> Result<String> {
    Ok(flag
        .cloned()
        .map_or_else(|| cfg.string("label-col"), |v| Ok(Some(v)))?
        .unwrap_or_else(|| DEFAULT_LABEL_COL.into()))
}

fn positive_label(flag: Option<&String>, cfg: &FileConfig) -> Result<String> {
    Ok(flag
        .cloned()
        .map_or_else(|| cfg.string("positive-label"), |v| Ok(Some(v)))?
        .unwrap_or_else(|| DEFAULT_POSITIVE.into()))
}

fn seed_of(flag: Option<u64>, cfg: &FileConfig) -> Result<u64> {
    Ok(flag
        .map_or_else(|| cfg.u64("seed"), |v| Ok(Some(v)))?
        .unwrap_or(DEFAULT_SEED))
}

fn parse_entanglement(name: &str) -> Result<Entanglement> {
    match name {
        "linear" => Ok(Entanglement::Linear),
        "full" => Ok(Entanglement::Full),
        other => Err(Error::Config(format!(
            "unknown entanglement '{other}', expected linear or full"
        ))),
    }
}

fn parse_pair_scale(name: &str) -> Result<PairScale> {
    match name {
        "product" => Ok(PairScale::Product),
        "plain" => Ok(PairScale::Plain),
        other => Err(Error::Config(format!(
            "unknown pair scale '{other}', expected product or plain"
        ))),
    }
}

fn resolve_feature_map(
    n_qubits: usize,
    depth: Option<usize>,
    entanglement: Option<&String>,
    pair_scale: Option<&String>,
    cfg: &FileConfig,
) -> Result<FeatureMapConfig> {
    let depth = depth.map_or_else(|| cfg.usize("depth"), |v| Ok(Some(v)))?.unwrap_or(2);
    let entanglement = entanglement
        .cloned()
        .map_or_else(|| cfg.string("entanglement"), |v| Ok(Some(v)))?
        .unwrap_or_else(|| "linear".into());
    let pair_scale = pair_scale
        .cloned()
        .map_or_else(|| cfg.string("pair-scale"), |v| Ok(Some(v)))?
        .unwrap_or_else(|| "product".into());
    Ok(FeatureMapConfig::new(n_qubits, depth)?
        .with_entanglement(parse_entanglement(&entanglement)?)
        .with_pair_scale(parse_pair_scale(&pair_scale)?))
}

fn resolve_estimator(
    args: &KernelCommonArgs,
    cfg: &FileConfig,
    n_qubits: usize,
    seed: u64,
) -> Result<KernelEstimator> {
    let feature_map = resolve_feature_map(
        n_qubits,
        args.depth,
        args.entanglement.as_ref(),
        args.pair_scale.as_ref(),
        cfg,
    )?;
    let mode = args
        .mode
        .clone()
        .map_or_else(|| cfg.string("mode"), |v| Ok(Some(v)))?
        .unwrap_or_else(|| "exact".into());
    let estimator = match mode.as_str() {
        "exact" => KernelEstimator::exact(feature_map),
        "sampled" => {
            let shots = args
                .shots
                .map_or_else(|| cfg.u64("shots"), |v| Ok(Some(v)))?
                .unwrap_or(1024);
            KernelEstimator::sampled(feature_map, shots, seed)
        }
        other => {
            return Err(Error::Config(format!(
                "unknown mode '{other}', expected exact or sampled"
            )))
        }
    };
    estimator.validate()?;
    Ok(estimator)
}

fn resolve_kernel_spec(
    args: &KernelCommonArgs,
    cfg: &FileConfig,
    n_qubits: usize,
    seed: u64,
) -> Result<KernelSpec> {
    let kind = args
        .kernel
        .clone()
        .map_or_else(|| cfg.string("kernel"), |v| Ok(Some(v)))?
        .unwrap_or_else(|| "quantum".into());
    let spec = match kind.as_str() {
        "quantum" => KernelSpec::Quantum {
            estimator: resolve_estimator(args, cfg, n_qubits, seed)?,
        },
        "linear" => KernelSpec::Linear,
        "polynomial" => KernelSpec::Polynomial {
            degree: args
                .degree
                .map_or_else(|| cfg.u64("degree").map(|v| v.map(|x| x as u32)), |v| Ok(Some(v)))?
                .unwrap_or(3),
            coef0: args
                .coef0
                .map_or_else(|| cfg.f64("coef0"), |v| Ok(Some(v)))?
                .unwrap_or(1.0),
        },
        "rbf" => KernelSpec::Rbf {
            gamma: args
                .gamma
                .map_or_else(|| cfg.f64("gamma"), |v| Ok(Some(v)))?
                .unwrap_or(1.0),
        },
        other => {
            return Err(Error::Config(format!(
                "unknown kernel '{other}', expected quantum, linear, polynomial, or rbf"
            )))
        }
    };
    spec.validate()?;
    Ok(spec)
}

fn resolve_train_config(
    c: Option<f64>,
    tol: Option<f64>,
    max_passes: Option<usize>,
    seed: u64,
    cfg: &FileConfig,
) -> Result<TrainConfig> {
    let config = TrainConfig {
        c: c.map_or_else(|| cfg.f64("c"), |v| Ok(Some(v)))?.unwrap_or(1.0),
        tol: tol.map_or_else(|| cfg.f64("tol"), |v| Ok(Some(v)))?.unwrap_or(1e-3),
        max_passes: max_passes
            .map_or_else(|| cfg.usize("max-passes"), |v| Ok(Some(v)))?
            .unwrap_or(10),
        seed,
    };
    config.validate()?;
    Ok(config)
}

fn accuracy(predictions: &[i32], labels: &[i32]) -> f64 {
    let correct = predictions.iter().zip(labels).filter(|(a, b)| a == b).count();
    correct as f64 / labels.len() as f64
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    std::fs::write(path, text)?;
    Ok(())
}

pub fn prepare(args: &PrepareArgs, cfg: &FileConfig) -> Result<()> {
    let data_path = require_path(args.data.as_ref(), cfg, "data")?;
    let label = label_col(args.label_col.as_ref(), cfg)?;
    let positive = positive_label(args.positive_label.as_ref(), cfg)?;
    let qubits = args
        .qubits
        .map_or_else(|| cfg.usize("qubits"), |v| Ok(Some(v)))?
        .unwrap_or(2);
    let fraction = args
        .test_fraction
        .map_or_else(|| cfg.f64("test-fraction"), |v| Ok(Some(v)))?
        .unwrap_or(0.25);
    let seed = seed_of(args.seed, cfg)?;
    let lo = args
        .rescale_lo
        .map_or_else(|| cfg.f64("rescale-lo"), |v| Ok(Some(v)))?
        .unwrap_or(-std::f64::consts::PI);
    let hi = args
        .rescale_hi
        .map_or_else(|| cfg.f64("rescale-hi"), |v| Ok(Some(v)))?
        .unwrap_or(std::f64::consts::PI);
    let out_dir = out_path(args.out.as_ref(), cfg, "prepared")?;

    let dataset = data::load_csv(&data_path, &label, &positive)?;
    let (train, test) = data::train_test_split(&dataset, fraction, seed)?;
    let model = PreprocessModel::fit(&train, qubits, lo, hi)?;
    let (train_out, train_clamps) = model.apply(&train)?;
    let (test_out, test_clamps) = model.apply(&test)?;

    std::fs::create_dir_all(&out_dir)?;
    train_out.write_csv(&out_dir.join("train.csv"))?;
    test_out.write_csv(&out_dir.join("test.csv"))?;
    write_text(
        &out_dir.join("preprocess.json"),
        &serde_json::to_string_pretty(&model)?,
    )?;

    let (pos, neg) = dataset.class_counts();
    let (train_pos, train_neg) = train_out.class_counts();
    let (test_pos, test_neg) = test_out.class_counts();
    println!("prepared {}", out_dir.display());
    println!("  input rows          {} (+{pos} / -{neg})", dataset.n_samples());
    println!("  train rows          {} (+{train_pos} / -{train_neg})", train_out.n_samples());
    println!("  test rows           {} (+{test_pos} / -{test_neg})", test_out.n_samples());
    println!("  components          {qubits}");
    println!(
        "  retained variance   {:.4}",
        model.pca.retained_variance_fraction()
    );
    println!("  encoding range      [{lo:.6}, {hi:.6}]");
    println!("  train clamps        {train_clamps}");
    println!("  test clamps         {test_clamps}");
    Ok(())
}

pub fn train(args: &TrainArgs, cfg: &FileConfig) -> Result<()> {
    let data_path = require_path(args.data.as_ref(), cfg, "data")?;
    let label = label_col(args.label_col.as_ref(), cfg)?;
    let positive = positive_label(args.positive_label.as_ref(), cfg)?;
    let seed = seed_of(args.seed, cfg)?;
    let out = out_path(args.out.as_ref(), cfg, "model.json")?;

    let dataset = data::load_csv(&data_path, &label, &positive)?;
    let spec = resolve_kernel_spec(&args.kernel_args, cfg, dataset.n_features(), seed)?;
    let train_config = resolve_train_config(args.c, args.tol, args.max_passes, seed, cfg)?;

    let gram = gram_from_spec(&spec, &dataset.features)?;
    let mut model = train_smo(&gram, &dataset.labels, &train_config)?;
    let objective = dual_objective(&gram, &dataset.labels, &model.alphas)?;
    let constraint: f64 = model
        .alphas
        .iter()
        .zip(&model.labels)
        .map(|(a, &y)| a * f64::from(y))
        .sum();
    model.kernel = spec;
    model.train_points = Some(dataset.features.clone());
    model.save(&out)?;

    println!("trained {}", out.display());
    println!("  kernel              {}", model.kernel.name());
    println!("  training rows       {}", dataset.n_samples());
    println!("  support vectors     {}", model.support_indices.len());
    println!("  dual objective      {objective:.6}");
    println!("  sum alpha_i y_i     {constraint:e}");
    Ok(())
}

pub fn predict(args: &PredictArgs, cfg: &FileConfig) -> Result<()> {
    let model_path = require_path(args.model.as_ref(), cfg, "model")?;
    let data_path = require_path(args.data.as_ref(), cfg, "data")?;
    let label = label_col(args.label_col.as_ref(), cfg)?;
    let positive = positive_label(args.positive_label.as_ref(), cfg)?;
    let out = out_path(args.out.as_ref(), cfg, "predictions.csv")?;

    let model = SVMModel::load(&model_path)?;
    let headers = data::csv_headers(&data_path)?;
    let (features, labels) = if headers.iter().any(|h| h == &label) {
        let ds = data::load_csv(&data_path, &label, &positive)?;
        (ds.features, Some(ds.labels))
    } else {
        let (features, _) = data::load_unlabeled_csv(&data_path)?;
        (features, None)
    };

    if let Some(train_points) = &model.train_points {
        let expected = train_points.first().map_or(0, Vec::len);
        let got = features.first().map_or(0, Vec::len);
        if expected != got {
            return Err(Error::Dimension(format!(
                "model was trained on {expected} features, data has {got}"
            )));
        }
    }

    let values = decision_values(&model, &features)?;
    let predictions: Vec<i32> = values.iter().map(|&v| if v >= 0.0 { 1 } else { -1 }).collect();

    let mut text = String::from("index,decision_value,label\n");
    for (i, (value, pred)) in values.iter().zip(&predictions).enumerate() {
        text.push_str(&format!("{i},{value},{pred}\n"));
    }
    write_text(&out, &text)?;

    println!("wrote {} ({} rows)", out.display(), predictions.len());
    if let Some(truth) = labels {
        println!("accuracy {:.4}", accuracy(&predictions, &truth));
    }
    Ok(())
}

#[derive(Serialize)]
struct CompareEntry {
    kernel: String,
    test_accuracy: f64,
    support_vectors: usize,
    dual_objective: f64,
}

#[derive(Serialize)]
struct CompareReport {
    c: f64,
    seed: u64,
    train_rows: usize,
    test_rows: usize,
    results: Vec<CompareEntry>,
    best_kernel: String,
}

pub fn compare(args: &CompareArgs, cfg: &FileConfig) -> Result<()> {
    let dir = require_path(args.data.as_ref(), cfg, "data")?;
    let label = label_col(args.label_col.as_ref(), cfg)?;
    let positive = positive_label(args.positive_label.as_ref(), cfg)?;
    let seed = seed_of(args.seed, cfg)?;
    let out = out_path(args.out.as_ref(), cfg, "compare.json")?;

    let train_set = data::load_csv(&dir.join("train.csv"), &label, &positive)?;
    let test_set = data::load_csv(&dir.join("test.csv"), &label, &positive)?;
    let train_config = resolve_train_config(args.c, args.tol, args.max_passes, seed, cfg)?;
    let n_features = train_set.n_features();

    let quantum = KernelSpec::Quantum {
        estimator: resolve_estimator(&args.kernel_args, cfg, n_features, seed)?,
    };
    let degree = args
        .kernel_args
        .degree
        .map_or_else(|| cfg.u64("degree").map(|v| v.map(|x| x as u32)), |v| Ok(Some(v)))?
        .unwrap_or(3);
    let coef0 = args
        .kernel_args
        .coef0
        .map_or_else(|| cfg.f64("coef0"), |v| Ok(Some(v)))?
        .unwrap_or(1.0);
    let gamma = args
        .kernel_args
        .gamma
        .map_or_else(|| cfg.f64("gamma"), |v| Ok(Some(v)))?
        .unwrap_or(1.0);
    let specs = vec![
        quantum,
        KernelSpec::Linear,
        KernelSpec::Polynomial { degree, coef0 },
        KernelSpec::Rbf { gamma },
    ];

    let mut entries = Vec::new();
    let mut timings_ms = Vec::new();
    for spec in specs {
        let started = Instant::now();
        let gram = gram_from_spec(&spec, &train_set.features)?;
        let mut model = train_smo(&gram, &train_set.labels, &train_config)?;
        let objective = dual_objective(&gram, &train_set.labels, &model.alphas)?;
        model.kernel = spec;
        model.train_points = Some(train_set.features.clone());
        let elapsed = started.elapsed().as_secs_f64() * 1e3;

        let predictions = svm_predict(&model, &test_set.features)?;
        entries.push(CompareEntry {
            kernel: model.kernel.name().into(),
            test_accuracy: accuracy(&predictions, &test_set.labels),
            support_vectors: model.support_indices.len(),
            dual_objective: objective,
        });
        timings_ms.push(elapsed);
    }

    let best = entries
        .iter()
        .enumerate()
        .max_by(|(ia, a), (ib, b)| {
            a.test_accuracy
                .partial_cmp(&b.test_accuracy)
                .unwrap()
                .then(ib.cmp(ia))
        })
        .map(|(_, e)| e.kernel.clone())
        .unwrap();

    let report = CompareReport {
        c: train_config.c,
        seed,
        train_rows: train_set.n_samples(),
        test_rows: test_set.n_samples(),
        results: entries,
        best_kernel: best.clone(),
    };
    write_text(&out, &serde_json::to_string_pretty(&report)?)?;

    println!("compare on {} (train {} / test {})", dir.display(), report.train_rows, report.test_rows);
    println!("  {:<12} {:>9} {:>5} {:>10}", "kernel", "accuracy", "svs", "train_ms");
    for (entry, ms) in report.results.iter().zip(&timings_ms) {
        let marker = if entry.kernel == best { "  <- best" } else { "" };
        println!(
            "  {:<12} {:>9.4} {:>5} {:>10.2}{marker}",
            entry.kernel, entry.test_accuracy, entry.support_vectors, ms
        );
    }
    println!("wrote {}", out.display());
    Ok(())
}

pub fn kernel(args: &KernelArgs, cfg: &FileConfig) -> Result<()> {
    let data_path = require_path(args.data.as_ref(), cfg, "data")?;
    let label = label_col(args.label_col.as_ref(), cfg)?;
    let seed = seed_of(args.seed, cfg)?;
    let out = out_path(args.out.as_ref(), cfg, "gram.csv")?;

    let headers = data::csv_headers(&data_path)?;
    let features = if headers.iter().any(|h| h == &label) {
        // Any two-valued label column works here; the labels are unused.
        let mut reader_features = Vec::new();
        let label_idx = headers.iter().position(|h| h == &label).unwrap();
        let (raw, _) = data::load_unlabeled_csv_skipping(&data_path, label_idx)?;
        reader_features.extend(raw);
        reader_features
    } else {
        data::load_unlabeled_csv(&data_path)?.0
    };
    if features.is_empty() {
        return Err(Error::Input("dataset holds no rows".into()));
    }

    let estimator = resolve_estimator(&args.kernel_args, cfg, features[0].len(), seed)?;
    let gram = gram_matrix(&features, &estimator)?;
    let mut buf = Vec::new();
    gram.write_csv(&mut buf, &estimator.mode)?;
    write_text(&out, &String::from_utf8(buf).expect("ascii csv"))?;
    println!(
        "wrote {} ({}x{} {} gram)",
        out.display(),
        gram.n(),
        gram.n(),
        estimator.mode.name()
    );
    Ok(())
}

pub fn plot(args: &PlotArgs, cfg: &FileConfig) -> Result<()> {
    let model_path = require_path(args.model.as_ref(), cfg, "model")?;
    let data_path = require_path(args.data.as_ref(), cfg, "data")?;
    let label = label_col(args.label_col.as_ref(), cfg)?;
    let positive = positive_label(args.positive_label.as_ref(), cfg)?;
    let out = out_path(args.out.as_ref(), cfg, "plot.svg")?;

    let model = SVMModel::load(&model_path)?;
    let dataset = data::load_csv(&data_path, &label, &positive)?;
    if dataset.n_features() != 2 {
        return Err(Error::Dimension(format!(
            "plotting needs exactly 2 features, data has {}; prepare with --qubits 2",
            dataset.n_features()
        )));
    }

    let predictions = svm_predict(&model, &dataset.features)?;
    let title = format!("{} kernel decision boundary", model.kernel.name());
    let svg = decision_boundary_svg(
        &dataset.features,
        &dataset.labels,
        &predictions,
        &title,
        |x, y| {
            let row = model.kernel_row(&[x, y]).expect("grid point evaluates");
            qksvm::svm::decision_value(&model, &row).expect("consistent row length")
        },
    )?;
    write_text(&out, &svg)?;
    println!(
        "wrote {} ({} points, {} grid evaluations)",
        out.display(),
        dataset.n_samples(),
        qksvm::plot::GRID_SIZE * qksvm::plot::GRID_SIZE
    );
    Ok(())
}

pub fn adhoc_gen(args: &AdhocGenArgs, cfg: &FileConfig) -> Result<()> {
    let qubits = args
        .qubits
        .map_or_else(|| cfg.usize("qubits"), |v| Ok(Some(v)))?
        .unwrap_or(2);
    let train_per_class = args
        .train_per_class
        .map_or_else(|| cfg.usize("train-per-class"), |v| Ok(Some(v)))?
        .unwrap_or(10);
    let test_per_class = args
        .test_per_class
        .map_or_else(|| cfg.usize("test-per-class"), |v| Ok(Some(v)))?
        .unwrap_or(5);
    let gap = args
        .gap
        .map_or_else(|| cfg.f64("gap"), |v| Ok(Some(v)))?
        .unwrap_or(0.3);
    let seed = seed_of(args.seed, cfg)?;
    let out_dir = out_path(args.out.as_ref(), cfg, "adhoc")?;
    let feature_map = resolve_feature_map(
        qubits,
        args.depth,
        args.entanglement.as_ref(),
        args.pair_scale.as_ref(),
        cfg,
    )?;

    let (train, test) = data::generate_adhoc(train_per_class, test_per_class, gap, &feature_map, seed)?;
    std::fs::create_dir_all(&out_dir)?;
    train.write_csv(&out_dir.join("train.csv"))?;
    test.write_csv(&out_dir.join("test.csv"))?;

    println!("generated {}", out_dir.display());
    println!("  qubits              {qubits}");
    println!("  gap                 {gap}");
    println!("  train rows          {} ({train_per_class} per class)", train.n_samples());
    println!("  test rows           {} ({test_per_class} per class)", test.n_samples());
    Ok(())
}
