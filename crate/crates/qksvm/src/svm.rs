//! Binary soft-margin SVM over an arbitrary kernel, trained by sequential
//! minimal optimization on the dual problem
//!
//!   maximize  W(a) = sum_i a_i - 1/2 sum_ij a_i a_j y_i y_j K_ij
//!   subject to 0 <= a_i <= C and sum_i a_i y_i = 0.
//!
//! The solver is the simplified SMO variant: first index by KKT violation
//! sweep, second index drawn from a seeded generator, each pair solved in
//! closed form. Pairs with non-negative curvature are skipped, which lets
//! training tolerate slightly indefinite (shot-sampled) Gram matrices.

use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{cross_kernel, gram_matrix, KernelEstimator, KernelMatrix};

/// Alphas below this are treated as exactly zero when collecting support
/// vectors.
const ALPHA_EPS: f64 = 1e-12;

/// Kernel family attached to a model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum KernelSpec {
    Linear,
    Polynomial { degree: u32, coef0: f64 },
    Rbf { gamma: f64 },
    Quantum {
        #[serde(flatten)]
        estimator: KernelEstimator,
    },
    Precomputed,
}

impl KernelSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            KernelSpec::Polynomial { degree, .. } if *degree < 1 => Err(Error::Argument(
                "polynomial degree must be at least 1".into(),
            )),
            KernelSpec::Rbf { gamma } if *gamma <= 0.0 => {
                Err(Error::Argument("rbf gamma must be positive".into()))
            }
            KernelSpec::Quantum { estimator } => estimator.validate(),
            _ => Ok(()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            KernelSpec::Linear => "linear",
            KernelSpec::Polynomial { .. } => "polynomial",
            KernelSpec::Rbf { .. } => "rbf",
            KernelSpec::Quantum { .. } => "quantum",
            KernelSpec::Precomputed => "precomputed",
        }
    }
}

/// Direct evaluation of a classical kernel.
pub fn classical_kernel(spec: &KernelSpec, x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::Dimension(format!(
            "kernel arguments have lengths {} and {}",
            x.len(),
            y.len()
        )));
    }
    let dot = || x.iter().zip(y).map(|(a, b)| a * b).sum::<f64>();
    match *spec {
        KernelSpec::Linear => Ok(dot()),
        KernelSpec::Polynomial { degree, coef0 } => Ok((dot() + coef0).powi(degree as i32)),
        KernelSpec::Rbf { gamma } => {
            let d2 = x
                .iter()
                .zip(y)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>();
            Ok((-gamma * d2).exp())
        }
        KernelSpec::Quantum { .. } | KernelSpec::Precomputed => Err(Error::Config(format!(
            "classical_kernel cannot evaluate a {} kernel",
            spec.name()
        ))),
    }
}

/// Soft-margin training hyperparameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    /// Box constraint.
    pub c: f64,
    /// KKT tolerance.
    pub tol: f64,
    /// Consecutive clean sweeps required before stopping.
    pub max_passes: usize,
    /// Seed for second-index selection.
    pub seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            c: 1.0,
            tol: 1e-3,
            max_passes: 10,
            seed: 42,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.c > 0.0) {
            return Err(Error::Argument("C must be positive".into()));
        }
        if !(self.tol > 0.0) {
            return Err(Error::Argument("tol must be positive".into()));
        }
        if self.max_passes == 0 {
            return Err(Error::Argument("max_passes must be at least 1".into()));
        }
        Ok(())
    }
}

/// A trained binary classifier: dual coefficients over the training set plus
/// the kernel needed to evaluate new points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SVMModel {
    pub alphas: Vec<f64>,
    pub bias: f64,
    /// Training labels, each -1 or +1.
    pub labels: Vec<i32>,
    /// Indices with alpha > 0.
    pub support_indices: Vec<usize>,
    pub kernel: KernelSpec,
    /// Dense training features; `None` for precomputed-kernel models.
    pub train_points: Option<Vec<Vec<f64>>>,
}

#[derive(Serialize, Deserialize)]
struct ModelFile {
    format_version: u32,
    alphas: Vec<f64>,
    bias: f64,
    labels: Vec<i32>,
    support_indices: Vec<usize>,
    kernel: KernelSpec,
    train_points: Option<Vec<Vec<f64>>>,
}

impl SVMModel {
    pub fn n_train(&self) -> usize {
        self.alphas.len()
    }

    pub fn to_json(&self) -> Result<String> {
        let file = ModelFile {
            format_version: 1,
            alphas: self.alphas.clone(),
            bias: self.bias,
            labels: self.labels.clone(),
            support_indices: self.support_indices.clone(),
            kernel: self.kernel.clone(),
            train_points: self.train_points.clone(),
        };
        Ok(serde_json::to_string_pretty(&file)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ModelFile = serde_json::from_str(text)?;
        if file.format_version != 1 {
            return Err(Error::Config(format!(
                "unsupported model format_version {}",
                file.format_version
            )));
        }
        Ok(SVMModel {
            alphas: file.alphas,
            bias: file.bias,
            labels: file.labels,
            support_indices: file.support_indices,
            kernel: file.kernel,
            train_points: file.train_points,
        })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Input(format!("cannot read model {}: {e}", path.display())))?;
        SVMModel::from_json(&text)
    }

    /// Kernel row k(x, train_j) for one new point.
    pub fn kernel_row(&self, x: &[f64]) -> Result<Vec<f64>> {
        let train = self.train_points.as_ref().ok_or_else(|| {
            Error::Config("model stores no training points; supply precomputed kernel rows".into())
        })?;
        match &self.kernel {
            KernelSpec::Quantum { estimator } => {
                Ok(cross_kernel(std::slice::from_ref(&x.to_vec()), train, estimator)?.remove(0))
            }
            KernelSpec::Precomputed => Err(Error::Config(
                "precomputed-kernel model needs caller-supplied kernel rows".into(),
            )),
            spec => train.iter().map(|t| classical_kernel(spec, x, t)).collect(),
        }
    }
}

/// Unclamped margin value sum_j alpha_j y_j k_row_j + bias.
pub fn decision_value(model: &SVMModel, k_row: &[f64]) -> Result<f64> {
    if k_row.len() != model.alphas.len() {
        return Err(Error::Dimension(format!(
            "kernel row has length {}, training size is {}",
            k_row.len(),
            model.alphas.len()
        )));
    }
    let mut value = model.bias;
    for ((alpha, &label), k) in model.alphas.iter().zip(&model.labels).zip(k_row) {
        value += alpha * f64::from(label) * k;
    }
    Ok(value)
}

/// sign(decision) with sign(0) = +1.
fn label_of(value: f64) -> i32 {
    if value >= 0.0 {
        1
    } else {
        -1
    }
}

/// Decision values for a batch of new points, resolving the model's kernel.
pub fn decision_values(model: &SVMModel, points: &[Vec<f64>]) -> Result<Vec<f64>> {
    match &model.kernel {
        KernelSpec::Quantum { estimator } => {
            let train = model.train_points.as_ref().ok_or_else(|| {
                Error::Config("quantum model stores no training points".into())
            })?;
            let rows = cross_kernel(points, train, estimator)?;
            rows.iter().map(|row| decision_value(model, row)).collect()
        }
        KernelSpec::Precomputed => Err(Error::Config(
            "precomputed-kernel model needs caller-supplied kernel rows".into(),
        )),
        _ => points
            .iter()
            .map(|x| decision_value(model, &model.kernel_row(x)?))
            .collect(),
    }
}

/// Predicted labels for a batch of new points.
pub fn predict(model: &SVMModel, points: &[Vec<f64>]) -> Result<Vec<i32>> {
    Ok(decision_values(model, points)?
        .into_iter()
        .map(label_of)
        .collect())
}

/// Predicted labels from caller-supplied kernel rows (precomputed path).
pub fn predict_rows(model: &SVMModel, k_rows: &[Vec<f64>]) -> Result<Vec<i32>> {
    k_rows
        .iter()
        .map(|row| decision_value(model, row).map(label_of))
        .collect()
}

/// Dual objective W(a) for any coefficient vector.
pub fn dual_objective(k: &KernelMatrix, labels: &[i32], alphas: &[f64]) -> Result<f64> {
    if k.n() != labels.len() || k.n() != alphas.len() {
        return Err(Error::Dimension(format!(
            "kernel is {}x{}, labels {}, alphas {}",
            k.n(),
            k.n(),
            labels.len(),
            alphas.len()
        )));
    }
    let mut quad = 0.0;
    for i in 0..k.n() {
        for j in 0..k.n() {
            quad += alphas[i] * alphas[j] * f64::from(labels[i]) * f64::from(labels[j]) * k.get(i, j);
        }
    }
    Ok(alphas.iter().sum::<f64>() - 0.5 * quad)
}

fn check_labels(labels: &[i32]) -> Result<()> {
    if let Some(bad) = labels.iter().find(|&&y| y != 1 && y != -1) {
        return Err(Error::Argument(format!(
            "labels must be -1 or +1, found {bad}"
        )));
    }
    let pos = labels.iter().filter(|&&y| y == 1).count();
    if pos == 0 || pos == labels.len() {
        return Err(Error::DegenerateData(
            "training labels contain a single class".into(),
        ));
    }
    Ok(())
}

/// Trains on a precomputed kernel matrix. The returned model carries
/// `KernelSpec::Precomputed` and no training points; [`fit`] wraps this with
/// kernel resolution.
pub fn train_smo(k: &KernelMatrix, labels: &[i32], cfg: &TrainConfig) -> Result<SVMModel> {
    cfg.validate()?;
    if k.n() != labels.len() {
        return Err(Error::Dimension(format!(
            "kernel is {0}x{0} but there are {1} labels",
            k.n(),
            labels.len()
        )));
    }
    if labels.len() < 2 {
        return Err(Error::DegenerateData("need at least 2 training points".into()));
    }
    check_labels(labels)?;

    let n = labels.len();
    let y: Vec<f64> = labels.iter().map(|&v| f64::from(v)).collect();
    let c = cfg.c;
    let mut alphas = vec![0.0f64; n];
    let mut bias = 0.0f64;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let decision = |alphas: &[f64], bias: f64, i: usize| -> f64 {
        let mut v = bias;
        let row = k.row(i);
        for j in 0..n {
            if alphas[j] != 0.0 {
                v += alphas[j] * y[j] * row[j];
            }
        }
        v
    };

    // Hard cap so pathological float cycling cannot spin forever.
    let sweep_cap = 10_000usize.max(100 * cfg.max_passes);
    let mut clean_sweeps = 0usize;
    let mut sweeps = 0usize;
    while clean_sweeps < cfg.max_passes && sweeps < sweep_cap {
        sweeps += 1;
        let mut changed = 0usize;
        for i in 0..n {
            let err_i = decision(&alphas, bias, i) - y[i];
            let violates = (y[i] * err_i < -cfg.tol && alphas[i] < c)
                || (y[i] * err_i > cfg.tol && alphas[i] > 0.0);
            if !violates {
                continue;
            }
            // Second index: seeded random start, then scan until some
            // partner makes progress.
            let start = rng.random_range(0..n);
            for offset in 0..n {
                let j = (start + offset) % n;
                if j == i {
                    continue;
                }
                let err_j = decision(&alphas, bias, j) - y[j];
                let (ai_old, aj_old) = (alphas[i], alphas[j]);
                let (lo, hi) = if labels[i] != labels[j] {
                    ((aj_old - ai_old).max(0.0), (c + aj_old - ai_old).min(c))
                } else {
                    ((ai_old + aj_old - c).max(0.0), (ai_old + aj_old).min(c))
                };
                if lo >= hi {
                    continue;
                }
                // Along the constraint line the dual is quadratic in a_j:
                // W(a_j) = W0 + slope * d + eta/2 * d^2 with d = a_j - aj_old.
                let eta = 2.0 * k.get(i, j) - k.get(i, i) - k.get(j, j);
                let slope = y[j] * (err_i - err_j);
                let aj_new = if eta < 0.0 {
                    (aj_old - slope / eta).clamp(lo, hi)
                } else {
                    // Flat or convex along the line: the maximum sits at a
                    // box endpoint. Move only on strict improvement.
                    let gain = |d: f64| slope * d + 0.5 * eta * d * d;
                    let (gain_lo, gain_hi) = (gain(lo - aj_old), gain(hi - aj_old));
                    if gain_lo > gain_hi && gain_lo > 1e-12 {
                        lo
                    } else if gain_hi > 1e-12 {
                        hi
                    } else {
                        continue;
                    }
                };
                if (aj_new - aj_old).abs() <= cfg.tol {
                    continue;
                }
                let ai_new = ai_old + y[i] * y[j] * (aj_old - aj_new);
                alphas[i] = ai_new;
                alphas[j] = aj_new;

                let b1 = bias
                    - err_i
                    - y[i] * (ai_new - ai_old) * k.get(i, i)
                    - y[j] * (aj_new - aj_old) * k.get(i, j);
                let b2 = bias
                    - err_j
                    - y[i] * (ai_new - ai_old) * k.get(i, j)
                    - y[j] * (aj_new - aj_old) * k.get(j, j);
                bias = if ai_new > 0.0 && ai_new < c {
                    b1
                } else if aj_new > 0.0 && aj_new < c {
                    b2
                } else {
                    0.5 * (b1 + b2)
                };
                changed += 1;
                break;
            }
        }
        if changed == 0 {
            clean_sweeps += 1;
        } else {
            clean_sweeps = 0;
        }
    }

    // Final bias from KKT conditions: average over free support vectors,
    // otherwise the midpoint of the feasible interval from bound points.
    let margins: Vec<f64> = (0..n).map(|i| decision(&alphas, 0.0, i)).collect();
    let free: Vec<usize> = (0..n)
        .filter(|&i| alphas[i] > ALPHA_EPS && alphas[i] < c - ALPHA_EPS)
        .collect();
    bias = if !free.is_empty() {
        free.iter().map(|&i| y[i] - margins[i]).sum::<f64>() / free.len() as f64
    } else {
        let mut b_lo = f64::NEG_INFINITY;
        let mut b_hi = f64::INFINITY;
        for i in 0..n {
            let at_upper = alphas[i] >= c - ALPHA_EPS;
            let bound = y[i] - margins[i];
            // (y=+1, a=0) and (y=-1, a=C) lower-bound the bias; the other two
            // bound states upper-bound it.
            if (labels[i] == 1 && !at_upper) || (labels[i] == -1 && at_upper) {
                b_lo = b_lo.max(bound);
            } else {
                b_hi = b_hi.min(bound);
            }
        }
        match (b_lo.is_finite(), b_hi.is_finite()) {
            (true, true) => 0.5 * (b_lo + b_hi),
            (true, false) => b_lo,
            (false, true) => b_hi,
            (false, false) => 0.0,
        }
    };

    let support_indices: Vec<usize> = (0..n).filter(|&i| alphas[i] > ALPHA_EPS).collect();
    Ok(SVMModel {
        alphas,
        bias,
        labels: labels.to_vec(),
        support_indices,
        kernel: KernelSpec::Precomputed,
        train_points: None,
    })
}

/// Trains a model end to end: builds the Gram matrix for `kernel`, runs SMO,
/// and stores the kernel plus training points for later prediction.
pub fn fit(
    points: &[Vec<f64>],
    labels: &[i32],
    kernel: KernelSpec,
    cfg: &TrainConfig,
) -> Result<SVMModel> {
    kernel.validate()?;
    if points.len() != labels.len() {
        return Err(Error::Dimension(format!(
            "{} points but {} labels",
            points.len(),
            labels.len()
        )));
    }
    let gram = gram_from_spec(&kernel, points)?;
    let mut model = train_smo(&gram, labels, cfg)?;
    model.kernel = kernel;
    model.train_points = Some(points.to_vec());
    Ok(model)
}

/// Gram matrix under any resolvable kernel spec.
pub fn gram_from_spec(kernel: &KernelSpec, points: &[Vec<f64>]) -> Result<KernelMatrix> {
    if points.is_empty() {
        return Err(Error::Argument("gram matrix of an empty point set".into()));
    }
    match kernel {
        KernelSpec::Quantum { estimator } => gram_matrix(points, estimator),
        KernelSpec::Precomputed => Err(Error::Config(
            "a precomputed kernel has no gram construction; pass the matrix directly".into(),
        )),
        spec => {
            KernelMatrix::from_fn(points.len(), |i, j| {
                classical_kernel(spec, &points[i], &points[j])
            })
        }
    }
}
