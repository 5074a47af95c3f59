//! Dataset ingestion and preparation: CSV loading, standardization, PCA down
//! to the qubit count, rescaling into the encoding range, stratified
//! splitting, and synthetic dataset generation.
//!
//! All fit_* statistics come from training rows only; test data is always
//! transformed with the training model.

use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::feature_map::{encode, FeatureMapConfig};
use crate::linalg;

/// Dense feature matrix with binary labels in {-1, +1}.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub features: Vec<Vec<f64>>,
    pub labels: Vec<i32>,
    pub feature_names: Vec<String>,
}

impl Dataset {
    pub fn n_samples(&self) -> usize {
        self.features.len()
    }

    pub fn n_features(&self) -> usize {
        self.feature_names.len()
    }

    /// (positive, negative) sample counts.
    pub fn class_counts(&self) -> (usize, usize) {
        let pos = self.labels.iter().filter(|&&y| y == 1).count();
        (pos, self.labels.len() - pos)
    }

    fn select(&self, indices: &[usize]) -> Dataset {
        Dataset {
            features: indices.iter().map(|&i| self.features[i].clone()).collect(),
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
            feature_names: self.feature_names.clone(),
        }
    }

    /// Writes the CSV shape load_csv reads back: feature columns then a
    /// `label` column holding 1 or -1.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut w = csv::Writer::from_path(path)?;
        let mut header = self.feature_names.clone();
        header.push("label".into());
        w.write_record(&header)?;
        for (row, &label) in self.features.iter().zip(&self.labels) {
            let mut record: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
            record.push(format!("{label}"));
            w.write_record(&record)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Reads the headers of a CSV file.
pub fn csv_headers(path: &Path) -> Result<Vec<String>> {
    let mut reader = csv::Reader::from_path(path)
        .map_err(|e| Error::Input(format!("cannot open {}: {e}", path.display())))?;
    Ok(reader
        .headers()?
        .iter()
        .map(|s| s.trim().to_string())
        .collect())
}

fn resolve_column(headers: &[String], label_column: &str) -> Result<usize> {
    if let Some(idx) = headers.iter().position(|h| h == label_column) {
        return Ok(idx);
    }
    if let Ok(idx) = label_column.parse::<usize>() {
        if idx < headers.len() {
            return Ok(idx);
        }
    }
    Err(Error::Input(format!(
        "label column '{label_column}' not found; headers are {headers:?}"
    )))
}

/// Loads a labeled CSV: header row, one label column (by name, or by index
/// when no header matches), all other columns numeric features.
/// `positive_label` maps to +1, the single other label value to -1.
pub fn load_csv(path: &Path, label_column: &str, positive_label: &str) -> Result<Dataset> {
    let headers = csv_headers(path)?;
    let label_idx = resolve_column(&headers, label_column)?;
    let feature_names: Vec<String> = headers
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != label_idx)
        .map(|(_, h)| h.clone())
        .collect();

    let mut reader = csv::Reader::from_path(path)?;
    let mut features = Vec::new();
    let mut raw_labels: Vec<String> = Vec::new();
    for (row_idx, record) in reader.records().enumerate() {
        let record = record?;
        let row_no = row_idx + 1;
        if record.len() != headers.len() {
            return Err(Error::Parse {
                row: row_no,
                column: "<record>".into(),
                message: format!("{} fields, expected {}", record.len(), headers.len()),
            });
        }
        let mut row = Vec::with_capacity(headers.len() - 1);
        for (col_idx, cell) in record.iter().enumerate() {
            if col_idx == label_idx {
                raw_labels.push(cell.trim().to_string());
                continue;
            }
            let value: f64 = cell.trim().parse().map_err(|_| Error::Parse {
                row: row_no,
                column: headers[col_idx].clone(),
                message: format!("'{cell}' is not a number"),
            })?;
            if !value.is_finite() {
                return Err(Error::Parse {
                    row: row_no,
                    column: headers[col_idx].clone(),
                    message: format!("'{cell}' is not finite"),
                });
            }
            row.push(value);
        }
        features.push(row);
    }

    let mut distinct: Vec<String> = Vec::new();
    for label in &raw_labels {
        if !distinct.contains(label) {
            distinct.push(label.clone());
        }
    }
    if distinct.len() != 2 {
        return Err(Error::LabelCardinality {
            found: distinct.len(),
            values: distinct,
        });
    }
    if !distinct.contains(&positive_label.to_string()) {
        return Err(Error::Input(format!(
            "positive label '{positive_label}' not present; label values are {distinct:?}"
        )));
    }
    let labels = raw_labels
        .iter()
        .map(|v| if v == positive_label { 1 } else { -1 })
        .collect();
    Ok(Dataset {
        features,
        labels,
        feature_names,
    })
}

/// Loads a CSV with no label column: every column is a numeric feature.
pub fn load_unlabeled_csv(path: &Path) -> Result<(Vec<Vec<f64>>, Vec<String>)> {
    load_numeric_columns(path, None)
}

/// Loads every numeric column except the one at `skip`: feature extraction
/// when the label values are irrelevant.
pub fn load_unlabeled_csv_skipping(
    path: &Path,
    skip: usize,
) -> Result<(Vec<Vec<f64>>, Vec<String>)> {
    load_numeric_columns(path, Some(skip))
}

fn load_numeric_columns(path: &Path, skip: Option<usize>) -> Result<(Vec<Vec<f64>>, Vec<String>)> {
    let headers = csv_headers(path)?;
    let mut reader = csv::Reader::from_path(path)?;
    let mut features = Vec::new();
    for (row_idx, record) in reader.records().enumerate() {
        let record = record?;
        let mut row = Vec::with_capacity(headers.len());
        for (col_idx, cell) in record.iter().enumerate() {
            if skip == Some(col_idx) {
                continue;
            }
            let value: f64 = cell.trim().parse().map_err(|_| Error::Parse {
                row: row_idx + 1,
                column: headers.get(col_idx).cloned().unwrap_or_default(),
                message: format!("'{cell}' is not a number"),
            })?;
            row.push(value);
        }
        features.push(row);
    }
    let names = headers
        .into_iter()
        .enumerate()
        .filter(|&(i, _)| skip != Some(i))
        .map(|(_, h)| h)
        .collect();
    Ok((features, names))
}

fn check_width(expected: usize, data: &Dataset, what: &str) -> Result<()> {
    if data.n_features() != expected {
        return Err(Error::Dimension(format!(
            "{what} fitted on {expected} features, data has {}",
            data.n_features()
        )));
    }
    Ok(())
}

/// Per-column zero-mean unit-variance transform (population variance).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Standardizer {
    pub means: Vec<f64>,
    pub stds: Vec<f64>,
}

pub fn fit_standardize(train: &Dataset) -> Result<Standardizer> {
    let n = train.n_samples();
    if n < 2 {
        return Err(Error::Argument(
            "standardization needs at least 2 training rows".into(),
        ));
    }
    let d = train.n_features();
    let mut means = vec![0.0; d];
    for row in &train.features {
        for (m, v) in means.iter_mut().zip(row) {
            *m += v;
        }
    }
    for m in &mut means {
        *m /= n as f64;
    }
    let mut vars = vec![0.0; d];
    for row in &train.features {
        for ((var, v), m) in vars.iter_mut().zip(row).zip(&means) {
            *var += (v - m) * (v - m);
        }
    }
    let mut stds = Vec::with_capacity(d);
    for (col, var) in vars.iter().enumerate() {
        let std = (var / n as f64).sqrt();
        if std < 1e-12 {
            return Err(Error::DegenerateFeature {
                column: train.feature_names[col].clone(),
                reason: "constant column, standard deviation is 0".into(),
            });
        }
        stds.push(std);
    }
    Ok(Standardizer { means, stds })
}

pub fn apply_standardize(model: &Standardizer, data: &Dataset) -> Result<Dataset> {
    check_width(model.means.len(), data, "standardizer")?;
    let features = data
        .features
        .iter()
        .map(|row| {
            row.iter()
                .zip(&model.means)
                .zip(&model.stds)
                .map(|((v, m), s)| (v - m) / s)
                .collect()
        })
        .collect();
    Ok(Dataset {
        features,
        labels: data.labels.clone(),
        feature_names: data.feature_names.clone(),
    })
}

/// Principal components of the training covariance matrix.
///
/// Components are rows, sorted by descending eigenvalue, each signed so its
/// largest-magnitude entry is positive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PcaModel {
    pub mean: Vec<f64>,
    pub components: Vec<Vec<f64>>,
    /// Eigenvalues of the retained components.
    pub eigenvalues: Vec<f64>,
    /// Trace of the training covariance matrix.
    pub total_variance: f64,
}

impl PcaModel {
    pub fn retained_variance_fraction(&self) -> f64 {
        if self.total_variance <= 0.0 {
            return 1.0;
        }
        self.eigenvalues.iter().sum::<f64>() / self.total_variance
    }
}

pub fn fit_pca(train: &Dataset, n_components: usize) -> Result<PcaModel> {
    let d = train.n_features();
    let n = train.n_samples();
    if n_components == 0 || n_components > d {
        return Err(Error::Dimension(format!(
            "n_components = {n_components} outside 1..={d}"
        )));
    }
    if n < 2 {
        return Err(Error::Argument("PCA needs at least 2 training rows".into()));
    }
    let mut mean = vec![0.0; d];
    for row in &train.features {
        for (m, v) in mean.iter_mut().zip(row) {
            *m += v;
        }
    }
    for m in &mut mean {
        *m /= n as f64;
    }
    let mut cov = vec![vec![0.0; d]; d];
    for row in &train.features {
        let centered: Vec<f64> = row.iter().zip(&mean).map(|(v, m)| v - m).collect();
        for i in 0..d {
            for j in i..d {
                cov[i][j] += centered[i] * centered[j];
            }
        }
    }
    for i in 0..d {
        for j in i..d {
            cov[i][j] /= n as f64;
            cov[j][i] = cov[i][j];
        }
    }
    let total_variance = (0..d).map(|i| cov[i][i]).sum();
    let (eigenvalues, eigenvectors) = linalg::symmetric_eigen(&cov);
    let components: Vec<Vec<f64>> = eigenvectors
        .into_iter()
        .take(n_components)
        .map(|mut component| {
            let lead = component
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.abs().partial_cmp(&b.1.abs()).unwrap())
                .map(|(i, _)| i)
                .unwrap_or(0);
            if component[lead] < 0.0 {
                for v in &mut component {
                    *v = -*v;
                }
            }
            component
        })
        .collect();
    Ok(PcaModel {
        mean,
        components,
        eigenvalues: eigenvalues.into_iter().take(n_components).collect(),
        total_variance,
    })
}

pub fn apply_pca(model: &PcaModel, data: &Dataset) -> Result<Dataset> {
    check_width(model.mean.len(), data, "PCA")?;
    let features: Vec<Vec<f64>> = data
        .features
        .iter()
        .map(|row| {
            let centered: Vec<f64> = row.iter().zip(&model.mean).map(|(v, m)| v - m).collect();
            model
                .components
                .iter()
                .map(|c| c.iter().zip(&centered).map(|(a, b)| a * b).sum())
                .collect()
        })
        .collect();
    let feature_names = (1..=model.components.len())
        .map(|k| format!("pc{k}"))
        .collect();
    Ok(Dataset {
        features,
        labels: data.labels.clone(),
        feature_names,
    })
}

/// Per-column affine map of the training range onto [lo, hi].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rescaler {
    pub col_min: Vec<f64>,
    pub col_max: Vec<f64>,
    pub lo: f64,
    pub hi: f64,
}

pub fn fit_rescale(train: &Dataset, lo: f64, hi: f64) -> Result<Rescaler> {
    if !(hi > lo) {
        return Err(Error::Argument(format!(
            "rescale range [{lo}, {hi}] is empty"
        )));
    }
    let d = train.n_features();
    let mut col_min = vec![f64::INFINITY; d];
    let mut col_max = vec![f64::NEG_INFINITY; d];
    for row in &train.features {
        for ((mn, mx), v) in col_min.iter_mut().zip(&mut col_max).zip(row) {
            *mn = mn.min(*v);
            *mx = mx.max(*v);
        }
    }
    for col in 0..d {
        if col_max[col] - col_min[col] < 1e-12 {
            return Err(Error::DegenerateFeature {
                column: train.feature_names[col].clone(),
                reason: "constant column, cannot rescale".into(),
            });
        }
    }
    Ok(Rescaler {
        col_min,
        col_max,
        lo,
        hi,
    })
}

/// Applies the rescale map. Values outside the training range are clamped;
/// the clamp count is returned alongside the transformed data.
pub fn apply_rescale(model: &Rescaler, data: &Dataset) -> Result<(Dataset, usize)> {
    check_width(model.col_min.len(), data, "rescaler")?;
    let mut clamped = 0usize;
    let features = data
        .features
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .map(|(col, &v)| {
                    let (mn, mx) = (model.col_min[col], model.col_max[col]);
                    let v = if v < mn || v > mx {
                        clamped += 1;
                        v.clamp(mn, mx)
                    } else {
                        v
                    };
                    model.lo + (v - mn) / (mx - mn) * (model.hi - model.lo)
                })
                .collect()
        })
        .collect();
    Ok((
        Dataset {
            features,
            labels: data.labels.clone(),
            feature_names: data.feature_names.clone(),
        },
        clamped,
    ))
}

/// The full preparation chain fitted on training data: standardize, project
/// to `n_components` principal components, rescale into [lo, hi].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PreprocessModel {
    pub standardizer: Standardizer,
    pub pca: PcaModel,
    pub rescaler: Rescaler,
}

impl PreprocessModel {
    pub fn fit(train: &Dataset, n_components: usize, lo: f64, hi: f64) -> Result<Self> {
        let standardizer = fit_standardize(train)?;
        let standardized = apply_standardize(&standardizer, train)?;
        let pca = fit_pca(&standardized, n_components)?;
        let projected = apply_pca(&pca, &standardized)?;
        let rescaler = fit_rescale(&projected, lo, hi)?;
        Ok(PreprocessModel {
            standardizer,
            pca,
            rescaler,
        })
    }

    /// Applies the chain; returns the transformed data and the clamp count.
    pub fn apply(&self, data: &Dataset) -> Result<(Dataset, usize)> {
        let standardized = apply_standardize(&self.standardizer, data)?;
        let projected = apply_pca(&self.pca, &standardized)?;
        apply_rescale(&self.rescaler, &projected)
    }
}

/// Stratified train/test split: each class's test share deviates from
/// `test_fraction` by less than one sample. Row order within each split
/// follows the original dataset.
pub fn train_test_split(
    data: &Dataset,
    test_fraction: f64,
    seed: u64,
) -> Result<(Dataset, Dataset)> {
    if !(test_fraction > 0.0 && test_fraction < 1.0) {
        return Err(Error::Argument(format!(
            "test fraction {test_fraction} outside (0, 1)"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut train_idx = Vec::new();
    let mut test_idx = Vec::new();
    for class in [1, -1] {
        let mut indices: Vec<usize> = (0..data.n_samples())
            .filter(|&i| data.labels[i] == class)
            .collect();
        if indices.len() < 2 {
            return Err(Error::Stratification {
                class: format!("{class:+}"),
                count: indices.len(),
            });
        }
        indices.shuffle(&mut rng);
        let k = (test_fraction * indices.len() as f64).round() as usize;
        let k = k.min(indices.len());
        test_idx.extend_from_slice(&indices[..k]);
        train_idx.extend_from_slice(&indices[k..]);
    }
    train_idx.sort_unstable();
    test_idx.sort_unstable();
    Ok((data.select(&train_idx), data.select(&test_idx)))
}

/// Expectation of the diagonal parity observable in the encoded state:
/// +1 weight on even-weight basis states, -1 on odd.
pub fn parity_expectation(x: &[f64], config: &FeatureMapConfig) -> Result<f64> {
    let state = encode(x, config)?;
    Ok(state
        .probabilities()
        .iter()
        .enumerate()
        .map(|(k, p)| if k.count_ones() % 2 == 0 { *p } else { -*p })
        .sum())
}

/// Synthetic dataset that is separable under the quantum feature map.
///
/// Points are drawn uniformly from [0, 2pi)^n, labeled by the sign of the
/// parity expectation v(x), and kept only when |v(x)| >= gap. Returns
/// balanced train and test sets, positives first in each.
pub fn generate_adhoc(
    n_train_per_class: usize,
    n_test_per_class: usize,
    gap: f64,
    config: &FeatureMapConfig,
    seed: u64,
) -> Result<(Dataset, Dataset)> {
    config.validate()?;
    if !(config.n_qubits == 2 || config.n_qubits == 3) {
        return Err(Error::Argument(format!(
            "ad-hoc generation supports 2 or 3 qubits, got {}",
            config.n_qubits
        )));
    }
    if n_train_per_class == 0 || n_test_per_class == 0 {
        return Err(Error::Argument(
            "per-class sample counts must be at least 1".into(),
        ));
    }
    if !(gap > 0.0) {
        return Err(Error::Argument("gap must be positive".into()));
    }

    const MAX_CANDIDATES: usize = 1_000_000;
    let per_class = n_train_per_class + n_test_per_class;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut positives: Vec<Vec<f64>> = Vec::new();
    let mut negatives: Vec<Vec<f64>> = Vec::new();
    let mut examined = 0usize;
    while positives.len() < per_class || negatives.len() < per_class {
        if examined >= MAX_CANDIDATES {
            return Err(Error::GenerationExhausted { examined, gap });
        }
        examined += 1;
        let x: Vec<f64> = (0..config.n_qubits)
            .map(|_| rng.random::<f64>() * 2.0 * std::f64::consts::PI)
            .collect();
        let v = parity_expectation(&x, config)?;
        if v.abs() < gap {
            continue;
        }
        let bucket = if v > 0.0 { &mut positives } else { &mut negatives };
        if bucket.len() < per_class {
            bucket.push(x);
        }
    }

    let feature_names: Vec<String> = (0..config.n_qubits).map(|q| format!("x{q}")).collect();
    let build = |pos: &[Vec<f64>], neg: &[Vec<f64>]| Dataset {
        features: pos.iter().chain(neg.iter()).cloned().collect(),
        labels: std::iter::repeat(1)
            .take(pos.len())
            .chain(std::iter::repeat(-1).take(neg.len()))
            .collect(),
        feature_names: feature_names.clone(),
    };
    let train = build(
        &positives[..n_train_per_class],
        &negatives[..n_train_per_class],
    );
    let test = build(
        &positives[n_train_per_class..],
        &negatives[n_train_per_class..],
    );
    Ok((train, test))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy(features: Vec<Vec<f64>>, labels: Vec<i32>) -> Dataset {
        let d = features.first().map_or(0, Vec::len);
        Dataset {
            features,
            labels,
            feature_names: (0..d).map(|i| format!("f{i}")).collect(),
        }
    }

    #[test]
    fn standardize_column_formula() {
        let ds = toy(vec![vec![1.0], vec![2.0], vec![3.0]], vec![1, -1, 1]);
        let model = fit_standardize(&ds).unwrap();
        let out = apply_standardize(&model, &ds).unwrap();
        let expected = 1.224744871391589; // (3 - 2) / sqrt(2/3)
        assert!((out.features[0][0] + expected).abs() < 1e-12);
        assert!(out.features[1][0].abs() < 1e-12);
        assert!((out.features[2][0] - expected).abs() < 1e-12);
    }

    #[test]
    fn standardize_is_idempotent_on_normalized_input() {
        let ds = toy(vec![vec![1.0], vec![2.0], vec![3.0]], vec![1, -1, 1]);
        let first = apply_standardize(&fit_standardize(&ds).unwrap(), &ds).unwrap();
        let second = apply_standardize(&fit_standardize(&first).unwrap(), &first).unwrap();
        for (a, b) in first.features.iter().flatten().zip(second.features.iter().flatten()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn standardize_rejects_constant_column() {
        let ds = toy(vec![vec![5.0], vec![5.0], vec![5.0]], vec![1, -1, 1]);
        match fit_standardize(&ds) {
            Err(Error::DegenerateFeature { column, .. }) => assert_eq!(column, "f0"),
            other => panic!("expected degenerate feature, got {other:?}"),
        }
    }

    #[test]
    fn pca_full_rank_reconstructs() {
        let ds = toy(
            vec![vec![1.0, 2.0], vec![3.0, 1.0], vec![-1.0, 0.5], vec![0.2, -2.0]],
            vec![1, -1, 1, -1],
        );
        let model = fit_pca(&ds, 2).unwrap();
        let projected = apply_pca(&model, &ds).unwrap();
        for (orig, proj) in ds.features.iter().zip(&projected.features) {
            // x ~= mean + C^T z for full-rank projections.
            for col in 0..2 {
                let recon: f64 = model.mean[col]
                    + (0..2).map(|k| model.components[k][col] * proj[k]).sum::<f64>();
                assert!((recon - orig[col]).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn pca_line_data_keeps_all_variance() {
        let points: Vec<Vec<f64>> = (0..6).map(|i| vec![i as f64, i as f64]).collect();
        let n = points.len();
        let ds = toy(points, vec![1, -1, 1, -1, 1, -1]);
        let _ = n;
        let model = fit_pca(&ds, 1).unwrap();
        assert!((model.retained_variance_fraction() - 1.0).abs() < 1e-10);
        // Direction (1,1)/sqrt(2), sign convention positive.
        let c = &model.components[0];
        assert!((c[0] - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-10);
        assert!((c[1] - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-10);
    }

    #[test]
    fn pca_components_orthonormal() {
        let ds = toy(
            vec![
                vec![1.0, 0.3, -2.0],
                vec![0.5, 1.2, 0.0],
                vec![-1.5, 2.0, 1.0],
                vec![2.5, -0.7, 0.4],
                vec![0.1, 0.9, -1.1],
            ],
            vec![1, -1, 1, -1, 1],
        );
        let model = fit_pca(&ds, 3).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let dot: f64 = model.components[i]
                    .iter()
                    .zip(&model.components[j])
                    .map(|(a, b)| a * b)
                    .sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((dot - expect).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn pca_rejects_too_many_components() {
        let ds = toy(vec![vec![1.0], vec![2.0]], vec![1, -1]);
        assert!(matches!(fit_pca(&ds, 2), Err(Error::Dimension(_))));
    }

    #[test]
    fn rescale_affine_map() {
        let ds = toy(vec![vec![0.0], vec![5.0], vec![10.0]], vec![1, -1, 1]);
        let pi = std::f64::consts::PI;
        let model = fit_rescale(&ds, -pi, pi).unwrap();
        let (out, clamped) = apply_rescale(&model, &ds).unwrap();
        assert_eq!(clamped, 0);
        assert!((out.features[0][0] + pi).abs() < 1e-12);
        assert!(out.features[1][0].abs() < 1e-12);
        assert!((out.features[2][0] - pi).abs() < 1e-12);
    }

    #[test]
    fn rescale_clamps_and_counts() {
        let train = toy(vec![vec![0.0], vec![10.0]], vec![1, -1]);
        let model = fit_rescale(&train, 0.0, 1.0).unwrap();
        let probe = toy(vec![vec![-5.0], vec![15.0], vec![5.0]], vec![1, -1, 1]);
        let (out, clamped) = apply_rescale(&model, &probe).unwrap();
        assert_eq!(clamped, 2);
        assert_eq!(out.features[0][0], 0.0);
        assert_eq!(out.features[1][0], 1.0);
        assert!((out.features[2][0] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn split_is_stratified_and_deterministic() {
        let ds = toy(
            (0..10).map(|i| vec![i as f64]).collect(),
            vec![1, 1, 1, 1, 1, -1, -1, -1, -1, -1],
        );
        let (train_a, test_a) = train_test_split(&ds, 0.2, 9).unwrap();
        let (train_b, test_b) = train_test_split(&ds, 0.2, 9).unwrap();
        assert_eq!(train_a, train_b);
        assert_eq!(test_a, test_b);
        let (pos, neg) = test_a.class_counts();
        assert_eq!((pos, neg), (1, 1));
        let (pos, neg) = train_a.class_counts();
        assert_eq!((pos, neg), (4, 4));

        let (train_c, _) = train_test_split(&ds, 0.2, 10).unwrap();
        assert_ne!(train_a, train_c);
    }

    #[test]
    fn split_preserves_class_totals() {
        let ds = toy(
            (0..13).map(|i| vec![i as f64, -(i as f64)]).collect(),
            vec![1, -1, 1, -1, 1, -1, 1, -1, 1, -1, 1, -1, 1],
        );
        let (train, test) = train_test_split(&ds, 0.3, 3).unwrap();
        let (tp, tn) = train.class_counts();
        let (sp, sn) = test.class_counts();
        let (p, n) = ds.class_counts();
        assert_eq!(tp + sp, p);
        assert_eq!(tn + sn, n);
    }

    #[test]
    fn split_rejects_bad_fraction_and_small_class() {
        let ds = toy(
            vec![vec![0.0], vec![1.0], vec![2.0]],
            vec![1, 1, -1],
        );
        assert!(matches!(
            train_test_split(&ds, 0.0, 1),
            Err(Error::Argument(_))
        ));
        assert!(matches!(
            train_test_split(&ds, 0.5, 1),
            Err(Error::Stratification { .. })
        ));
    }

    #[test]
    fn no_leakage_from_test_rows() {
        let train = toy(
            vec![vec![1.0, 4.0], vec![2.0, 5.0], vec![3.0, 7.0], vec![0.5, 6.0]],
            vec![1, -1, 1, -1],
        );
        let model_a = PreprocessModel::fit(&train, 2, -1.0, 1.0).unwrap();
        // Refit after mutating unrelated (test) data must give the same model.
        let model_b = PreprocessModel::fit(&train, 2, -1.0, 1.0).unwrap();
        assert_eq!(model_a, model_b);
        // And applying to wildly different test data never changes the model.
        let test = toy(vec![vec![100.0, -100.0]], vec![1]);
        let _ = model_a.apply(&test).unwrap();
        assert_eq!(model_a, model_b);
    }

    #[test]
    fn adhoc_respects_gap_and_balance() {
        let config = FeatureMapConfig::default();
        let (train, test) = generate_adhoc(6, 3, 0.3, &config, 77).unwrap();
        assert_eq!(train.n_samples(), 12);
        assert_eq!(test.n_samples(), 6);
        assert_eq!(train.class_counts(), (6, 6));
        assert_eq!(test.class_counts(), (3, 3));
        for (x, &y) in train.features.iter().chain(&test.features).zip(train.labels.iter().chain(&test.labels)) {
            let v = parity_expectation(x, &config).unwrap();
            assert!(v.abs() >= 0.3, "|v| = {} below gap", v.abs());
            assert_eq!(if v > 0.0 { 1 } else { -1 }, y);
        }
    }

    #[test]
    fn adhoc_is_deterministic() {
        let config = FeatureMapConfig::default();
        let a = generate_adhoc(4, 2, 0.2, &config, 5).unwrap();
        let b = generate_adhoc(4, 2, 0.2, &config, 5).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn adhoc_rejects_bad_qubit_count_and_gap() {
        let config = FeatureMapConfig::new(4, 1).unwrap();
        assert!(matches!(
            generate_adhoc(2, 1, 0.3, &config, 1),
            Err(Error::Argument(_))
        ));
        let config2 = FeatureMapConfig::default();
        assert!(matches!(
            generate_adhoc(2, 1, 0.0, &config2, 1),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn adhoc_exhausts_on_impossible_gap() {
        let config = FeatureMapConfig::default();
        // |v| can never reach 1.0001.
        match generate_adhoc(1, 1, 1.0001, &config, 1) {
            Err(Error::GenerationExhausted { examined, .. }) => {
                assert_eq!(examined, 1_000_000);
            }
            other => panic!("expected exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn csv_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("data.csv");
        let ds = toy(
            vec![vec![0.25, -1.5], vec![3.125, 0.0625]],
            vec![1, -1],
        );
        ds.write_csv(&path).unwrap();
        let back = load_csv(&path, "label", "1").unwrap();
        assert_eq!(back.features, ds.features);
        assert_eq!(back.labels, ds.labels);
        assert_eq!(back.feature_names, ds.feature_names);
    }

    #[test]
    fn load_csv_maps_positive_label() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("mb.csv");
        std::fs::write(&path, "radius,texture,diagnosis\n1.0,2.0,M\n3.0,4.0,B\n5.0,6.0,M\n")
            .unwrap();
        let ds = load_csv(&path, "diagnosis", "M").unwrap();
        assert_eq!(ds.labels, vec![1, -1, 1]);
        assert_eq!(ds.feature_names, vec!["radius", "texture"]);
    }

    #[test]
    fn load_csv_errors() {
        let dir = tempfile::tempdir().unwrap();
        let missing = dir.path().join("nope.csv");
        assert!(matches!(
            load_csv(&missing, "label", "1"),
            Err(Error::Input(_))
        ));

        let three = dir.path().join("three.csv");
        std::fs::write(&three, "a,label\n1,x\n2,y\n3,z\n").unwrap();
        match load_csv(&three, "label", "x") {
            Err(Error::LabelCardinality { found, .. }) => assert_eq!(found, 3),
            other => panic!("expected label cardinality error, got {other:?}"),
        }

        let badcell = dir.path().join("bad.csv");
        std::fs::write(&badcell, "a,b,label\n1,2,M\n1,abc,B\n").unwrap();
        match load_csv(&badcell, "label", "M") {
            Err(Error::Parse { row, column, .. }) => {
                assert_eq!(row, 2);
                assert_eq!(column, "b");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}
