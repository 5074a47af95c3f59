//! Fidelity kernel between encoded data points: k(x, y) = |<phi(x)|phi(y)>|^2,
//! computed exactly from statevectors or estimated by shot sampling of the
//! compute-uncompute circuit U(y)^dagger U(x).

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::feature_map::{encode, build_feature_circuit, FeatureMapConfig};
use crate::linalg;
use crate::sim::sample;

/// Exact statevector overlap or sampled estimation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum EstimatorMode {
    Exact,
    Sampled { shots: u64, seed: u64 },
}

impl EstimatorMode {
    pub fn name(&self) -> &'static str {
        match self {
            EstimatorMode::Exact => "exact",
            EstimatorMode::Sampled { .. } => "sampled",
        }
    }

    pub fn shots(&self) -> u64 {
        match self {
            EstimatorMode::Exact => 0,
            EstimatorMode::Sampled { shots, .. } => *shots,
        }
    }
}

/// A feature map plus the estimation mode used to evaluate kernel entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelEstimator {
    pub feature_map: FeatureMapConfig,
    #[serde(flatten)]
    pub mode: EstimatorMode,
}

impl KernelEstimator {
    pub fn exact(feature_map: FeatureMapConfig) -> Self {
        KernelEstimator {
            feature_map,
            mode: EstimatorMode::Exact,
        }
    }

    pub fn sampled(feature_map: FeatureMapConfig, shots: u64, seed: u64) -> Self {
        KernelEstimator {
            feature_map,
            mode: EstimatorMode::Sampled { shots, seed },
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.feature_map.validate()?;
        if let EstimatorMode::Sampled { shots, .. } = self.mode {
            if shots == 0 {
                return Err(Error::Argument(
                    "sampled mode requires shots >= 1".into(),
                ));
            }
        }
        Ok(())
    }

    /// One kernel entry under this estimator's mode.
    pub fn entry(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        match self.mode {
            EstimatorMode::Exact => kernel_entry_exact(x, y, &self.feature_map),
            EstimatorMode::Sampled { .. } => kernel_entry_sampled(x, y, self),
        }
    }

    /// Like [`entry`](Self::entry) but with an explicit sampling seed,
    /// used for per-pair derived seeds in Gram assembly.
    fn entry_with_seed(&self, x: &[f64], y: &[f64], seed: u64) -> Result<f64> {
        match self.mode {
            EstimatorMode::Exact => kernel_entry_exact(x, y, &self.feature_map),
            EstimatorMode::Sampled { shots, .. } => {
                sampled_overlap(x, y, &self.feature_map, shots, seed)
            }
        }
    }
}

/// Exact kernel entry |<phi(x)|phi(y)>|^2, clamped into [0, 1].
pub fn kernel_entry_exact(x: &[f64], y: &[f64], config: &FeatureMapConfig) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::Dimension(format!(
            "kernel arguments have lengths {} and {}",
            x.len(),
            y.len()
        )));
    }
    let sx = encode(x, config)?;
    let sy = encode(y, config)?;
    Ok(sx.inner_product(&sy)?.norm_sqr().clamp(0.0, 1.0))
}

/// Sampled kernel entry: run U(y)^dagger U(x) on |0...0>, return the observed
/// frequency of the all-zero outcome.
pub fn kernel_entry_sampled(x: &[f64], y: &[f64], est: &KernelEstimator) -> Result<f64> {
    match est.mode {
        EstimatorMode::Sampled { shots, seed } => {
            sampled_overlap(x, y, &est.feature_map, shots, seed)
        }
        EstimatorMode::Exact => Err(Error::Config(
            "kernel_entry_sampled called with an exact-mode estimator".into(),
        )),
    }
}

fn sampled_overlap(
    x: &[f64],
    y: &[f64],
    config: &FeatureMapConfig,
    shots: u64,
    seed: u64,
) -> Result<f64> {
    if shots == 0 {
        return Err(Error::Argument("sampled mode requires shots >= 1".into()));
    }
    if x.len() != y.len() {
        return Err(Error::Dimension(format!(
            "kernel arguments have lengths {} and {}",
            x.len(),
            y.len()
        )));
    }
    let mut circuit = build_feature_circuit(x, config)?;
    circuit.extend(&build_feature_circuit(y, config)?.inverse())?;
    let state = circuit.run_from_zero()?;
    let counts = sample(&state, shots, seed)?;
    let zeros = "0".repeat(config.n_qubits);
    Ok(counts.frequency(&zeros).clamp(0.0, 1.0))
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Per-pair sampling seed, independent of evaluation order. The pair is
/// canonicalized so (i, j) and (j, i) share one seed.
pub fn pair_seed(seed: u64, i: usize, j: usize) -> u64 {
    let (a, b) = if i <= j { (i, j) } else { (j, i) };
    seed ^ splitmix64(((a as u64) << 32) | (b as u64 & 0xffff_ffff))
}

/// A dense symmetric n x n kernel matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl KernelMatrix {
    pub fn from_fn<F: FnMut(usize, usize) -> Result<f64>>(n: usize, mut f: F) -> Result<Self> {
        if n == 0 {
            return Err(Error::Argument("kernel matrix needs at least one row".into()));
        }
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let v = f(i, j)?;
                entries[i * n + j] = v;
                entries[j * n + i] = v;
            }
        }
        Ok(KernelMatrix { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn to_nested(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn max_asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    pub fn max_diagonal_deviation(&self) -> f64 {
        (0..self.n)
            .map(|i| (self.get(i, i) - 1.0).abs())
            .fold(0.0, f64::max)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        linalg::min_eigenvalue(&self.to_nested())
    }

    /// Writes the CSV export: a comment header naming size, mode, and shot
    /// count, then one row per line.
    pub fn write_csv<W: Write>(&self, mut w: W, mode: &EstimatorMode) -> Result<()> {
        writeln!(
            w,
            "# qkernel gram n={} mode={} shots={}",
            self.n,
            mode.name(),
            mode.shots()
        )?;
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|v| format!("{v}")).collect();
            writeln!(w, "{}", row.join(","))?;
        }
        Ok(())
    }
}

/// Full Gram matrix over `rows`: entry (i, j) is the kernel of (rows[i],
/// rows[j]).
///
/// Only the upper triangle is computed and mirrored. In exact mode the
/// diagonal is forced to exactly 1; in sampled mode every entry, diagonal
/// included, is estimated with its pair-derived seed.
pub fn gram_matrix(rows: &[Vec<f64>], est: &KernelEstimator) -> Result<KernelMatrix> {
    est.validate()?;
    if rows.is_empty() {
        return Err(Error::Argument("gram matrix of an empty point set".into()));
    }
    let base_seed = match est.mode {
        EstimatorMode::Sampled { seed, .. } => seed,
        EstimatorMode::Exact => 0,
    };
    KernelMatrix::from_fn(rows.len(), |i, j| {
        if i == j && est.mode == EstimatorMode::Exact {
            return Ok(1.0);
        }
        est.entry_with_seed(&rows[i], &rows[j], pair_seed(base_seed, i, j))
    })
}

/// Rectangular kernel block: entry (i, j) is the kernel of (test[i], train[j]).
pub fn cross_kernel(
    test: &[Vec<f64>],
    train: &[Vec<f64>],
    est: &KernelEstimator,
) -> Result<Vec<Vec<f64>>> {
    est.validate()?;
    if test.is_empty() || train.is_empty() {
        return Err(Error::Argument("cross kernel of an empty point set".into()));
    }
    let base_seed = match est.mode {
        EstimatorMode::Sampled { seed, .. } => seed,
        EstimatorMode::Exact => 0,
    };
    test.iter()
        .enumerate()
        .map(|(i, x)| {
            train
                .iter()
                .enumerate()
                .map(|(j, y)| est.entry_with_seed(x, y, pair_seed(base_seed, i, j)))
                .collect()
        })
        .collect()
}
