//! Data-encoding circuits: map a classical feature vector to a quantum state.
//!
//! The map is a second-order Pauli-Z evolution: per repetition, Hadamards on
//! every qubit, a single-qubit phase P(2 x_i) per feature, then a phase on
//! each entangled pair (i, j) sandwiched between CNOTs. One feature drives
//! one qubit.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sim::{Circuit, Gate, StateVector};

/// Which qubit pairs receive an entangling phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Entanglement {
    /// Adjacent pairs (0,1), (1,2), ...
    Linear,
    /// All pairs i < j.
    Full,
}

/// Angle fed to the pair phase gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PairScale {
    /// (pi - x_i)(pi - x_j).
    Product,
    /// x_i * x_j.
    Plain,
}

impl PairScale {
    fn angle(self, xi: f64, xj: f64) -> f64 {
        match self {
            PairScale::Product => {
                (std::f64::consts::PI - xi) * (std::f64::consts::PI - xj)
            }
            PairScale::Plain => xi * xj,
        }
    }
}

/// Everything that pins down the encoding circuit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureMapConfig {
    pub n_qubits: usize,
    /// Circuit repetitions.
    pub depth: usize,
    pub entanglement: Entanglement,
    pub pair_scale: PairScale,
}

impl FeatureMapConfig {
    pub fn new(n_qubits: usize, depth: usize) -> Result<Self> {
        let config = FeatureMapConfig {
            n_qubits,
            depth,
            entanglement: Entanglement::Linear,
            pair_scale: PairScale::Product,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn with_entanglement(mut self, entanglement: Entanglement) -> Self {
        self.entanglement = entanglement;
        self
    }

    pub fn with_pair_scale(mut self, pair_scale: PairScale) -> Self {
        self.pair_scale = pair_scale;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_qubits == 0 {
            return Err(Error::Argument("n_qubits must be at least 1".into()));
        }
        if self.depth == 0 {
            return Err(Error::Argument("depth must be at least 1".into()));
        }
        Ok(())
    }

    /// Entangled qubit pairs in deterministic order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        match self.entanglement {
            Entanglement::Linear => (1..self.n_qubits).map(|j| (j - 1, j)).collect(),
            Entanglement::Full => {
                let mut out = Vec::new();
                for i in 0..self.n_qubits {
                    for j in (i + 1)..self.n_qubits {
                        out.push((i, j));
                    }
                }
                out
            }
        }
    }

    /// Exact gate count of the encoding circuit: per repetition, one H and one
    /// P per qubit plus three gates (CNOT, P, CNOT) per entangled pair.
    pub fn gate_count(&self) -> usize {
        self.depth * (2 * self.n_qubits + 3 * self.pairs().len())
    }

    fn check_features(&self, x: &[f64]) -> Result<()> {
        self.validate()?;
        if x.len() != self.n_qubits {
            return Err(Error::Dimension(format!(
                "feature vector has length {}, config expects {}",
                x.len(),
                self.n_qubits
            )));
        }
        if let Some(pos) = x.iter().position(|v| !v.is_finite()) {
            return Err(Error::Argument(format!(
                "feature {pos} is not finite: {}",
                x[pos]
            )));
        }
        Ok(())
    }
}

impl Default for FeatureMapConfig {
    /// Two qubits, two repetitions, linear entanglement, product pair scale.
    fn default() -> Self {
        FeatureMapConfig {
            n_qubits: 2,
            depth: 2,
            entanglement: Entanglement::Linear,
            pair_scale: PairScale::Product,
        }
    }
}

/// Builds the encoding circuit for feature vector `x`.
pub fn build_feature_circuit(x: &[f64], config: &FeatureMapConfig) -> Result<Circuit> {
    config.check_features(x)?;
    let mut circuit = Circuit::new(config.n_qubits)?;
    for _ in 0..config.depth {
        for q in 0..config.n_qubits {
            circuit.push(Gate::H(q))?;
        }
        for (q, &xi) in x.iter().enumerate() {
            circuit.push(Gate::P {
                theta: 2.0 * xi,
                target: q,
            })?;
        }
        for (i, j) in config.pairs() {
            let theta = 2.0 * config.pair_scale.angle(x[i], x[j]);
            circuit.push(Gate::Cnot { control: i, target: j })?;
            circuit.push(Gate::P { theta, target: j })?;
            circuit.push(Gate::Cnot { control: i, target: j })?;
        }
    }
    Ok(circuit)
}

/// Encodes `x` as a quantum state: the feature circuit applied to |0...0>.
pub fn encode(x: &[f64], config: &FeatureMapConfig) -> Result<StateVector> {
    build_feature_circuit(x, config)?.run_from_zero()
}
