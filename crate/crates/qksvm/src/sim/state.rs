use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::sim::gate::Gate;

/// Largest supported register: 2^24 complex amplitudes (~256 MB).
pub const MAX_QUBITS: usize = 24;

/// Dense statevector over 2^n basis states.
///
/// Basis ordering: index `k` has qubit 0 as its most significant bit, so for
/// two qubits |10> (qubit 0 in |1>, qubit 1 in |0>) is index 2. Bitstrings in
/// measurement results follow the same order, qubit 0 first.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// The all-zeros state |0...0> on `n_qubits` qubits.
    pub fn zero(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::Capacity(n_qubits));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n_qubits];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Ok(StateVector {
            n_qubits,
            amplitudes,
        })
    }

    /// Builds a state from raw amplitudes, checking length and unit norm.
    pub fn from_amplitudes(n_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::Capacity(n_qubits));
        }
        if amplitudes.len() != 1 << n_qubits {
            return Err(Error::Dimension(format!(
                "{} amplitudes for {} qubits, expected {}",
                amplitudes.len(),
                n_qubits,
                1usize << n_qubits
            )));
        }
        let state = StateVector {
            n_qubits,
            amplitudes,
        };
        let norm = state.norm();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::Normalization {
                norm_sqr: norm * norm,
            });
        }
        Ok(state)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Euclidean norm; 1 for any valid state.
    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// <self|other> = sum conj(a_k) b_k.
    pub fn inner_product(&self, other: &StateVector) -> Result<Complex64> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::Dimension(format!(
                "inner product between {}-qubit and {}-qubit states",
                self.n_qubits, other.n_qubits
            )));
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// |amplitude_k|^2 for every basis state.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Bit mask selecting `qubit` within a basis index (qubit 0 = MSB).
    fn mask(&self, qubit: usize) -> usize {
        1 << (self.n_qubits - 1 - qubit)
    }

    /// Applies a gate in place via index arithmetic over the amplitude array.
    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.n_qubits)?;
        match *gate {
            Gate::Cnot { control, target } => {
                let c = self.mask(control);
                let t = self.mask(target);
                for i in 0..self.amplitudes.len() {
                    if i & c != 0 && i & t == 0 {
                        self.amplitudes.swap(i, i | t);
                    }
                }
            }
            Gate::Cz { control, target } => {
                let c = self.mask(control);
                let t = self.mask(target);
                for (i, amp) in self.amplitudes.iter_mut().enumerate() {
                    if i & c != 0 && i & t != 0 {
                        *amp = -*amp;
                    }
                }
            }
            Gate::Cp { theta, control, target } => {
                let c = self.mask(control);
                let t = self.mask(target);
                let phase = Complex64::from_polar(1.0, theta);
                for (i, amp) in self.amplitudes.iter_mut().enumerate() {
                    if i & c != 0 && i & t != 0 {
                        *amp *= phase;
                    }
                }
            }
            _ => {
                let target = gate.qubits()[0];
                let u = gate
                    .single_qubit_matrix()
                    .expect("single-qubit kind has a matrix");
                let m = self.mask(target);
                for i in 0..self.amplitudes.len() {
                    if i & m == 0 {
                        let j = i | m;
                        let a = self.amplitudes[i];
                        let b = self.amplitudes[j];
                        self.amplitudes[i] = u[0][0] * a + u[0][1] * b;
                        self.amplitudes[j] = u[1][0] * a + u[1][1] * b;
                    }
                }
            }
        }
        Ok(())
    }

    /// Reduced density matrix of one qubit, tracing out the rest.
    pub fn reduced_density_matrix(&self, qubit: usize) -> Result<[[Complex64; 2]; 2]> {
        if qubit >= self.n_qubits {
            return Err(Error::Index {
                index: qubit,
                n_qubits: self.n_qubits,
            });
        }
        let m = self.mask(qubit);
        let zero = Complex64::new(0.0, 0.0);
        let mut rho = [[zero; 2]; 2];
        for i in 0..self.amplitudes.len() {
            if i & m == 0 {
                let a0 = self.amplitudes[i];
                let a1 = self.amplitudes[i | m];
                rho[0][0] += a0 * a0.conj();
                rho[0][1] += a0 * a1.conj();
                rho[1][0] += a1 * a0.conj();
                rho[1][1] += a1 * a1.conj();
            }
        }
        Ok(rho)
    }

    /// Fidelity <phi|rho|phi> between one qubit's reduced state and the pure
    /// single-qubit state alpha|0> + beta|1>.
    pub fn qubit_fidelity(&self, qubit: usize, alpha: Complex64, beta: Complex64) -> Result<f64> {
        let rho = self.reduced_density_matrix(qubit)?;
        let v = [alpha, beta];
        let mut f = Complex64::new(0.0, 0.0);
        for (i, vi) in v.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                f += vi.conj() * rho[i][j] * vj;
            }
        }
        Ok(f.re)
    }
}

/// Convenience wrapper returning a new state with one gate applied.
pub fn apply_gate(state: &StateVector, gate: &Gate) -> Result<StateVector> {
    let mut out = state.clone();
    out.apply(gate)?;
    Ok(out)
}
