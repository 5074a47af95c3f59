//! Shared test oracles, kept independent of the simulator's gate-application
//! path: gates become explicit 2^n x 2^n matrices via Kronecker products and
//! states evolve by dense matrix-vector multiplication.
#![allow(dead_code)]

pub mod svm_grid;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qksvm::sim::{Circuit, Gate};

pub type Matrix = Vec<Vec<Complex64>>;

pub fn identity(dim: usize) -> Matrix {
    let mut m = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Complex64::new(1.0, 0.0);
    }
    m
}

pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (ra, ca) = (a.len(), a[0].len());
    let (rb, cb) = (b.len(), b[0].len());
    let mut out = vec![vec![Complex64::new(0.0, 0.0); ca * cb]; ra * rb];
    for i in 0..ra {
        for j in 0..ca {
            for k in 0..rb {
                for l in 0..cb {
                    out[i * rb + k][j * cb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn matvec(m: &Matrix, v: &[Complex64]) -> Vec<Complex64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = vec![vec![Complex64::new(0.0, 0.0); b[0].len()]; n];
    for i in 0..n {
        for (k, bk) in b.iter().enumerate() {
            let aik = a[i][k];
            for (j, bkj) in bk.iter().enumerate() {
                out[i][j] += aik * bkj;
            }
        }
    }
    out
}

/// |a><b| on one qubit.
fn elementary(a: usize, b: usize) -> Matrix {
    let mut m = vec![vec![Complex64::new(0.0, 0.0); 2]; 2];
    m[a][b] = Complex64::new(1.0, 0.0);
    m
}

fn two_by_two(u: [[Complex64; 2]; 2]) -> Matrix {
    u.iter().map(|row| row.to_vec()).collect()
}

/// Full 2^n x 2^n unitary of one gate, assembled by Kronecker products with
/// qubit 0 as the leftmost factor (most significant bit).
pub fn gate_full_matrix(gate: &Gate, n_qubits: usize) -> Matrix {
    let qubits = gate.qubits();
    if let Some(u) = gate.single_qubit_matrix() {
        let target = qubits[0];
        let mut acc = identity(1);
        for q in 0..n_qubits {
            let factor = if q == target {
                two_by_two(u)
            } else {
                identity(2)
            };
            acc = kron(&acc, &factor);
        }
        return acc;
    }

    let m4 = gate.two_qubit_matrix().expect("two-qubit gate");
    let (control, target) = (qubits[0], qubits[1]);
    let dim = 1 << n_qubits;
    let mut full = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
    for a in 0..2 {
        for b in 0..2 {
            for d in 0..2 {
                for e in 0..2 {
                    let coeff = m4[(a << 1) | d][(b << 1) | e];
                    if coeff.norm() == 0.0 {
                        continue;
                    }
                    let mut acc = identity(1);
                    for q in 0..n_qubits {
                        let factor = if q == control {
                            elementary(a, b)
                        } else if q == target {
                            elementary(d, e)
                        } else {
                            identity(2)
                        };
                        acc = kron(&acc, &factor);
                    }
                    for i in 0..dim {
                        for j in 0..dim {
                            full[i][j] += coeff * acc[i][j];
                        }
                    }
                }
            }
        }
    }
    full
}

/// Product of all gate matrices, last gate leftmost.
pub fn circuit_full_matrix(circuit: &Circuit) -> Matrix {
    let mut acc = identity(1 << circuit.n_qubits());
    for gate in circuit.gates() {
        acc = matmul(&gate_full_matrix(gate, circuit.n_qubits()), &acc);
    }
    acc
}

/// Random unit-norm amplitude vector.
pub fn random_amplitudes(n_qubits: usize, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    let dim = 1 << n_qubits;
    let mut v: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
        .collect();
    let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in &mut v {
        *a /= norm;
    }
    v
}

/// Single-qubit reduced density matrix straight from raw amplitudes, written
/// against the qubit-0-as-MSB index convention.
pub fn qubit_marginal(amps: &[Complex64], n_qubits: usize, qubit: usize) -> [[Complex64; 2]; 2] {
    let mask = 1usize << (n_qubits - 1 - qubit);
    let zero = Complex64::new(0.0, 0.0);
    let mut rho = [[zero; 2]; 2];
    for (idx, amp) in amps.iter().enumerate() {
        let bit = usize::from(idx & mask != 0);
        for (jdx, other) in amps.iter().enumerate() {
            if idx & !mask == jdx & !mask {
                let obit = usize::from(jdx & mask != 0);
                rho[bit][obit] += amp * other.conj();
            }
        }
    }
    rho
}

/// Fidelity <phi|rho|phi> of a marginal with the pure state (alpha, beta).
pub fn marginal_fidelity(rho: &[[Complex64; 2]; 2], alpha: Complex64, beta: Complex64) -> f64 {
    let v = [alpha, beta];
    let mut f = Complex64::new(0.0, 0.0);
    for i in 0..2 {
        for j in 0..2 {
            f += v[i].conj() * rho[i][j] * v[j];
        }
    }
    f.re
}
