use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::sim::gate::Gate;
use crate::sim::state::{StateVector, MAX_QUBITS};

/// An ordered list of gates on a fixed-size qubit register.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > MAX_QUBITS {
            return Err(Error::Capacity(n_qubits));
        }
        Ok(Circuit {
            n_qubits,
            gates: Vec::new(),
        })
    }

    pub fn from_gates(n_qubits: usize, gates: Vec<Gate>) -> Result<Self> {
        let mut circuit = Circuit::new(n_qubits)?;
        for gate in gates {
            circuit.push(gate)?;
        }
        Ok(circuit)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Appends a gate after validating its targets.
    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.n_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    /// Appends every gate of `other`, which must act on the same register size.
    pub fn extend(&mut self, other: &Circuit) -> Result<()> {
        if other.n_qubits != self.n_qubits {
            return Err(Error::Dimension(format!(
                "cannot append a {}-qubit circuit to a {}-qubit circuit",
                other.n_qubits, self.n_qubits
            )));
        }
        self.gates.extend(other.gates.iter().cloned());
        Ok(())
    }

    /// The adjoint circuit: gates reversed, each replaced by its inverse.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            n_qubits: self.n_qubits,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
        }
    }

    /// Runs the circuit on `initial`, returning the final state.
    pub fn run(&self, initial: &StateVector) -> Result<StateVector> {
        if initial.n_qubits() != self.n_qubits {
            return Err(Error::Dimension(format!(
                "{}-qubit circuit applied to {}-qubit state",
                self.n_qubits,
                initial.n_qubits()
            )));
        }
        let mut state = initial.clone();
        for gate in &self.gates {
            state.apply(gate)?;
        }
        Ok(state)
    }

    /// Runs the circuit on |0...0>.
    pub fn run_from_zero(&self) -> Result<StateVector> {
        self.run(&StateVector::zero(self.n_qubits)?)
    }

    /// Parses the one-gate-per-line text format, e.g.
    ///
    /// ```text
    /// # comment
    /// H 0
    /// CP 1.5707963 0 1
    /// CNOT 0 1
    /// ```
    ///
    /// Blank lines and `#` comments are skipped. The register size is the
    /// largest referenced qubit index plus one.
    pub fn parse(text: &str) -> Result<Circuit> {
        let mut gates = Vec::new();
        let mut max_qubit = 0usize;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let gate: Gate = line.parse().map_err(|e| match e {
                Error::Parse { column, message, .. } => Error::Parse {
                    row: lineno + 1,
                    column,
                    message,
                },
                other => other,
            })?;
            max_qubit = max_qubit.max(gate.qubits().into_iter().max().unwrap_or(0));
            gates.push(gate);
        }
        if gates.is_empty() {
            return Err(Error::Argument("circuit text holds no gates".into()));
        }
        Circuit::from_gates(max_qubit + 1, gates)
    }

    /// Like [`Circuit::parse`] but with an explicit register size.
    pub fn parse_with_qubits(text: &str, n_qubits: usize) -> Result<Circuit> {
        let parsed = Circuit::parse(text)?;
        if parsed.n_qubits > n_qubits {
            return Err(Error::Index {
                index: parsed.n_qubits - 1,
                n_qubits,
            });
        }
        Circuit::from_gates(n_qubits, parsed.gates)
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for gate in &self.gates {
            writeln!(f, "{gate}")?;
        }
        Ok(())
    }
}

/// Builds the 3-qubit teleportation circuit sending alpha|0> + beta|1> from
/// qubit 0 to qubit 2.
///
/// Mid-circuit measurement is deferred: the classically-controlled X and Z
/// corrections become CNOT(1,2) and CZ(0,2), so the whole circuit stays
/// unitary and qubit 2 ends exactly in alpha|0> + beta|1>.
pub fn build_teleportation(alpha: Complex64, beta: Complex64) -> Result<Circuit> {
    let norm_sqr = alpha.norm_sqr() + beta.norm_sqr();
    if (norm_sqr - 1.0).abs() > 1e-10 {
        return Err(Error::Normalization { norm_sqr });
    }

    // Prepare alpha|0> + beta|1> on qubit 0 from |0>:
    //   RY(t) gives cos(t/2)|0> + sin(t/2)|1>,
    //   RZ(-2a) rotates the |0> phase to arg(alpha),
    //   P(a + b) sets the |1> phase to arg(beta).
    let t = 2.0 * beta.norm().atan2(alpha.norm());
    let a = if alpha.norm() > 0.0 { alpha.arg() } else { 0.0 };
    let b = if beta.norm() > 0.0 { beta.arg() } else { 0.0 };

    Circuit::from_gates(
        3,
        vec![
            Gate::Ry { theta: t, target: 0 },
            Gate::Rz { theta: -2.0 * a, target: 0 },
            Gate::P { theta: a + b, target: 0 },
            // Bell pair on qubits 1-2.
            Gate::H(1),
            Gate::Cnot { control: 1, target: 2 },
            // Bell-basis rotation on qubits 0-1.
            Gate::Cnot { control: 0, target: 1 },
            Gate::H(0),
            // Deferred-measurement corrections.
            Gate::Cnot { control: 1, target: 2 },
            Gate::Cz { control: 0, target: 2 },
        ],
    )
}
