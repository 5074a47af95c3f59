use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A gate from the fixed set {H, X, Y, Z, RY, RZ, P, CNOT, CZ, CP}.
///
/// Controlled gates list the control qubit first. Angles are in radians.
#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    H(usize),
    X(usize),
    Y(usize),
    Z(usize),
    Ry { theta: f64, target: usize },
    Rz { theta: f64, target: usize },
    /// Phase gate: |1> picks up e^{i theta}.
    P { theta: f64, target: usize },
    Cnot { control: usize, target: usize },
    Cz { control: usize, target: usize },
    /// Controlled phase: |11> picks up e^{i theta}.
    Cp { theta: f64, control: usize, target: usize },
}

impl Gate {
    /// Qubits this gate acts on, control first for two-qubit kinds.
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::H(t) | Gate::X(t) | Gate::Y(t) | Gate::Z(t) => vec![t],
            Gate::Ry { target, .. } | Gate::Rz { target, .. } | Gate::P { target, .. } => {
                vec![target]
            }
            Gate::Cnot { control, target }
            | Gate::Cz { control, target }
            | Gate::Cp {
                control, target, ..
            } => vec![control, target],
        }
    }

    /// The inverse gate: self-inverse kinds unchanged, rotations with negated angle.
    pub fn inverse(&self) -> Gate {
        match *self {
            Gate::H(_) | Gate::X(_) | Gate::Y(_) | Gate::Z(_) | Gate::Cnot { .. } | Gate::Cz { .. } => {
                self.clone()
            }
            Gate::Ry { theta, target } => Gate::Ry {
                theta: -theta,
                target,
            },
            Gate::Rz { theta, target } => Gate::Rz {
                theta: -theta,
                target,
            },
            Gate::P { theta, target } => Gate::P {
                theta: -theta,
                target,
            },
            Gate::Cp {
                theta,
                control,
                target,
            } => Gate::Cp {
                theta: -theta,
                control,
                target,
            },
        }
    }

    /// 2x2 unitary for single-qubit kinds, `None` for controlled kinds.
    pub fn single_qubit_matrix(&self) -> Option<[[Complex64; 2]; 2]> {
        let re = Complex64::new;
        let zero = re(0.0, 0.0);
        let one = re(1.0, 0.0);
        match *self {
            Gate::H(_) => {
                let h = re(std::f64::consts::FRAC_1_SQRT_2, 0.0);
                Some([[h, h], [h, -h]])
            }
            Gate::X(_) => Some([[zero, one], [one, zero]]),
            Gate::Y(_) => Some([[zero, re(0.0, -1.0)], [re(0.0, 1.0), zero]]),
            Gate::Z(_) => Some([[one, zero], [zero, -one]]),
            Gate::Ry { theta, .. } => {
                let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
                Some([[re(c, 0.0), re(-s, 0.0)], [re(s, 0.0), re(c, 0.0)]])
            }
            Gate::Rz { theta, .. } => Some([
                [Complex64::from_polar(1.0, -theta / 2.0), zero],
                [zero, Complex64::from_polar(1.0, theta / 2.0)],
            ]),
            Gate::P { theta, .. } => {
                Some([[one, zero], [zero, Complex64::from_polar(1.0, theta)]])
            }
            _ => None,
        }
    }

    /// 4x4 unitary for controlled kinds in (control, target) basis order
    /// |00>, |01>, |10>, |11>; `None` for single-qubit kinds.
    pub fn two_qubit_matrix(&self) -> Option<[[Complex64; 4]; 4]> {
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let mut m = [[zero; 4]; 4];
        match *self {
            Gate::Cnot { .. } => {
                m[0][0] = one;
                m[1][1] = one;
                m[2][3] = one;
                m[3][2] = one;
            }
            Gate::Cz { .. } => {
                m[0][0] = one;
                m[1][1] = one;
                m[2][2] = one;
                m[3][3] = -one;
            }
            Gate::Cp { theta, .. } => {
                m[0][0] = one;
                m[1][1] = one;
                m[2][2] = one;
                m[3][3] = Complex64::from_polar(1.0, theta);
            }
            _ => return None,
        }
        Some(m)
    }

    /// Checks target indices against a register size: in range and distinct.
    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        let qs = self.qubits();
        for &q in &qs {
            if q >= n_qubits {
                return Err(Error::Index {
                    index: q,
                    n_qubits,
                });
            }
        }
        if qs.len() == 2 && qs[0] == qs[1] {
            return Err(Error::Argument(format!(
                "control and target must be distinct, both are {}",
                qs[0]
            )));
        }
        Ok(())
    }

    fn angle(&self) -> Option<f64> {
        match *self {
            Gate::Ry { theta, .. }
            | Gate::Rz { theta, .. }
            | Gate::P { theta, .. }
            | Gate::Cp { theta, .. } => Some(theta),
            _ => None,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Gate::H(_) => "H",
            Gate::X(_) => "X",
            Gate::Y(_) => "Y",
            Gate::Z(_) => "Z",
            Gate::Ry { .. } => "RY",
            Gate::Rz { .. } => "RZ",
            Gate::P { .. } => "P",
            Gate::Cnot { .. } => "CNOT",
            Gate::Cz { .. } => "CZ",
            Gate::Cp { .. } => "CP",
        }
    }
}

impl fmt::Display for Gate {
    /// One-line text form: `NAME [theta] qubit [qubit]`, e.g. `CP 1.5707963 0 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())?;
        if let Some(theta) = self.angle() {
            write!(f, " {theta}")?;
        }
        for q in self.qubits() {
            write!(f, " {q}")?;
        }
        Ok(())
    }
}

impl FromStr for Gate {
    type Err = Error;

    fn from_str(line: &str) -> Result<Gate> {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let bad = |msg: &str| Error::Parse {
            row: 0,
            column: "gate".into(),
            message: format!("{msg}: '{line}'"),
        };
        let kind = toks.first().ok_or_else(|| bad("empty gate line"))?.to_ascii_uppercase();

        let parse_usize = |s: &str| -> Result<usize> {
            s.parse::<usize>()
                .map_err(|_| bad(&format!("expected qubit index, got '{s}'")))
        };
        let parse_f64 = |s: &str| -> Result<f64> {
            let v: f64 = s
                .parse()
                .map_err(|_| bad(&format!("expected angle, got '{s}'")))?;
            if !v.is_finite() {
                return Err(bad("angle must be finite"));
            }
            Ok(v)
        };
        let expect_args = |n: usize| -> Result<()> {
            if toks.len() != n + 1 {
                Err(bad(&format!("{kind} takes {n} argument(s)")))
            } else {
                Ok(())
            }
        };

        match kind.as_str() {
            "H" | "X" | "Y" | "Z" => {
                expect_args(1)?;
                let t = parse_usize(toks[1])?;
                Ok(match kind.as_str() {
                    "H" => Gate::H(t),
                    "X" => Gate::X(t),
                    "Y" => Gate::Y(t),
                    _ => Gate::Z(t),
                })
            }
            "RY" | "RZ" | "P" => {
                expect_args(2)?;
                let theta = parse_f64(toks[1])?;
                let target = parse_usize(toks[2])?;
                Ok(match kind.as_str() {
                    "RY" => Gate::Ry { theta, target },
                    "RZ" => Gate::Rz { theta, target },
                    _ => Gate::P { theta, target },
                })
            }
            "CNOT" | "CZ" => {
                expect_args(2)?;
                let control = parse_usize(toks[1])?;
                let target = parse_usize(toks[2])?;
                Ok(if kind == "CNOT" {
                    Gate::Cnot { control, target }
                } else {
                    Gate::Cz { control, target }
                })
            }
            "CP" => {
                expect_args(3)?;
                Ok(Gate::Cp {
                    theta: parse_f64(toks[1])?,
                    control: parse_usize(toks[2])?,
                    target: parse_usize(toks[3])?,
                })
            }
            other => Err(bad(&format!("unknown gate kind '{other}'"))),
        }
    }
}
