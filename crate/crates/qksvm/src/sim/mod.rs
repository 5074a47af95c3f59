//! Dense statevector simulation: state preparation, gate application, inner
//! products, measurement probabilities, and shot sampling.
//!
//! Conventions, fixed once and relied on by every downstream module:
//!
//! * Basis index `k` carries qubit 0 as its **most significant bit**; sampled
//!   bitstrings are written qubit 0 first.
//! * Registers hold 1 to [`MAX_QUBITS`] qubits (2^24 amplitudes, ~256 MB).
//! * All randomness flows through ChaCha8 seeded from a caller-supplied `u64`,
//!   so shot counts are bit-identical across platforms and runs.
//! * Circuits are purely unitary; measurement happens only at the end, and
//!   teleportation uses deferred-measurement controlled corrections instead of
//!   mid-circuit collapse.

mod circuit;
mod gate;
mod sample;
mod state;

pub use circuit::{build_teleportation, Circuit};
pub use gate::Gate;
pub use sample::{sample, ShotCounts};
pub use state::{apply_gate, StateVector, MAX_QUBITS};
