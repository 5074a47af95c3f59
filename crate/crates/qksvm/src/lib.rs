//! Quantum-kernel binary classification without quantum hardware.
//!
//! The crate simulates data-encoding circuits on a dense statevector,
//! evaluates the fidelity kernel k(x, y) = |<phi(x)|phi(y)>|^2 exactly or by
//! shot sampling of the compute-uncompute circuit, trains a soft-margin SVM
//! on the resulting Gram matrix with an SMO solver, and compares the result
//! against classical kernels.
//!
//! Module map:
//!
//! * [`sim`] — statevector simulator: states, gates, circuits, sampling.
//! * [`feature_map`] — parameterized data-encoding circuits.
//! * [`kernel`] — fidelity kernel entries, Gram and cross-kernel matrices.
//! * [`svm`] — kernels, SMO training, prediction, model persistence.
//! * [`data`] — CSV ingestion, standardize/PCA/rescale, splits, synthesis.
//! * [`plot`] — deterministic SVG emission.

pub mod data;
pub mod error;
pub mod feature_map;
pub mod kernel;
pub mod linalg;
pub mod plot;
pub mod sim;
pub mod svm;

pub use error::{Error, Result};

/// Default seed used anywhere a seed is optional, so runs are reproducible
/// unless the caller asks otherwise.
pub const DEFAULT_SEED: u64 = 42;
