use thiserror::Error;

/// Errors produced by the simulator, kernel, solver, and data pipeline.
#[derive(Error, Debug)]
pub enum Error {
    #[error("capacity: {0} qubits requested, supported range is 1..={max} (2^{max} amplitudes)", max = crate::sim::MAX_QUBITS)]
    Capacity(usize),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("qubit index {index} out of range for {n_qubits} qubits")]
    Index { index: usize, n_qubits: usize },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("state (alpha, beta) is not normalized: |alpha|^2 + |beta|^2 = {norm_sqr}")]
    Normalization { norm_sqr: f64 },

    #[error("configuration: {0}")]
    Config(String),

    #[error("degenerate data: {0}")]
    DegenerateData(String),

    #[error("degenerate feature '{column}': {reason}")]
    DegenerateFeature { column: String, reason: String },

    #[error("label column holds {found} distinct values, expected exactly 2: {values:?}")]
    LabelCardinality { found: usize, values: Vec<String> },

    #[error("parse error at row {row}, column '{column}': {message}")]
    Parse {
        row: usize,
        column: String,
        message: String,
    },

    #[error("input: {0}")]
    Input(String),

    #[error("stratification: class '{class}' has {count} samples, need at least 2")]
    Stratification { class: String, count: usize },

    #[error("generation exhausted after {examined} candidates; try a smaller gap than {gap}")]
    GenerationExhausted { examined: usize, gap: f64 },

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
