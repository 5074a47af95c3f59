use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::sim::state::StateVector;

/// Measurement-outcome histogram from repeated sampling of one state.
///
/// Keys are bitstrings with qubit 0 first; only observed outcomes appear.
#[derive(Debug, Clone, PartialEq)]
pub struct ShotCounts {
    pub shots: u64,
    pub counts: BTreeMap<String, u64>,
}

impl ShotCounts {
    pub fn count(&self, bitstring: &str) -> u64 {
        self.counts.get(bitstring).copied().unwrap_or(0)
    }

    /// Observed frequency of one outcome.
    pub fn frequency(&self, bitstring: &str) -> f64 {
        self.count(bitstring) as f64 / self.shots as f64
    }
}

/// Draws `shots` measurement outcomes from the state's probability
/// distribution.
///
/// The generator is ChaCha8 seeded with `seed`: one uniform draw per shot,
/// inverted through the cumulative distribution, so identical inputs give
/// bit-identical counts on every platform.
pub fn sample(state: &StateVector, shots: u64, seed: u64) -> Result<ShotCounts> {
    if shots == 0 {
        return Err(Error::Argument("shots must be at least 1".into()));
    }
    let probs = state.probabilities();
    let mut cumulative = Vec::with_capacity(probs.len());
    let mut acc = 0.0;
    for p in &probs {
        acc += p;
        cumulative.push(acc);
    }

    let n = state.n_qubits();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut histogram = vec![0u64; probs.len()];
    for _ in 0..shots {
        let u: f64 = rng.random();
        let idx = cumulative.partition_point(|&c| c <= u).min(probs.len() - 1);
        histogram[idx] += 1;
    }

    let counts = histogram
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .map(|(k, c)| (format!("{k:0n$b}"), c))
        .collect();
    Ok(ShotCounts { shots, counts })
}
