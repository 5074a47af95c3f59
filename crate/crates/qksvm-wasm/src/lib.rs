//! Browser demo: three interactive views over the quantum-kernel toolkit,
//! each returning a self-contained SVG string for the host page to inject.
//!
//! The exports compile to plain functions on native targets, which is how
//! the tests below exercise them without a wasm runtime.

use num_complex::Complex64;
use wasm_bindgen::prelude::wasm_bindgen;

use qksvm::data::generate_adhoc;
use qksvm::feature_map::{Entanglement, FeatureMapConfig, PairScale};
use qksvm::kernel::KernelEstimator;
use qksvm::plot::{bar_chart_svg, decision_boundary_svg, line_plot_svg, Series};
use qksvm::sim::build_teleportation;
use qksvm::svm::{decision_value, fit, predict, KernelSpec, TrainConfig};

fn feature_map(n_qubits: usize, depth: usize, full_entanglement: bool) -> Result<FeatureMapConfig, String> {
    Ok(FeatureMapConfig::new(n_qubits, depth)
        .map_err(|e| e.to_string())?
        .with_entanglement(if full_entanglement {
            Entanglement::Full
        } else {
            Entanglement::Linear
        })
        .with_pair_scale(PairScale::Product))
}

/// Generates the parity-labeled dataset, trains a quantum-kernel SVM on it,
/// and renders the decision boundary with the held-out test points.
///
/// `shots = 0` selects exact kernel evaluation; any positive value estimates
/// every kernel entry from that many samples.
#[wasm_bindgen]
pub fn boundary_svg(
    train_per_class: usize,
    test_per_class: usize,
    gap: f64,
    depth: usize,
    full_entanglement: bool,
    c: f64,
    shots: u64,
    seed: u64,
) -> Result<String, String> {
    let config = feature_map(2, depth, full_entanglement)?;
    let (train, test) =
        generate_adhoc(train_per_class, test_per_class, gap, &config, seed).map_err(|e| e.to_string())?;

    let estimator = if shots == 0 {
        KernelEstimator::exact(config)
    } else {
        KernelEstimator::sampled(config, shots, seed)
    };
    let spec = KernelSpec::Quantum { estimator };
    let train_config = TrainConfig {
        c,
        seed,
        ..TrainConfig::default()
    };
    let model =
        fit(&train.features, &train.labels, spec, &train_config).map_err(|e| e.to_string())?;

    let predictions = predict(&model, &test.features).map_err(|e| e.to_string())?;
    let correct = predictions
        .iter()
        .zip(&test.labels)
        .filter(|(a, b)| a == b)
        .count();
    let title = format!(
        "quantum kernel boundary — test accuracy {correct}/{}",
        test.labels.len()
    );
    decision_boundary_svg(&test.features, &test.labels, &predictions, &title, |x, y| {
        let row = model.kernel_row(&[x, y]).expect("grid point evaluates");
        decision_value(&model, &row).expect("row length matches")
    })
    .map_err(|e| e.to_string())
}

/// Kernel profile k(x, y) for a single qubit as x sweeps one period around
/// the reference point y: the exact curve as a line, shot estimates as
/// markers.
#[wasm_bindgen]
pub fn kernel_curve_svg(depth: usize, y: f64, shots: u64, seed: u64) -> Result<String, String> {
    if shots == 0 {
        return Err("shots must be at least 1".into());
    }
    let config = FeatureMapConfig::new(1, depth).map_err(|e| e.to_string())?;
    let exact = KernelEstimator::exact(config.clone());

    let n = 81usize;
    let xs: Vec<f64> = (0..n)
        .map(|i| y - std::f64::consts::PI + std::f64::consts::TAU * i as f64 / (n - 1) as f64)
        .collect();
    let mut exact_ys = Vec::with_capacity(n);
    let mut sampled_ys = Vec::with_capacity(n);
    for (i, &x) in xs.iter().enumerate() {
        exact_ys.push(exact.entry(&[x], &[y]).map_err(|e| e.to_string())?);
        let sampled = KernelEstimator::sampled(config.clone(), shots, seed ^ (i as u64))
            .entry(&[x], &[y])
            .map_err(|e| e.to_string())?;
        sampled_ys.push(sampled);
    }

    let title = format!("k(x, y) around y = {y:.2}, depth {depth}, {shots} shots");
    line_plot_svg(
        &xs,
        &[
            Series {
                label: "exact |<phi(x)|phi(y)>|^2",
                color: "#1a202c",
                ys: &exact_ys,
                markers_only: false,
            },
            Series {
                label: "shot estimate",
                color: "#c53030",
                ys: &sampled_ys,
                markers_only: true,
            },
        ],
        &title,
        Some((0.0, 1.0)),
    )
    .map_err(|e| e.to_string())
}

/// Teleports alpha|0> + beta|1> (normalizing the inputs first) and renders
/// the output qubit's marginal with the achieved fidelity in the title.
#[wasm_bindgen]
pub fn teleport_svg(
    alpha_re: f64,
    alpha_im: f64,
    beta_re: f64,
    beta_im: f64,
) -> Result<String, String> {
    let alpha = Complex64::new(alpha_re, alpha_im);
    let beta = Complex64::new(beta_re, beta_im);
    let norm = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
    if norm < 1e-12 {
        return Err("alpha and beta cannot both be zero".into());
    }
    let (alpha, beta) = (alpha / norm, beta / norm);

    let circuit = build_teleportation(alpha, beta).map_err(|e| e.to_string())?;
    let out = circuit.run_from_zero().map_err(|e| e.to_string())?;
    let rho = out.reduced_density_matrix(2).map_err(|e| e.to_string())?;
    let fidelity = out.qubit_fidelity(2, alpha, beta).map_err(|e| e.to_string())?;

    let title = format!(
        "teleported ({:.3}{:+.3}i)|0> + ({:.3}{:+.3}i)|1>, fidelity {fidelity:.10}",
        alpha.re, alpha.im, beta.re, beta.im
    );
    bar_chart_svg(
        &["P(|0>)".into(), "P(|1>)".into()],
        &[rho[0][0].re, rho[1][1].re],
        &title,
    )
    .map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_svg_trains_and_renders() {
        let svg = boundary_svg(6, 3, 0.3, 2, false, 1.0, 0, 42).unwrap();
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("test accuracy"));
        // Deterministic across calls.
        assert_eq!(svg, boundary_svg(6, 3, 0.3, 2, false, 1.0, 0, 42).unwrap());
        // Sampled mode runs too.
        let sampled = boundary_svg(4, 2, 0.3, 2, true, 2.0, 256, 7).unwrap();
        assert!(sampled.starts_with("<svg"));
    }

    #[test]
    fn boundary_svg_reports_bad_gap() {
        let err = boundary_svg(2, 1, 1.5, 1, false, 1.0, 0, 1).unwrap_err();
        assert!(err.contains("gap"), "got: {err}");
    }

    #[test]
    fn kernel_curve_contains_both_series() {
        let svg = kernel_curve_svg(1, 0.8, 512, 3).unwrap();
        assert!(svg.contains("exact") && svg.contains("shot estimate"));
        assert!(svg.matches("<circle").count() >= 81);
        assert!(kernel_curve_svg(1, 0.0, 0, 3).is_err());
    }

    #[test]
    fn teleport_svg_reports_unit_fidelity() {
        let svg = teleport_svg(0.6, 0.0, 0.8, 0.0).unwrap();
        assert!(svg.contains("fidelity 1.0000000000"));
        assert!(svg.contains("0.3600") && svg.contains("0.6400"));
        // Unnormalized inputs are normalized before teleporting.
        let svg = teleport_svg(3.0, 0.0, 4.0, 0.0).unwrap();
        assert!(svg.contains("0.3600") && svg.contains("0.6400"));
        assert!(teleport_svg(0.0, 0.0, 0.0, 0.0).is_err());
    }
}
