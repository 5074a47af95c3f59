//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured numbers. Criteria 7 and 8 exercise the command-line binary
//! and live in the CLI crate's acceptance suite.

mod common;

use std::collections::HashMap;
use std::path::PathBuf;
use std::time::Instant;

use common::svm_grid;
use common::*;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qksvm::data::{apply_standardize, fit_pca, fit_standardize, load_csv, PreprocessModel};
use qksvm::feature_map::{Entanglement, FeatureMapConfig};
use qksvm::kernel::{gram_matrix, kernel_entry_exact, KernelEstimator, KernelMatrix};
use qksvm::sim::{build_teleportation, Gate, StateVector};
use qksvm::svm::{decision_value, train_smo, TrainConfig};

const TAU: f64 = std::f64::consts::TAU;

fn fixture_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/breast_cancer.csv")
}

/// Criterion 1: every gate kind agrees with the explicit Kronecker-product
/// oracle within 1e-12 on 100 random states for n <= 3, in under 10 s.
#[test]
fn criterion_1_simulator_matches_kronecker_oracle() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut worst = 0.0f64;
    for n in 1..=3usize {
        let mut kinds: Vec<Gate> = Vec::new();
        for target in 0..n {
            let theta = rng.random::<f64>() * 4.0 - 2.0;
            kinds.extend([
                Gate::H(target),
                Gate::X(target),
                Gate::Y(target),
                Gate::Z(target),
                Gate::Ry { theta, target },
                Gate::Rz { theta, target },
                Gate::P { theta, target },
            ]);
            if n > 1 {
                let control = (target + 1) % n;
                kinds.extend([
                    Gate::Cnot { control, target },
                    Gate::Cz { control, target },
                    Gate::Cp { theta, control, target },
                ]);
            }
        }
        for gate in kinds {
            for _ in 0..100 {
                let amps = random_amplitudes(n, &mut rng);
                let state = StateVector::from_amplitudes(n, amps.clone()).unwrap();
                let fast = qksvm::sim::apply_gate(&state, &gate).unwrap();
                let oracle = matvec(&gate_full_matrix(&gate, n), &amps);
                for (a, b) in fast.amplitudes().iter().zip(&oracle) {
                    worst = worst.max((a - b).norm());
                }
            }
        }
    }
    let elapsed = started.elapsed();
    assert!(worst < 1e-12, "worst oracle deviation {worst}");
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");
    println!(
        "criterion 1 PASS: gate/oracle deviation {worst:.2e} (< 1e-12) in {:.2}s",
        elapsed.as_secs_f64()
    );
}

/// Criterion 2: 100 random input qubits teleport with fidelity 1 within
/// 1e-10.
#[test]
fn criterion_2_teleportation_fidelity() {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let raw = [
            Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5),
            Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5),
        ];
        let norm = (raw[0].norm_sqr() + raw[1].norm_sqr()).sqrt();
        let (alpha, beta) = (raw[0] / norm, raw[1] / norm);
        let out = build_teleportation(alpha, beta)
            .unwrap()
            .run_from_zero()
            .unwrap();
        let fidelity = out.qubit_fidelity(2, alpha, beta).unwrap();
        worst = worst.max((fidelity - 1.0).abs());
    }
    assert!(worst < 1e-10, "worst fidelity deviation {worst}");
    println!("criterion 2 PASS: teleportation fidelity deviation {worst:.2e} (< 1e-10)");
}

/// Criterion 3: the single-qubit depth-1 kernel equals cos^2(x - y) within
/// 1e-10 over 100 random pairs.
#[test]
fn criterion_3_closed_form_kernel() {
    let config = FeatureMapConfig::new(1, 1).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let x = rng.random::<f64>() * 2.0 * TAU - TAU;
        let y = rng.random::<f64>() * 2.0 * TAU - TAU;
        let k = kernel_entry_exact(&[x], &[y], &config).unwrap();
        worst = worst.max((k - (x - y).cos().powi(2)).abs());
    }
    assert!(worst < 1e-10, "worst closed-form deviation {worst}");
    println!("criterion 3 PASS: closed-form kernel deviation {worst:.2e} (< 1e-10)");
}

/// Criterion 4: a 40x40 exact Gram matrix on random 4-qubit data is
/// symmetric, unit-diagonal, and PSD, built in under 30 s.
#[test]
fn criterion_4_gram_validity() {
    let started = Instant::now();
    let config = FeatureMapConfig::new(4, 2)
        .unwrap()
        .with_entanglement(Entanglement::Full);
    let est = KernelEstimator::exact(config);
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    let rows: Vec<Vec<f64>> = (0..40)
        .map(|_| (0..4).map(|_| rng.random::<f64>() * TAU).collect())
        .collect();
    let gram = gram_matrix(&rows, &est).unwrap();
    let elapsed = started.elapsed();

    let asym = gram.max_asymmetry();
    let diag = gram.max_diagonal_deviation();
    let min_eig = gram.min_eigenvalue();
    assert!(asym <= 1e-10, "asymmetry {asym}");
    assert!(diag <= 1e-10, "diagonal deviation {diag}");
    assert!(min_eig >= -1e-8, "min eigenvalue {min_eig}");
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}");
    println!(
        "criterion 4 PASS: 40x40 gram symmetric ({asym:.1e}), unit diagonal ({diag:.1e}), min eig {min_eig:.2e} in {:.2}s",
        elapsed.as_secs_f64()
    );
}

/// Criterion 5: |sampled - exact| <= 5/sqrt(shots) for at least 19 of 20
/// seeded pairs at 10^4 shots.
#[test]
fn criterion_5_sampling_convergence() {
    let config = FeatureMapConfig::default();
    let exact = KernelEstimator::exact(config.clone());
    let shots = 10_000u64;
    let bound = 5.0 / (shots as f64).sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    let mut hits = 0;
    for pair in 0..20u64 {
        let x: Vec<f64> = (0..2).map(|_| rng.random::<f64>() * TAU).collect();
        let y: Vec<f64> = (0..2).map(|_| rng.random::<f64>() * TAU).collect();
        let sampled = KernelEstimator::sampled(config.clone(), shots, 500 + pair)
            .entry(&x, &y)
            .unwrap();
        let reference = exact.entry(&x, &y).unwrap();
        if (sampled - reference).abs() <= bound {
            hits += 1;
        }
    }
    assert!(hits >= 19, "{hits}/20 within 5/sqrt(shots)");
    println!("criterion 5 PASS: {hits}/20 sampled entries within {bound:.3} of exact");
}

/// Criterion 6: on every <=4-point linear-kernel instance with features in
/// {-1, 0, 1}, the SMO dual objective is within 1e-2 of exhaustive grid
/// maximization with identical prediction signs, and the KKT residual suite
/// passes at 10*tol.
#[test]
fn criterion_6_smo_optimality() {
    let c = 1.0;
    let cfg = TrainConfig::default();
    let mut cache: HashMap<Vec<(i64, i32)>, (f64, Vec<f64>)> = HashMap::new();
    let mut instances = 0usize;
    let mut worst_gap = 0.0f64;

    for n in 2..=4 {
        for (xs, ys) in svm_grid::enumerate_instances(n) {
            instances += 1;
            let (key, perm, flip) = svm_grid::canonicalize(&xs, &ys);
            let (w_grid, canon_decisions) = cache
                .entry(key.clone())
                .or_insert_with(|| {
                    let cxs: Vec<f64> = key.iter().map(|&(x, _)| x as f64).collect();
                    let cys: Vec<i32> = key.iter().map(|&(_, y)| y).collect();
                    let ck = svm_grid::linear_kernel_nested(&cxs);
                    let (w, alphas) = svm_grid::grid_maximize(&ck, &cys, c);
                    let bias = svm_grid::kkt_bias(&ck, &cys, &alphas, c);
                    let decisions: Vec<f64> = (0..cxs.len())
                        .map(|i| {
                            (0..cxs.len())
                                .map(|j| alphas[j] * f64::from(cys[j]) * ck[i][j])
                                .sum::<f64>()
                                + bias
                        })
                        .collect();
                    (w, decisions)
                })
                .clone();

            let k = KernelMatrix::from_fn(xs.len(), |i, j| Ok(xs[i] * xs[j])).unwrap();
            let model = train_smo(&k, &ys, &cfg).unwrap();
            let w_smo = svm_grid::dual_w(&svm_grid::linear_kernel_nested(&xs), &ys, &model.alphas);
            worst_gap = worst_gap.max((w_smo - w_grid).abs());
            assert!(
                (w_smo - w_grid).abs() <= 1e-2,
                "xs={xs:?} ys={ys:?}: SMO W={w_smo}, grid W={w_grid}"
            );
            for (canon_pos, &orig_idx) in perm.iter().enumerate() {
                let grid_decision = f64::from(flip) * canon_decisions[canon_pos];
                let smo_decision = decision_value(&model, k.row(orig_idx)).unwrap();
                assert_eq!(
                    svm_grid::sign_of(smo_decision),
                    svm_grid::sign_of(grid_decision),
                    "xs={xs:?} ys={ys:?} point {orig_idx}"
                );
            }
        }
    }

    // KKT residual suite at 10*tol on a separable instance with free SVs.
    let points: Vec<f64> = vec![-2.0, -1.6, -1.1, -0.9, 0.8, 1.2, 1.7, 2.1];
    let ys = vec![-1, -1, -1, -1, 1, 1, 1, 1];
    let k = KernelMatrix::from_fn(points.len(), |i, j| Ok(points[i] * points[j])).unwrap();
    let model = train_smo(&k, &ys, &cfg).unwrap();
    let slack = 10.0 * cfg.tol;
    for i in 0..ys.len() {
        let margin = f64::from(ys[i]) * decision_value(&model, k.row(i)).unwrap();
        let alpha = model.alphas[i];
        if alpha <= 1e-9 {
            assert!(margin >= 1.0 - slack);
        } else if alpha >= cfg.c - 1e-9 {
            assert!(margin <= 1.0 + slack);
        } else {
            assert!((margin - 1.0).abs() <= slack);
        }
    }

    println!(
        "criterion 6 PASS: {instances} instances, worst dual gap {worst_gap:.2e} (<= 1e-2), signs identical, KKT residuals within {slack}"
    );
}

/// Criterion 9: standardization leaves per-feature |mean| <= 1e-12 and
/// |variance - 1| <= 1e-12 on the breast-cancer fixture, PCA components are
/// orthonormal within 1e-10, and preprocess fits never read test rows.
#[test]
fn criterion_9_pipeline_hygiene() {
    let ds = load_csv(&fixture_path(), "diagnosis", "M").unwrap();
    let standardizer = fit_standardize(&ds).unwrap();
    let out = apply_standardize(&standardizer, &ds).unwrap();
    let n = out.n_samples() as f64;
    let mut worst_mean = 0.0f64;
    let mut worst_var = 0.0f64;
    for col in 0..out.n_features() {
        let mean: f64 = out.features.iter().map(|r| r[col]).sum::<f64>() / n;
        let var: f64 = out.features.iter().map(|r| (r[col] - mean).powi(2)).sum::<f64>() / n;
        worst_mean = worst_mean.max(mean.abs());
        worst_var = worst_var.max((var - 1.0).abs());
    }
    assert!(worst_mean <= 1e-12, "worst |mean| {worst_mean}");
    assert!(worst_var <= 1e-12, "worst |var - 1| {worst_var}");

    let pca = fit_pca(&out, 4).unwrap();
    let mut worst_ortho = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            let dot: f64 = pca.components[i]
                .iter()
                .zip(&pca.components[j])
                .map(|(a, b)| a * b)
                .sum();
            let expect = if i == j { 1.0 } else { 0.0 };
            worst_ortho = worst_ortho.max((dot - expect).abs());
        }
    }
    assert!(worst_ortho <= 1e-10, "worst orthonormality {worst_ortho}");

    // No leakage: the fitted model depends only on training rows, so
    // mutating test rows changes nothing.
    let (train, test) = qksvm::data::train_test_split(&ds, 0.3, 42).unwrap();
    let model_before = PreprocessModel::fit(&train, 2, -1.0, 1.0).unwrap();
    let mut mutated_test = test;
    for row in &mut mutated_test.features {
        for v in row.iter_mut() {
            *v = *v * 1000.0 + 7.0;
        }
    }
    let _ = model_before.apply(&mutated_test).unwrap();
    let model_after = PreprocessModel::fit(&train, 2, -1.0, 1.0).unwrap();
    assert_eq!(model_before, model_after);

    println!(
        "criterion 9 PASS: |mean| {worst_mean:.1e}, |var-1| {worst_var:.1e}, PCA orthonormality {worst_ortho:.1e}, no leakage"
    );
}
