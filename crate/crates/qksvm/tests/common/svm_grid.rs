//! Brute-force dual-maximization oracle for small SVM instances, independent
//! of the solver: the first n-1 alphas walk a fixed grid, the last is solved
//! from the equality constraint.

pub const GRID_STEP: f64 = 0.01;

/// Independent dual objective evaluation (plain double loop).
pub fn dual_w(k: &[Vec<f64>], ys: &[i32], alphas: &[f64]) -> f64 {
    let n = ys.len();
    let mut quad = 0.0;
    for i in 0..n {
        for j in 0..n {
            quad += alphas[i] * alphas[j] * f64::from(ys[i]) * f64::from(ys[j]) * k[i][j];
        }
    }
    alphas.iter().sum::<f64>() - 0.5 * quad
}

/// Exhaustive grid maximization of the dual over the feasible box.
pub fn grid_maximize(k: &[Vec<f64>], ys: &[i32], c: f64) -> (f64, Vec<f64>) {
    let n = ys.len();
    let steps = (c / GRID_STEP).round() as usize;
    let mut best_w = f64::NEG_INFINITY;
    let mut best = vec![0.0; n];
    let mut idx = vec![0usize; n - 1];
    loop {
        let mut alphas: Vec<f64> = idx.iter().map(|&i| i as f64 * GRID_STEP).collect();
        let partial: f64 = alphas
            .iter()
            .zip(ys)
            .map(|(a, &y)| a * f64::from(y))
            .sum();
        // alpha_last * y_last = -partial, and y in {-1, +1}.
        let last = -partial * f64::from(ys[n - 1]);
        if (-1e-9..=c + 1e-9).contains(&last) {
            alphas.push(last.clamp(0.0, c));
            let w = dual_w(k, ys, &alphas);
            if w > best_w {
                best_w = w;
                best = alphas;
            }
        }
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return (best_w, best);
            }
            idx[pos] += 1;
            if idx[pos] <= steps {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Bias from the KKT conditions, written independently of the solver.
pub fn kkt_bias(k: &[Vec<f64>], ys: &[i32], alphas: &[f64], c: f64) -> f64 {
    let n = ys.len();
    let g = |i: usize| -> f64 {
        (0..n)
            .map(|j| alphas[j] * f64::from(ys[j]) * k[i][j])
            .sum::<f64>()
    };
    let eps = 1e-9;
    let free: Vec<usize> = (0..n)
        .filter(|&i| alphas[i] > eps && alphas[i] < c - eps)
        .collect();
    if !free.is_empty() {
        return free.iter().map(|&i| f64::from(ys[i]) - g(i)).sum::<f64>() / free.len() as f64;
    }
    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::INFINITY;
    for i in 0..n {
        let bound = f64::from(ys[i]) - g(i);
        let at_upper = alphas[i] >= c - eps;
        if (ys[i] == 1 && !at_upper) || (ys[i] == -1 && at_upper) {
            lo = lo.max(bound);
        } else {
            hi = hi.min(bound);
        }
    }
    match (lo.is_finite(), hi.is_finite()) {
        (true, true) => 0.5 * (lo + hi),
        (true, false) => lo,
        (false, true) => hi,
        (false, false) => 0.0,
    }
}

pub fn sign_of(v: f64) -> i32 {
    if v >= 0.0 {
        1
    } else {
        -1
    }
}

pub fn linear_kernel_nested(xs: &[f64]) -> Vec<Vec<f64>> {
    xs.iter()
        .map(|a| xs.iter().map(|b| a * b).collect())
        .collect()
}

/// Every dataset of `n` points with features in {-1, 0, 1}, labels in
/// {-1, +1}, both classes present.
pub fn enumerate_instances(n: usize) -> Vec<(Vec<f64>, Vec<i32>)> {
    let mut out = Vec::new();
    let feature_combos = 3usize.pow(n as u32);
    let label_combos = 1usize << n;
    for fc in 0..feature_combos {
        let mut xs = Vec::with_capacity(n);
        let mut rest = fc;
        for _ in 0..n {
            xs.push((rest % 3) as f64 - 1.0);
            rest /= 3;
        }
        for lc in 0..label_combos {
            let ys: Vec<i32> = (0..n)
                .map(|b| if lc >> b & 1 == 1 { 1 } else { -1 })
                .collect();
            let pos = ys.iter().filter(|&&y| y == 1).count();
            if pos == 0 || pos == n {
                continue;
            }
            out.push((xs.clone(), ys));
        }
    }
    out
}

/// Canonical form under point permutation and global label flip, with the
/// mapping back to the ordered instance: `perm[p]` is the original index of
/// canonical position p, `flip` is +1 or -1.
pub fn canonicalize(xs: &[f64], ys: &[i32]) -> (Vec<(i64, i32)>, Vec<usize>, i32) {
    let mut best: Option<(Vec<(i64, i32)>, Vec<usize>, i32)> = None;
    for flip in [1i32, -1] {
        let mut indexed: Vec<(i64, i32, usize)> = xs
            .iter()
            .zip(ys)
            .enumerate()
            .map(|(i, (&x, &y))| (x as i64, flip * y, i))
            .collect();
        indexed.sort();
        let key: Vec<(i64, i32)> = indexed.iter().map(|&(x, y, _)| (x, y)).collect();
        let perm: Vec<usize> = indexed.iter().map(|&(_, _, i)| i).collect();
        match &best {
            Some((bk, _, _)) if *bk <= key => {}
            _ => best = Some((key, perm, flip)),
        }
    }
    best.unwrap()
}
