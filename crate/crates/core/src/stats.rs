//! Small statistics helpers shared by the simulation checks.

/// Empirical mutual information, in bits, of a contingency table.
pub fn mutual_information<const R: usize, const C: usize>(counts: &[[usize; C]; R]) -> f64 {
    let total: usize = counts.iter().flatten().sum();
    if total == 0 {
        return 0.0;
    }
    let n = total as f64;
    let rows: Vec<f64> = counts
        .iter()
        .map(|r| r.iter().sum::<usize>() as f64)
        .collect();
    let cols: Vec<f64> = (0..C)
        .map(|j| counts.iter().map(|r| r[j]).sum::<usize>() as f64)
        .collect();
    let mut mi = 0.0;
    for (i, row) in counts.iter().enumerate() {
        for (j, &k) in row.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let pxy = k as f64 / n;
            mi += pxy * (pxy * n * n / (rows[i] * cols[j])).log2();
        }
    }
    mi.max(0.0)
}

/// Standard deviation of a binomial proportion.
pub fn binomial_sigma(p: f64, trials: usize) -> f64 {
    (p * (1.0 - p) / trials as f64).sqrt()
}

/// True when `observed` lies within `k` binomial standard deviations of `p`.
pub fn within_sigmas(observed: f64, p: f64, trials: usize, k: f64) -> bool {
    (observed - p).abs() <= k * binomial_sigma(p, trials)
}

/// Mean and (population) standard deviation.
pub fn mean_std(xs: &[f64]) -> Option<(f64, f64)> {
    if xs.is_empty() {
        return None;
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    Some((mean, var.sqrt()))
}
