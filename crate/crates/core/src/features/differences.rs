use crate::error::{Error, Result};
use crate::kernels::{autocorr, first_zero_in, histogram, quantile_symbolize};

use super::temporal::longest_run;

/// Fraction of successive differences larger than 0.04 in magnitude.
pub(super) fn pnn40(z: &[f64]) -> f64 {
    let count = z.windows(2).filter(|w| (w[1] - w[0]).abs() > 0.04).count();
    count as f64 / (z.len() - 1) as f64
}

/// Longest run of strictly negative successive differences.
pub(super) fn longstretch_decreasing(z: &[f64]) -> usize {
    longest_run(z.windows(2).map(|w| w[1] - w[0] < 0.0))
}

/// Entropy (nats) of successive letter pairs in a 3-letter equiprobable alphabet.
pub(super) fn motif_three_hh(z: &[f64]) -> Result<f64> {
    let s = quantile_symbolize(z, 3)?;
    let mut counts = [0usize; 9];
    for w in s.windows(2) {
        counts[(w[0] * 3 + w[1]) as usize] += 1;
    }
    let n = (s.len() - 1) as f64;
    Ok(counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.ln()
        })
        .sum())
}

/// Ratio of the first ACF zero crossing of the first differences to that
/// of the series itself.
pub(super) fn local_mean1_tauresrat(z: &[f64], series_tau: usize) -> Result<f64> {
    let diffs: Vec<f64> = z.windows(2).map(|w| w[1] - w[0]).collect();
    if diffs.len() < 3 {
        return Err(Error::DegenerateInput("too short for differencing"));
    }
    let acf = autocorr(&diffs, diffs.len() - 1)?;
    Ok(first_zero_in(&acf) as f64 / series_tau as f64)
}

/// Distances between successive points of the delay embedding
/// `(x_t, x_{t+tau})`, with `tau` capped at a tenth of the length.
pub(super) fn embedding_distances(z: &[f64], first_zero: usize) -> Vec<f64> {
    let n = z.len();
    let tau = first_zero.min(n / 10).max(1);
    (0..n - tau - 1)
        .map(|t| {
            let a = z[t + 1] - z[t];
            let b = z[t + tau + 1] - z[t + tau];
            (a * a + b * b).sqrt()
        })
        .collect()
}

/// Mean absolute deviation between the empirical density of embedding
/// distances and an exponential density with the same mean.
pub(super) fn embed2_dist_expfit_meandiff(z: &[f64], first_zero: usize) -> Result<f64> {
    let mut d = embedding_distances(z, first_zero);
    if d.is_empty() {
        return Err(Error::DegenerateInput("embedding is empty"));
    }
    let m = d.len();
    let mean = d.iter().sum::<f64>() / m as f64;
    if !(mean > 0.0) {
        return Err(Error::DegenerateInput("embedding distances vanish"));
    }
    let n_bins = (m as f64).sqrt().ceil() as usize;
    // bins span [0, max distance]; a zero anchors the lower edge
    d.push(0.0);
    let mut h = histogram(&d, n_bins)?;
    h.counts[0] -= 1;
    let width = h.bin_width();
    let diff_sum: f64 = h
        .centers()
        .zip(&h.counts)
        .map(|(c, &k)| {
            let density = k as f64 / (m as f64 * width);
            let fitted = (-c / mean).exp() / mean;
            (density - fitted).abs()
        })
        .sum();
    Ok(diff_sum / n_bins as f64)
}
