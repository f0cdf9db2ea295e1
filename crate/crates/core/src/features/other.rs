use crate::error::{Error, Result};
use crate::kernels::{autocov_fft, cubic_spline_fit, quantile_symbolize};

/// Trace of the covariance of the columns of the 3-letter transition matrix
/// of the series downsampled at its first ACF zero crossing.
pub(super) fn transition_matrix_sumdiagcov(z: &[f64], first_zero: usize) -> Result<f64> {
    let down: Vec<f64> = z.iter().step_by(first_zero.max(1)).copied().collect();
    if down.len() < 4 {
        return Err(Error::DegenerateInput("too few samples after downsampling"));
    }
    let s = quantile_symbolize(&down, 3)?;
    Ok(column_covariance_trace(&transition_matrix(&s)))
}

/// Column-stochastic transition matrix: `m[to][from] = P(to | from)`.
/// A letter that never precedes another keeps a zero column.
pub(crate) fn transition_matrix(symbols: &[u8]) -> [[f64; 3]; 3] {
    let mut counts = [[0usize; 3]; 3];
    for w in symbols.windows(2) {
        counts[w[1] as usize][w[0] as usize] += 1;
    }
    let mut m = [[0.0; 3]; 3];
    for from in 0..3 {
        let total: usize = (0..3).map(|to| counts[to][from]).sum();
        if total > 0 {
            for to in 0..3 {
                m[to][from] = counts[to][from] as f64 / total as f64;
            }
        }
    }
    m
}

/// Columns are three observations of a 3-vector; returns the trace of their
/// sample covariance.
pub(crate) fn column_covariance_trace(m: &[[f64; 3]; 3]) -> f64 {
    (0..3)
        .map(|row| {
            let mean = m[row].iter().sum::<f64>() / 3.0;
            m[row].iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / 2.0
        })
        .sum()
}

const PERIODICITY_THRESHOLD: f64 = 0.01;
const SPLINE_INTERIOR_KNOTS: usize = 3;

/// First autocovariance peak of the spline-detrended series that rises
/// above the threshold both absolutely and relative to the preceding trough.
/// Zero when no lag qualifies.
pub(super) fn periodicity_wang(z: &[f64]) -> usize {
    let trend = cubic_spline_fit(z, SPLINE_INTERIOR_KNOTS);
    let resid: Vec<f64> = z.iter().zip(&trend).map(|(a, b)| a - b).collect();
    let max_lag = z.len().div_ceil(3).min(z.len() - 1);
    let ac = autocov_fft(&resid, max_lag);
    let mut trough: Option<f64> = None;
    for lag in 1..max_lag {
        let (prev, cur, next) = (ac[lag - 1], ac[lag], ac[lag + 1]);
        if cur < prev && cur < next {
            trough = Some(cur);
        } else if cur > prev && cur > next {
            if let Some(t) = trough {
                if cur > PERIODICITY_THRESHOLD && cur - t > PERIODICITY_THRESHOLD {
                    return lag;
                }
            }
        }
    }
    0
}
