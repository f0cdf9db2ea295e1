use crate::error::{Error, Result};
use crate::kernels::Acf;

/// Mean cubed successive difference.
pub(super) fn trev_num(z: &[f64]) -> f64 {
    let n = z.len() - 1;
    z.windows(2).map(|w| (w[1] - w[0]).powi(3)).sum::<f64>() / n as f64
}

/// Plug-in mutual information (nats) between `x_t` and `x_{t+lag}` from an
/// `n_bins` x `n_bins` equal-width histogram over the range of the series.
pub(super) fn histogram_ami(z: &[f64], lag: usize, n_bins: usize) -> Result<f64> {
    if lag == 0 || z.len() <= lag || n_bins == 0 {
        return Err(Error::DegenerateInput("too short for the requested lag"));
    }
    let lo = z.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = z.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !(hi > lo) {
        return Err(Error::DegenerateInput("constant series"));
    }
    let width = (hi - lo) / n_bins as f64;
    let bins: Vec<usize> = z
        .iter()
        .map(|&v| crate::kernels::histogram_bin(v, lo, width, n_bins))
        .collect();
    let m = z.len() - lag;
    let mut joint = vec![0usize; n_bins * n_bins];
    for t in 0..m {
        joint[bins[t] * n_bins + bins[t + lag]] += 1;
    }
    let mut row = vec![0usize; n_bins];
    let mut col = vec![0usize; n_bins];
    for i in 0..n_bins {
        for j in 0..n_bins {
            row[i] += joint[i * n_bins + j];
            col[j] += joint[i * n_bins + j];
        }
    }
    let total = m as f64;
    let mut mi = 0.0;
    for i in 0..n_bins {
        for j in 0..n_bins {
            let c = joint[i * n_bins + j];
            if c > 0 {
                let p = c as f64 / total;
                let pr = row[i] as f64 / total;
                let pc = col[j] as f64 / total;
                mi += p * (p / (pr * pc)).ln();
            }
        }
    }
    Ok(mi)
}

/// First local minimum of the Gaussian automutual information
/// `-0.5 ln(1 - rho^2)` over lags `1..=L`, `L = min(max_lag, ceil(n/2))`.
pub(super) fn ami_gaussian_first_min(acf: &Acf, n: usize, max_lag: usize) -> usize {
    let limit = max_lag.min(n.div_ceil(2)).min(acf.max_lag());
    let ami = |lag: usize| {
        let r = acf.at(lag);
        -0.5 * (1.0 - r * r).ln()
    };
    (2..limit)
        .find(|&lag| {
            let a = ami(lag);
            a < ami(lag - 1) && a < ami(lag + 1)
        })
        .unwrap_or(limit)
}
