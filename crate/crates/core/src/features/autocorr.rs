use crate::error::{Error, Result};
use crate::kernels::Acf;
use crate::series::std_sample;

/// Interpolated lag where the autocorrelation first drops below 1/e.
/// Returns the series length when it never does.
pub(super) fn f1ecac(acf: &Acf) -> f64 {
    let thresh = (-1.0f64).exp();
    let r = acf.values();
    for lag in 1..r.len() {
        if r[lag] < thresh {
            let prev = r[lag - 1];
            return (lag - 1) as f64 + (prev - thresh) / (prev - r[lag]);
        }
    }
    r.len() as f64
}

/// First strict local minimum of the autocorrelation; the last lag if none.
pub(super) fn first_min_ac(acf: &Acf) -> usize {
    let r = acf.values();
    (1..r.len().saturating_sub(1))
        .find(|&lag| r[lag] < r[lag - 1] && r[lag] < r[lag + 1])
        .unwrap_or(acf.max_lag())
}

/// Residuals of predicting each sample by the mean of the previous `window`.
pub(super) fn local_mean_residuals(z: &[f64], window: usize) -> Vec<f64> {
    let w = window as f64;
    let mut sum: f64 = z[..window].iter().sum();
    let mut out = Vec::with_capacity(z.len() - window);
    for t in window..z.len() {
        out.push(z[t] - sum / w);
        sum += z[t] - z[t - window];
    }
    out
}

pub(super) fn local_mean_forecast_stderr(z: &[f64], window: usize) -> Result<f64> {
    if window == 0 || z.len() < window + 2 {
        return Err(Error::DegenerateInput("too short for rolling-mean forecast"));
    }
    Ok(std_sample(&local_mean_residuals(z, window)))
}
