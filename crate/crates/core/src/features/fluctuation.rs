//! Two-regime fluctuation scaling (DFA and rescaled range).

use crate::error::{Error, Result};
use crate::kernels::ols_linfit;

/// How the fluctuation within each window is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FluctuationMethod {
    /// RMS of linearly detrended residuals, on every second sample.
    Dfa,
    /// Range of linearly detrended residuals.
    RsRange,
}

impl FluctuationMethod {
    fn stride(self) -> usize {
        match self {
            FluctuationMethod::Dfa => 2,
            FluctuationMethod::RsRange => 1,
        }
    }
}

const N_SCALES: usize = 50;
const MIN_SCALE: f64 = 5.0;
const MIN_SEGMENT: usize = 3;

/// Log-spaced window sizes between 5 and n/2, deduplicated after rounding.
pub(crate) fn scales(n: usize, profile_len: usize) -> Vec<usize> {
    let lo = MIN_SCALE.ln();
    let hi = ((n / 2) as f64).ln();
    let step = (hi - lo) / (N_SCALES - 1) as f64;
    let mut out: Vec<usize> = (0..N_SCALES)
        .map(|i| (lo + i as f64 * step).exp().round() as usize)
        .filter(|&s| s >= 2 && s <= profile_len)
        .collect();
    out.dedup();
    out
}

/// Fluctuation amplitude F(s) for each scale.
pub(crate) fn fluctuation_curve(
    z: &[f64],
    method: FluctuationMethod,
) -> Result<(Vec<usize>, Vec<f64>)> {
    let stride = method.stride();
    let profile: Vec<f64> = z
        .iter()
        .step_by(stride)
        .take(z.len() / stride)
        .scan(0.0, |acc, v| {
            *acc += v;
            Some(*acc)
        })
        .collect();
    let scales = scales(z.len(), profile.len());
    if scales.len() < 2 * MIN_SEGMENT {
        return Err(Error::DegenerateInput("too few fluctuation scales"));
    }
    let fluct = scales
        .iter()
        .map(|&s| window_fluctuation(&profile, s, method))
        .collect();
    Ok((scales, fluct))
}

fn window_fluctuation(profile: &[f64], s: usize, method: FluctuationMethod) -> f64 {
    let n_windows = profile.len() / s;
    // abscissae 1..=s
    let sf = s as f64;
    let mx = (sf + 1.0) / 2.0;
    let sxx = sf * (sf * sf - 1.0) / 12.0;
    let mut total = 0.0;
    for w in profile.chunks_exact(s).take(n_windows) {
        let my = w.iter().sum::<f64>() / sf;
        let sxy: f64 = w
            .iter()
            .enumerate()
            .map(|(k, y)| ((k + 1) as f64 - mx) * (y - my))
            .sum();
        let slope = sxy / sxx;
        let intercept = my - slope * mx;
        let resid = w
            .iter()
            .enumerate()
            .map(|(k, y)| y - (slope * (k + 1) as f64 + intercept));
        total += match method {
            FluctuationMethod::Dfa => resid.map(|r| r * r).sum::<f64>(),
            FluctuationMethod::RsRange => {
                let (lo, hi) = resid.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| {
                    (lo.min(r), hi.max(r))
                });
                (hi - lo) * (hi - lo)
            }
        };
    }
    match method {
        FluctuationMethod::Dfa => (total / (n_windows as f64 * sf)).sqrt(),
        FluctuationMethod::RsRange => (total / n_windows as f64).sqrt(),
    }
}

/// Best two-line split of the log-log fluctuation curve, as the fraction of
/// scales in the first (fast-timescale) segment.
pub(super) fn fluct_anal_prop_r1(z: &[f64], method: FluctuationMethod) -> Result<f64> {
    let (scales, fluct) = fluctuation_curve(z, method)?;
    if fluct.iter().any(|f| !(*f > 0.0)) {
        return Err(Error::DegenerateInput("vanishing fluctuation"));
    }
    let lx: Vec<f64> = scales.iter().map(|&s| (s as f64).ln()).collect();
    let ly: Vec<f64> = fluct.iter().map(|f| f.ln()).collect();
    let n = lx.len();
    let mut best: Option<(usize, f64)> = None;
    for k in MIN_SEGMENT..=n - MIN_SEGMENT {
        let rss = ols_linfit(&lx[..k], &ly[..k])?.rss + ols_linfit(&lx[k..], &ly[k..])?.rss;
        if best.is_none_or(|(_, b)| rss < b) {
            best = Some((k, rss));
        }
    }
    let (k, _) = best.expect("at least one split");
    Ok(k as f64 / n as f64)
}
