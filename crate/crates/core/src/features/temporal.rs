use crate::error::{Error, Result};
use crate::series::mean;

/// Which tail of the distribution counts as an extreme event.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tail {
    Positive,
    Negative,
}

impl Tail {
    fn sign(self) -> f64 {
        match self {
            Tail::Positive => 1.0,
            Tail::Negative => -1.0,
        }
    }
}

pub(super) fn longstretch_above_mean(z: &[f64]) -> usize {
    let m = mean(z);
    longest_run(z.iter().map(|&v| v > m))
}

pub(super) fn longest_run(flags: impl Iterator<Item = bool>) -> usize {
    let (mut best, mut cur) = (0, 0);
    for f in flags {
        if f {
            cur += 1;
            best = best.max(cur);
        } else {
            cur = 0;
        }
    }
    best
}

const THRESHOLD_STEP: f64 = 0.01;
/// Thresholds stop once fewer than this fraction of samples qualify.
const MIN_EVENT_FRACTION: f64 = 0.02;

/// Median over a threshold sweep of the (rescaled) median time of the
/// samples exceeding each threshold.
pub(super) fn outlier_include_mdrmd(z: &[f64], tail: Tail) -> Result<f64> {
    let n = z.len();
    let sign = tail.sign();
    let signed: Vec<f64> = z.iter().map(|v| sign * v).collect();
    let top = signed.iter().cloned().fold(f64::NEG_INFINITY, f64::max);

    let half = n as f64 / 2.0;
    let mut record = Vec::new();
    let mut times = Vec::with_capacity(n);
    let mut k = 0usize;
    loop {
        let theta = k as f64 * THRESHOLD_STEP;
        if theta > top {
            break;
        }
        times.clear();
        // 1-based event times, already ascending
        times.extend(
            signed
                .iter()
                .enumerate()
                .filter(|(_, &v)| v >= theta)
                .map(|(t, _)| (t + 1) as f64),
        );
        if times.len() < 2 || (times.len() as f64) < MIN_EVENT_FRACTION * n as f64 {
            break;
        }
        record.push(median_sorted(&times) / half - 1.0);
        k += 1;
    }
    if record.is_empty() {
        return Err(Error::DegenerateInput("no threshold has enough events"));
    }
    record.sort_by(f64::total_cmp);
    Ok(median_sorted(&record))
}

pub(crate) fn median_sorted(x: &[f64]) -> f64 {
    let n = x.len();
    if n % 2 == 1 {
        x[n / 2]
    } else {
        0.5 * (x[n / 2 - 1] + x[n / 2])
    }
}
