//! Wall-time measurement of [`extract_all`] and power-law fits of time
//! against series length.

use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::features::extract_all;
use crate::kernels::ols_linfit;
use crate::series::TimeSeries;

/// Lengths swept by default.
pub const DEFAULT_LENGTHS: [usize; 8] = [50, 100, 250, 500, 1000, 2500, 5000, 10_000];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    pub series_id: String,
    pub length: usize,
    /// Minimum over repetitions, in seconds.
    pub wall_time: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScalingFit {
    pub exponent: f64,
    pub prefactor: f64,
    pub r_squared: f64,
}

/// Truncates to `target` samples, or linearly interpolates the whole series
/// onto `target` evenly spaced points when it is longer than the input.
pub fn resample_to_length(series: &TimeSeries, target: usize) -> Result<TimeSeries> {
    if target < 5 {
        return Err(Error::InvalidConfig(format!("target length {target} is below 5")));
    }
    let x = series.samples();
    let n = x.len();
    if target <= n {
        return TimeSeries::new(x[..target].to_vec());
    }
    if n == 1 {
        return TimeSeries::new(vec![x[0]; target]);
    }
    let scale = (n - 1) as f64 / (target - 1) as f64;
    let out = (0..target)
        .map(|k| {
            let pos = k as f64 * scale;
            let i = (pos.floor() as usize).min(n - 2);
            let w = pos - i as f64;
            x[i] + w * (x[i + 1] - x[i])
        })
        .collect();
    TimeSeries::new(out)
}

/// Forty labelled stand-in series: ten each of white noise, AR(1),
/// noisy sinusoids and random walks.
pub fn synthetic_corpus(length: usize, seed: u64) -> Vec<(String, TimeSeries)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(40);
    for kind in ["noise", "ar1", "sine", "walk"] {
        for k in 0..10 {
            let mut e = || -> f64 { StandardNormal.sample(&mut rng) };
            let x: Vec<f64> = match kind {
                "noise" => (0..length).map(|_| e()).collect(),
                "ar1" => {
                    let mut v = 0.0;
                    (0..length)
                        .map(|_| {
                            v = 0.8 * v + e();
                            v
                        })
                        .collect()
                }
                "sine" => {
                    let period = 8.0 + 4.0 * k as f64;
                    (0..length)
                        .map(|t| (2.0 * std::f64::consts::PI * t as f64 / period).sin() + 0.2 * e())
                        .collect()
                }
                _ => {
                    let mut v = 0.0;
                    (0..length)
                        .map(|_| {
                            v += e();
                            v
                        })
                        .collect()
                }
            };
            out.push((format!("{kind}_{k:02}"), TimeSeries::new(x).expect("finite synthetic series")));
        }
    }
    out
}

/// Times `extract_all` on every series at every length; each point is the
/// minimum over `reps` runs. Runs on the calling thread only.
pub fn time_extract(
    series_set: &[(String, TimeSeries)],
    lengths: &[usize],
    reps: usize,
) -> Result<Vec<BenchRecord>> {
    if reps == 0 {
        return Err(Error::InvalidConfig("reps must be at least 1".into()));
    }
    let mut records = Vec::with_capacity(series_set.len() * lengths.len());
    for (id, series) in series_set {
        for &len in lengths {
            let x = resample_to_length(series, len)?;
            let mut best = f64::INFINITY;
            for _ in 0..reps {
                let start = Instant::now();
                std::hint::black_box(extract_all(std::hint::black_box(&x)));
                best = best.min(start.elapsed().as_secs_f64());
            }
            records.push(BenchRecord {
                series_id: id.clone(),
                length: len,
                wall_time: best.max(f64::MIN_POSITIVE),
            });
        }
    }
    Ok(records)
}

/// Median time per length across series, keyed by length.
pub fn median_times(records: &[BenchRecord]) -> BTreeMap<usize, f64> {
    let mut by_len: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
    for r in records {
        by_len.entry(r.length).or_default().push(r.wall_time);
    }
    by_len
        .into_iter()
        .map(|(len, mut t)| {
            t.sort_by(f64::total_cmp);
            (len, crate::features::temporal::median_sorted(&t))
        })
        .collect()
}

/// Least-squares line through (ln length, ln median time).
pub fn fit_scaling(records: &[BenchRecord]) -> Result<ScalingFit> {
    let med = median_times(records);
    if med.len() < 5 {
        return Err(Error::DegenerateInput("scaling fit needs at least 5 distinct lengths"));
    }
    let xs: Vec<f64> = med.keys().map(|&n| (n as f64).ln()).collect();
    let ys: Vec<f64> = med.values().map(|t| t.ln()).collect();
    let fit = ols_linfit(&xs, &ys)?;
    let my = ys.iter().sum::<f64>() / ys.len() as f64;
    let ss: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    let r_squared = if ss > 0.0 { (1.0 - fit.rss / ss).clamp(0.0, 1.0) } else { 1.0 };
    Ok(ScalingFit {
        exponent: fit.slope,
        prefactor: fit.intercept.exp(),
        r_squared,
    })
}

/// Writes `series_id,length,seconds` rows with a header.
pub fn write_timing_csv(records: &[BenchRecord], mut out: impl Write) -> std::io::Result<()> {
    writeln!(out, "series_id,length,seconds")?;
    for r in records {
        writeln!(out, "{},{},{}", r.series_id, r.length, r.wall_time)?;
    }
    Ok(())
}
