#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn noise(seed: u64, n: usize) -> Vec<f64> {
    let mut r = rng(seed);
    (0..n).map(|_| StandardNormal.sample(&mut r)).collect()
}

pub fn ar1(seed: u64, n: usize, phi: f64) -> Vec<f64> {
    let mut v = 0.0;
    noise(seed, n)
        .into_iter()
        .map(|e| {
            v = phi * v + e;
            v
        })
        .collect()
}

pub fn sine(n: usize, period: f64) -> Vec<f64> {
    (0..n)
        .map(|t| (2.0 * std::f64::consts::PI * t as f64 / period).sin())
        .collect()
}

/// A mix of noise, AR(1), noisy sinusoids and random walks, chosen by seed.
pub fn varied(seed: u64, n: usize) -> Vec<f64> {
    let e = noise(seed, n);
    let mut r = rng(seed ^ 0x9e37_79b9);
    match seed % 4 {
        0 => e,
        1 => ar1(seed, n, r.random_range(0.3..0.95)),
        2 => {
            let p = r.random_range(4.0..60.0);
            sine(n, p).iter().zip(&e).map(|(s, v)| s + 0.3 * v).collect()
        }
        _ => e
            .iter()
            .scan(0.0, |acc, v| {
                *acc += v;
                Some(*acc)
            })
            .collect(),
    }
}

/// Feature layout of [`planted_suite`].
pub mod planted {
    /// Strong family A and its noisy duplicates.
    pub const FAMILY_A: [usize; 3] = [0, 1, 2];
    /// Strong family B and its duplicate.
    pub const FAMILY_B: [usize; 2] = [3, 4];
    /// Weakly informative, mutually independent.
    pub const WEAK: std::ops::Range<usize> = 5..17;
    /// No class information.
    pub const NOISE: std::ops::Range<usize> = 17..22;
    pub const N_FEATURES: usize = 22;
}

/// One task of the planted suite: name, feature rows and labels.
pub type RawTask = (String, Vec<Vec<Option<f64>>>, Vec<&'static str>);

/// Ten two-class tasks of 100 samples with planted discriminative families
/// whose strength varies independently across tasks, weak features, and
/// pure-noise features.
pub fn planted_rows(seed: u64) -> Vec<RawTask> {
    use planted::*;
    let mut r = rng(seed);
    let gauss = |r: &mut rand_chacha::ChaCha8Rng| -> f64 { StandardNormal.sample(r) };
    (0..10)
        .map(|task| {
            let delta_a = r.random_range(1.5..4.5);
            let delta_b = r.random_range(1.5..4.5);
            let mut rows = Vec::new();
            let mut labels = Vec::new();
            for i in 0..100 {
                let class = (i % 2) as f64;
                let a = class * delta_a + gauss(&mut r);
                let b = class * delta_b + gauss(&mut r);
                let mut row = vec![None; N_FEATURES];
                for &j in &FAMILY_A {
                    row[j] = Some(a + 0.05 * gauss(&mut r));
                }
                for &j in &FAMILY_B {
                    row[j] = Some(b + 0.05 * gauss(&mut r));
                }
                for j in WEAK {
                    row[j] = Some(class * 0.9 + gauss(&mut r));
                }
                for j in NOISE {
                    row[j] = Some(gauss(&mut r));
                }
                rows.push(row);
                labels.push(if class > 0.0 { "one" } else { "zero" });
            }
            (format!("task{task}"), rows, labels)
        })
        .collect()
}

pub fn planted_suite(seed: u64) -> Vec<ts22_core::select::SelectionTask> {
    planted_rows(seed)
        .into_iter()
        .map(|(name, rows, labels)| ts22_core::select::SelectionTask::from_feature_rows(name, &rows, &labels).unwrap())
        .collect()
}

pub fn planted_names() -> Vec<String> {
    (0..planted::N_FEATURES).map(|j| format!("f{j:02}")).collect()
}

/// Fifty noisy sinusoids of random period and phase against fifty noise series.
pub fn sine_vs_noise(seed: u64) -> (Vec<Vec<f64>>, Vec<&'static str>) {
    let mut r = rng(seed);
    let mut series = Vec::new();
    let mut labels = Vec::new();
    for i in 0..100u64 {
        let e = noise(seed * 1000 + i, 500);
        if i % 2 == 0 {
            let period = r.random_range(10.0..50.0);
            let phase = r.random_range(0.0..std::f64::consts::TAU);
            series.push(
                e.iter()
                    .enumerate()
                    .map(|(t, v)| (std::f64::consts::TAU * t as f64 / period + phase).sin() + 0.3 * v)
                    .collect(),
            );
            labels.push("sine");
        } else {
            series.push(e);
            labels.push("noise");
        }
    }
    (series, labels)
}
