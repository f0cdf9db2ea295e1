#![allow(dead_code)]

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub fn ts22(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ts22"))
        .args(args)
        .output()
        .expect("binary runs")
}

pub fn write_ucr(path: &Path, series: &[Vec<f64>], labels: &[&str]) {
    let mut s = String::new();
    for (x, l) in series.iter().zip(labels) {
        s.push_str(l);
        for v in x {
            write!(s, "\t{v:?}").unwrap();
        }
        s.push('\n');
    }
    std::fs::write(path, s).unwrap();
}

/// White noise; the "shapelet" class also carries one short, smooth,
/// monotonically decreasing segment at a random position.
pub fn shapelet(seed: u64, n_per_class: usize, len: usize) -> (Vec<Vec<f64>>, Vec<&'static str>) {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let mut series = Vec::new();
    let mut labels = Vec::new();
    for i in 0..2 * n_per_class {
        let mut x: Vec<f64> = (0..len).map(|_| StandardNormal.sample(&mut r)).collect();
        if i % 2 == 0 {
            let w = 30;
            let start = r.random_range(0..len - w);
            for k in 0..w {
                x[start + k] = 1.5 - 3.0 * k as f64 / (w - 1) as f64;
            }
            labels.push("shapelet");
        } else {
            labels.push("plain");
        }
        series.push(x);
    }
    (series, labels)
}

/// Noisy sinusoids against white noise.
pub fn sine_noise(seed: u64, n_per_class: usize, len: usize) -> (Vec<Vec<f64>>, Vec<&'static str>) {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let mut series = Vec::new();
    let mut labels = Vec::new();
    for i in 0..2 * n_per_class {
        let period = r.random_range(10.0..50.0);
        let sine = i % 2 == 0;
        series.push(
            (0..len)
                .map(|t| {
                    let e: f64 = StandardNormal.sample(&mut r);
                    if sine {
                        (std::f64::consts::TAU * t as f64 / period).sin() + 0.3 * e
                    } else {
                        e
                    }
                })
                .collect(),
        );
        labels.push(if sine { "sine" } else { "noise" });
    }
    (series, labels)
}

pub struct Fixture {
    pub dir: tempfile::TempDir,
}

impl Fixture {
    pub fn new() -> Self {
        Self { dir: tempfile::tempdir().unwrap() }
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    pub fn s(&self, name: &str) -> String {
        self.path(name).to_string_lossy().into_owned()
    }
}
