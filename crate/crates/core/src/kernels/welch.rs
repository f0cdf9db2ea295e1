use std::f64::consts::PI;

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use super::next_pow2;
use crate::error::{Error, Result};
use crate::series::mean;

/// One-sided power spectral density on an angular frequency grid.
///
/// `power` is a density in rad/sample: `sum(power) * d_omega` equals the
/// mean power of the analysed (mean-removed) segments.
#[derive(Debug, Clone, PartialEq)]
pub struct WelchSpectrum {
    pub frequencies: Vec<f64>,
    pub power: Vec<f64>,
}

impl WelchSpectrum {
    pub fn bin_width(&self) -> f64 {
        self.frequencies[1] - self.frequencies[0]
    }

    pub fn total_power(&self) -> f64 {
        self.power.iter().sum::<f64>() * self.bin_width()
    }
}

/// Welch estimate with a rectangular window.
///
/// Segments of `segment_len` samples advance by `segment_len - overlap`;
/// each is zero-padded to `nfft` points.
pub fn welch(x: &[f64], segment_len: usize, overlap: usize, nfft: usize) -> Result<WelchSpectrum> {
    if segment_len < 2 || segment_len > x.len() || overlap >= segment_len || nfft < segment_len {
        return Err(Error::DegenerateInput("invalid Welch segmentation"));
    }
    let m = mean(x);
    let scale = x.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let ss: f64 = x.iter().map(|v| (v - m) * (v - m)).sum();
    if !(ss > scale * scale * x.len() as f64 * 1e-26) {
        return Err(Error::DegenerateInput("constant series"));
    }

    let step = segment_len - overlap;
    let n_segments = (x.len() - segment_len) / step + 1;
    let n_freq = nfft / 2 + 1;
    let mut acc = vec![0.0; n_freq];
    let fft = FftPlanner::new().plan_fft_forward(nfft);
    let mut buf = vec![Complex::new(0.0, 0.0); nfft];
    for s in 0..n_segments {
        let seg = &x[s * step..s * step + segment_len];
        for (b, v) in buf.iter_mut().zip(seg) {
            *b = Complex::new(v - m, 0.0);
        }
        for b in buf[segment_len..].iter_mut() {
            *b = Complex::new(0.0, 0.0);
        }
        fft.process(&mut buf);
        for (a, c) in acc.iter_mut().zip(&buf) {
            *a += c.norm_sqr();
        }
    }

    let norm = 1.0 / (2.0 * PI * segment_len as f64 * n_segments as f64);
    let power: Vec<f64> = acc
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let one_sided = if k == 0 || (nfft % 2 == 0 && k == nfft / 2) {
                1.0
            } else {
                2.0
            };
            p * norm * one_sided
        })
        .collect();
    let frequencies = (0..n_freq)
        .map(|k| 2.0 * PI * k as f64 / nfft as f64)
        .collect();
    Ok(WelchSpectrum { frequencies, power })
}

/// Spectrum used by the spectral features: one rectangular window spanning
/// the whole series, zero-padded to the next power of two.
pub fn welch_psd(x: &[f64]) -> Result<WelchSpectrum> {
    if x.len() < 16 {
        return Err(Error::DegenerateInput("spectrum needs at least 16 samples"));
    }
    welch(x, x.len(), 0, next_pow2(x.len()))
}
