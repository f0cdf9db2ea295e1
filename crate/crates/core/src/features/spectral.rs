use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::kernels::welch_psd;

/// Fraction of spectral power below a fifth of the Nyquist frequency.
pub(super) fn spectral_area_5_1(z: &[f64]) -> Result<f64> {
    let s = welch_psd(z)?;
    let total: f64 = s.power.iter().sum();
    if !(total > 0.0) {
        return Err(Error::DegenerateInput("spectrum has no power"));
    }
    let low: f64 = s
        .frequencies
        .iter()
        .zip(&s.power)
        .filter(|(w, _)| **w < PI / 5.0)
        .map(|(_, p)| p)
        .sum();
    Ok(low / total)
}

/// Frequency at which cumulative power first reaches half the total.
pub(super) fn spectral_centroid(z: &[f64]) -> Result<f64> {
    let s = welch_psd(z)?;
    let total: f64 = s.power.iter().sum();
    if !(total > 0.0) {
        return Err(Error::DegenerateInput("spectrum has no power"));
    }
    let half = 0.5 * total;
    let mut acc = 0.0;
    for (w, p) in s.frequencies.iter().zip(&s.power) {
        acc += p;
        if acc >= half {
            return Ok(*w);
        }
    }
    Ok(*s.frequencies.last().expect("non-empty grid"))
}
