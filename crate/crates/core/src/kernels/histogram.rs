use crate::error::{Error, Result};

/// Equal-width histogram over the data range.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub counts: Vec<usize>,
}

impl Histogram {
    pub fn bin_width(&self) -> f64 {
        self.edges[1] - self.edges[0]
    }

    pub fn centers(&self) -> impl Iterator<Item = f64> + '_ {
        self.edges.windows(2).map(|w| 0.5 * (w[0] + w[1]))
    }
}

/// Bin index of `v` in `n_bins` equal bins over `[lo, hi]`; `hi` lands in the last bin.
pub fn bin_of(v: f64, lo: f64, width: f64, n_bins: usize) -> usize {
    let b = ((v - lo) / width).floor();
    if b < 0.0 {
        0
    } else {
        (b as usize).min(n_bins - 1)
    }
}

pub fn histogram(x: &[f64], n_bins: usize) -> Result<Histogram> {
    if x.is_empty() || n_bins == 0 {
        return Err(Error::DegenerateInput("empty histogram"));
    }
    let lo = x.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = x.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !(hi > lo) {
        return Err(Error::DegenerateInput("histogram range is empty"));
    }
    let width = (hi - lo) / n_bins as f64;
    let mut counts = vec![0; n_bins];
    for &v in x {
        counts[bin_of(v, lo, width, n_bins)] += 1;
    }
    let mut edges: Vec<f64> = (0..=n_bins).map(|i| lo + i as f64 * width).collect();
    edges[n_bins] = hi;
    Ok(Histogram { edges, counts })
}
