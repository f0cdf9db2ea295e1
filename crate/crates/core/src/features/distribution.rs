use crate::error::Result;
use crate::kernels::histogram;

/// Center of the most populated bin; ties average the tied centers.
pub(super) fn histogram_mode(z: &[f64], n_bins: usize) -> Result<f64> {
    let h = histogram(z, n_bins)?;
    let max = *h.counts.iter().max().expect("at least one bin");
    let (sum, n) = h
        .centers()
        .zip(&h.counts)
        .filter(|(_, &c)| c == max)
        .fold((0.0, 0usize), |(s, n), (c, _)| (s + c, n + 1));
    Ok(sum / n as f64)
}
