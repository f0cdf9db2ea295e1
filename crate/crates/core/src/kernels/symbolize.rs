use crate::error::{Error, Result};

/// Maps each sample to one of `n_symbols` equiprobable letters.
///
/// Band edges are type-1 (inverse empirical CDF) quantiles at `k/n_symbols`;
/// a sample equal to an edge takes the lower letter.
pub fn quantile_symbolize(x: &[f64], n_symbols: usize) -> Result<Vec<u8>> {
    if n_symbols < 2 || n_symbols > u8::MAX as usize || x.len() < n_symbols {
        return Err(Error::DegenerateInput("too few samples for symbolization"));
    }
    let mut sorted = x.to_vec();
    sorted.sort_by(f64::total_cmp);
    let distinct = 1 + sorted.windows(2).filter(|w| w[1] > w[0]).count();
    if distinct < n_symbols {
        return Err(Error::DegenerateInput("too few distinct values for symbolization"));
    }
    let n = x.len();
    let edges: Vec<f64> = (1..n_symbols)
        .map(|k| sorted[(k * n).div_ceil(n_symbols) - 1])
        .collect();
    Ok(x.iter()
        .map(|v| edges.iter().filter(|&&e| *v > e).count() as u8)
        .collect())
}
