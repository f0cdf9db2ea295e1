use serde::Serialize;

use super::{cross_validate, LabeledFeatureMatrix};
use crate::error::{Error, Result};

/// The two features picked by forward selection.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Top2 {
    pub first: usize,
    pub second: usize,
    /// Cross-validated accuracy of the first feature alone.
    pub first_accuracy: f64,
    /// Cross-validated accuracy of the pair.
    pub accuracy: f64,
}

fn argmax_lowest(scores: &[(usize, f64)]) -> (usize, f64) {
    let mut best = scores[0];
    for &s in &scores[1..] {
        if s.1 > best.1 {
            best = s;
        }
    }
    best
}

/// Sequential forward selection of two features by mean cross-validated
/// balanced accuracy. Ties go to the lower column index.
pub fn sfs_top2(matrix: &LabeledFeatureMatrix, seed: u64) -> Result<Top2> {
    let d = matrix.n_features();
    if d < 2 {
        return Err(Error::InvalidConfig("forward selection needs two features".into()));
    }
    let singles = crate::par::map_range(d, |j| cross_validate(matrix, &[j], seed).map(|r| (j, r.mean)))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let (first, first_accuracy) = argmax_lowest(&singles);
    let candidates: Vec<usize> = (0..d).filter(|&j| j != first).collect();
    let pairs = crate::par::map_slice(&candidates, |&j| {
        cross_validate(matrix, &[first, j], seed).map(|r| (j, r.mean))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let (second, accuracy) = argmax_lowest(&pairs);
    Ok(Top2 {
        first,
        second,
        first_accuracy,
        accuracy,
    })
}
