use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// `min(10, max(2, smallest class size))`.
pub fn fold_count(labels: &[usize], n_classes: usize) -> Result<usize> {
    let mut counts = vec![0usize; n_classes];
    for &l in labels {
        counts[l] += 1;
    }
    let present: Vec<usize> = counts.into_iter().filter(|&c| c > 0).collect();
    if present.len() < 2 {
        return Err(Error::SingleClass);
    }
    let smallest = *present.iter().min().expect("non-empty");
    Ok(smallest.clamp(2, 10))
}

/// Fold membership of each sample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldAssignment {
    pub fold_of: Vec<usize>,
    pub n_folds: usize,
}

impl FoldAssignment {
    /// (training indices, test indices) for fold `k`.
    pub fn split(&self, k: usize) -> (Vec<usize>, Vec<usize>) {
        (0..self.fold_of.len()).partition(|&i| self.fold_of[i] != k)
    }
}

/// Stratified assignment: members of each class are shuffled and dealt
/// round-robin, continuing the deal across classes so fold sizes balance.
pub fn stratified_folds(labels: &[usize], n_classes: usize, n_folds: usize, seed: u64) -> FoldAssignment {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fold_of = vec![0; labels.len()];
    let mut next = 0usize;
    for class in 0..n_classes {
        let mut members: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == class).collect();
        members.shuffle(&mut rng);
        for i in members {
            fold_of[i] = next % n_folds;
            next += 1;
        }
    }
    FoldAssignment { fold_of, n_folds }
}
