use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{Error, Result};

fn check_lengths<T>(y: &[T], yhat: &[T]) -> Result<()> {
    if y.len() != yhat.len() {
        return Err(Error::LengthMismatch {
            left: y.len(),
            right: yhat.len(),
        });
    }
    if y.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(())
}

/// Fraction of predictions equal to the true label.
pub fn unbalanced_accuracy<T: PartialEq>(y: &[T], yhat: &[T]) -> Result<f64> {
    check_lengths(y, yhat)?;
    let hits = y.iter().zip(yhat).filter(|(a, b)| a == b).count();
    Ok(hits as f64 / y.len() as f64)
}

/// Accuracy with each sample weighted by the inverse size of its true class.
pub fn balanced_accuracy<T: Eq + Hash>(y: &[T], yhat: &[T]) -> Result<f64> {
    check_lengths(y, yhat)?;
    let mut counts: HashMap<&T, usize> = HashMap::new();
    for l in y {
        *counts.entry(l).or_default() += 1;
    }
    let (mut hit, mut total) = (0.0, 0.0);
    for (a, b) in y.iter().zip(yhat) {
        let w = 1.0 / counts[a] as f64;
        total += w;
        if a == b {
            hit += w;
        }
    }
    Ok(hit / total)
}

/// Mean over tasks of the mean over folds.
pub fn total_balanced(per_task_folds: &[Vec<f64>]) -> Result<f64> {
    if per_task_folds.is_empty() || per_task_folds.iter().any(Vec::is_empty) {
        return Err(Error::EmptyInput);
    }
    let sum: f64 = per_task_folds
        .iter()
        .map(|f| f.iter().sum::<f64>() / f.len() as f64)
        .sum();
    Ok(sum / per_task_folds.len() as f64)
}

/// Mean over tasks.
pub fn total_unbalanced(per_task: &[f64]) -> Result<f64> {
    if per_task.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(per_task.iter().sum::<f64>() / per_task.len() as f64)
}
