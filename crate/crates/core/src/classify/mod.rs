//! Decision-tree classification with stratified cross-validation, the
//! accuracy measures used to score features, and two-feature forward
//! selection.

mod folds;
mod metrics;
mod sfs;
mod tree;

pub use folds::{fold_count, stratified_folds, FoldAssignment};
pub use metrics::{balanced_accuracy, total_balanced, total_unbalanced, unbalanced_accuracy};
pub use sfs::{sfs_top2, Top2};
pub use tree::DecisionTree;

use serde::Serialize;

use crate::error::{Error, Result};

/// Feature matrix with one class label per row.
///
/// Stored column-major; class indices follow the sorted label names.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledFeatureMatrix {
    columns: Vec<Vec<f64>>,
    labels: Vec<usize>,
    class_names: Vec<String>,
}

impl LabeledFeatureMatrix {
    /// Builds a matrix from row vectors and string labels.
    pub fn new<S: AsRef<str>>(rows: &[Vec<f64>], labels: &[S]) -> Result<Self> {
        if rows.len() != labels.len() {
            return Err(Error::LengthMismatch {
                left: rows.len(),
                right: labels.len(),
            });
        }
        if rows.is_empty() {
            return Err(Error::EmptyInput);
        }
        let d = rows[0].len();
        let mut columns = vec![Vec::with_capacity(rows.len()); d];
        for row in rows {
            if row.len() != d {
                return Err(Error::LengthMismatch {
                    left: row.len(),
                    right: d,
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::NonFiniteSample(j));
                }
                columns[j].push(v);
            }
        }
        let mut class_names: Vec<String> = labels.iter().map(|l| l.as_ref().to_owned()).collect();
        class_names.sort();
        class_names.dedup();
        let labels = labels
            .iter()
            .map(|l| class_names.binary_search_by(|c| c.as_str().cmp(l.as_ref())).unwrap())
            .collect();
        Ok(Self {
            columns,
            labels,
            class_names,
        })
    }

    pub fn n_samples(&self) -> usize {
        self.labels.len()
    }

    pub fn n_features(&self) -> usize {
        self.columns.len()
    }

    pub fn n_classes(&self) -> usize {
        self.class_names.len()
    }

    pub fn column(&self, j: usize) -> &[f64] {
        &self.columns[j]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn class_names(&self) -> &[String] {
        &self.class_names
    }

    pub fn class_counts(&self) -> Vec<usize> {
        let mut c = vec![0; self.n_classes()];
        for &l in &self.labels {
            c[l] += 1;
        }
        c
    }

    /// Same features, different labels (used for permutation nulls).
    pub fn with_labels(&self, labels: Vec<usize>) -> Self {
        assert_eq!(labels.len(), self.labels.len());
        Self {
            columns: self.columns.clone(),
            labels,
            class_names: self.class_names.clone(),
        }
    }

    /// Restricts to the listed columns, in the given order.
    pub fn select_columns(&self, subset: &[usize]) -> Self {
        Self {
            columns: subset.iter().map(|&j| self.columns[j].clone()).collect(),
            labels: self.labels.clone(),
            class_names: self.class_names.clone(),
        }
    }
}

/// Outcome of one cross-validation run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CvResult {
    pub mean: f64,
    pub per_fold: Vec<f64>,
}

/// Stratified cross-validation of a decision tree on `feature_subset`.
///
/// Folds come from a shuffle seeded with `seed`; each fold's tree is trained
/// on the remaining folds and scored with class-balanced accuracy.
pub fn cross_validate(
    matrix: &LabeledFeatureMatrix,
    feature_subset: &[usize],
    seed: u64,
) -> Result<CvResult> {
    let n_folds = fold_count(matrix.labels(), matrix.n_classes())?;
    let folds = stratified_folds(matrix.labels(), matrix.n_classes(), n_folds, seed);
    let columns: Vec<&[f64]> = feature_subset.iter().map(|&j| matrix.column(j)).collect();
    let per_fold = crate::par::map_range(n_folds, |k| {
        let (train, test) = folds.split(k);
        let tree = DecisionTree::fit_indices(&columns, matrix.labels(), matrix.n_classes(), &train);
        let truth: Vec<usize> = test.iter().map(|&i| matrix.labels()[i]).collect();
        let pred: Vec<usize> = test
            .iter()
            .map(|&i| tree.predict_with(|f| columns[f][i]))
            .collect();
        balanced_accuracy(&truth, &pred)
    })
    .into_iter()
    .collect::<Result<Vec<f64>>>()?;
    let mean = per_fold.iter().sum::<f64>() / per_fold.len() as f64;
    Ok(CvResult { mean, per_fold })
}
