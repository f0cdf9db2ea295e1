use serde::Serialize;

use crate::error::{Error, Result};

/// Features x tasks table of accuracies; `None` marks an entry that could
/// not be computed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TaskResultMatrix {
    accuracies: Vec<Vec<Option<f64>>>,
    feature_names: Vec<String>,
    task_names: Vec<String>,
}

impl TaskResultMatrix {
    pub fn new(
        accuracies: Vec<Vec<Option<f64>>>,
        feature_names: Vec<String>,
        task_names: Vec<String>,
    ) -> Result<Self> {
        if accuracies.is_empty() || task_names.is_empty() {
            return Err(Error::EmptyInput);
        }
        if accuracies.len() != feature_names.len() {
            return Err(Error::LengthMismatch {
                left: accuracies.len(),
                right: feature_names.len(),
            });
        }
        for row in &accuracies {
            if row.len() != task_names.len() {
                return Err(Error::LengthMismatch {
                    left: row.len(),
                    right: task_names.len(),
                });
            }
            if let Some(bad) = row.iter().flatten().find(|a| !(a.is_finite() && **a >= 0.0)) {
                return Err(Error::InvalidConfig(format!("accuracy {bad} is not a finite non-negative number")));
            }
        }
        Ok(Self {
            accuracies,
            feature_names,
            task_names,
        })
    }

    pub fn n_features(&self) -> usize {
        self.accuracies.len()
    }

    pub fn n_tasks(&self) -> usize {
        self.task_names.len()
    }

    pub fn get(&self, feature: usize, task: usize) -> Option<f64> {
        self.accuracies[feature][task]
    }

    pub fn row(&self, feature: usize) -> &[Option<f64>] {
        &self.accuracies[feature]
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn task_names(&self) -> &[String] {
        &self.task_names
    }

    /// Keeps the listed feature rows, in the given order.
    pub fn select_features(&self, rows: &[usize]) -> Self {
        Self {
            accuracies: rows.iter().map(|&i| self.accuracies[i].clone()).collect(),
            feature_names: rows.iter().map(|&i| self.feature_names[i].clone()).collect(),
            task_names: self.task_names.clone(),
        }
    }
}

/// Divides each task column by its mean over computed entries.
pub fn normalize_accuracies(matrix: &TaskResultMatrix) -> Result<TaskResultMatrix> {
    let mut out = matrix.clone();
    for j in 0..matrix.n_tasks() {
        let present: Vec<f64> = matrix.accuracies.iter().filter_map(|row| row[j]).collect();
        if present.is_empty() {
            return Err(Error::ZeroColumnMean(j));
        }
        let mean = crate::series::mean(&present);
        if mean == 0.0 {
            return Err(Error::ZeroColumnMean(j));
        }
        for row in out.accuracies.iter_mut() {
            if let Some(a) = row[j].as_mut() {
                *a /= mean;
            }
        }
    }
    Ok(out)
}

/// Row means over computed entries.
pub fn combine_scores(norm: &TaskResultMatrix) -> Result<Vec<f64>> {
    norm.accuracies
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let vals: Vec<f64> = row.iter().flatten().copied().collect();
            if vals.is_empty() {
                Err(Error::AllMarkersRow(i))
            } else {
                Ok(vals.iter().sum::<f64>() / vals.len() as f64)
            }
        })
        .collect()
}

/// Indices with score strictly above mean + one sample standard deviation.
pub fn threshold_top(scores: &[f64]) -> Result<Vec<usize>> {
    if scores.len() < 2 {
        return Err(Error::InvalidConfig("threshold needs at least two scores".into()));
    }
    let n = scores.len() as f64;
    let mean = scores.iter().sum::<f64>() / n;
    let var = scores.iter().map(|s| (s - mean) * (s - mean)).sum::<f64>() / (n - 1.0);
    let th = mean + var.sqrt();
    Ok((0..scores.len()).filter(|&i| scores[i] > th).collect())
}

/// The `beta` best-scoring indices in ascending index order; ties go to the
/// lower index.
pub fn top_beta(scores: &[f64], beta: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));
    order.truncate(beta);
    order.sort_unstable();
    order
}
