//! Distils a small, non-redundant, well-performing feature subset from a
//! feature pool scored across many labelled tasks: significance testing
//! against permutation nulls, a performance threshold, then complete-linkage
//! clustering of the features' accuracy profiles.

mod cluster;
mod pipeline;
mod scores;
mod stats;

pub use cluster::{
    complete_linkage_cluster, performance_correlation_distance, row_distance, select_representatives,
    ClusterAssignment, RepresentativeMode,
};
pub use pipeline::{
    run_pipeline, BetaPoint, BetaRange, PipelineConfig, PipelineOutput, PipelineResults, Provenance, StageCounts,
};
pub use scores::{combine_scores, normalize_accuracies, threshold_top, top_beta, TaskResultMatrix};
pub use stats::{
    empirical_pvalue, fisher_combine, gaussian_pvalue, holm_bonferroni, permutation_null, NullDistribution,
    PValueMode, P_FLOOR,
};

use crate::classify::LabeledFeatureMatrix;
use crate::error::{Error, Result};
use crate::features::{extract_batch, FeatureVector};
use crate::series::TimeSeries;

/// Features kept after dropping those with special values in more than
/// `threshold` of tasks. `special[task][feature]` is true when the feature
/// was special-valued on at least one series of that task.
pub fn special_value_prefilter(special: &[Vec<bool>], threshold: f64) -> Vec<usize> {
    let Some(first) = special.first() else {
        return Vec::new();
    };
    let m = special.len() as f64;
    (0..first.len())
        .filter(|&i| {
            let hit = special.iter().filter(|t| t[i]).count() as f64;
            hit / m <= threshold
        })
        .collect()
}

/// Column medians over present values; 0 when a column has none.
fn column_medians(rows: &[Vec<Option<f64>>], d: usize) -> Vec<f64> {
    (0..d)
        .map(|j| {
            let mut v: Vec<f64> = rows.iter().filter_map(|r| r[j]).collect();
            if v.is_empty() {
                return 0.0;
            }
            v.sort_by(f64::total_cmp);
            crate::features::temporal::median_sorted(&v)
        })
        .collect()
}

/// One labelled task as seen by the selector.
#[derive(Debug, Clone, PartialEq)]
pub struct SelectionTask {
    pub name: String,
    /// Feature values, with special entries replaced by the column median.
    pub matrix: LabeledFeatureMatrix,
    /// Per feature: special-valued on at least one row.
    pub special: Vec<bool>,
}

impl SelectionTask {
    /// Builds a task from rows where `None` marks a special value.
    pub fn from_feature_rows<S: AsRef<str>>(
        name: impl Into<String>,
        rows: &[Vec<Option<f64>>],
        labels: &[S],
    ) -> Result<Self> {
        let d = rows.first().map_or(0, Vec::len);
        if let Some(r) = rows.iter().find(|r| r.len() != d) {
            return Err(Error::LengthMismatch { left: r.len(), right: d });
        }
        let med = column_medians(rows, d);
        let special = (0..d).map(|j| rows.iter().any(|r| r[j].is_none())).collect();
        let filled: Vec<Vec<f64>> = rows
            .iter()
            .map(|r| r.iter().zip(&med).map(|(v, m)| v.unwrap_or(*m)).collect())
            .collect();
        Ok(Self {
            name: name.into(),
            matrix: LabeledFeatureMatrix::new(&filled, labels)?,
            special,
        })
    }

    /// Extracts the 22 features from each series and builds the task.
    pub fn from_series<S: AsRef<str>>(name: impl Into<String>, series: &[TimeSeries], labels: &[S]) -> Result<Self> {
        let rows = feature_rows(&extract_batch(series));
        Self::from_feature_rows(name, &rows, labels)
    }
}

/// Feature vectors as rows of optional values.
pub fn feature_rows(vectors: &[FeatureVector]) -> Vec<Vec<Option<f64>>> {
    vectors
        .iter()
        .map(|v| v.values().iter().map(|x| x.value()).collect())
        .collect()
}
