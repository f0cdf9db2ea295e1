use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::cluster::{complete_linkage_cluster, row_distance, select_representatives, RepresentativeMode};
use super::scores::{combine_scores, normalize_accuracies, threshold_top, top_beta, TaskResultMatrix};
use super::stats::{empirical_pvalue, fisher_combine, gaussian_pvalue, holm_bonferroni, permutation_null, PValueMode};
use super::{special_value_prefilter, SelectionTask};
use crate::classify::cross_validate;
use crate::error::{Error, Result};

/// Inclusive sweep of `beta` values: `[start, end, step]`.
pub type BetaRange = (usize, usize, usize);

/// Settings for [`run_pipeline`]. Every key is optional in a config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    pub repeats: usize,
    pub alpha: f64,
    pub gamma: f64,
    pub seed: u64,
    /// Fraction of tasks with special values above which a feature is dropped.
    pub special_threshold: f64,
    pub pvalue: PValueMode,
    /// Keep the `beta` best features instead of the mean + 1 sd threshold.
    pub beta: Option<usize>,
    /// Also report cluster counts for each beta in this range.
    pub beta_range: Option<BetaRange>,
    /// Feature names removed before any testing.
    pub exclude: Vec<String>,
    /// One representative name per cluster, replacing best-score choice.
    pub curated: Option<Vec<String>>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            repeats: 1000,
            alpha: 0.05,
            gamma: 0.2,
            seed: 0,
            special_threshold: 0.8,
            pvalue: PValueMode::Gaussian,
            beta: None,
            beta_range: None,
            exclude: Vec::new(),
            curated: None,
        }
    }
}

impl PipelineConfig {
    /// Reads a TOML (`.toml`) or JSON (anything else) config file.
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let bad = |reason: String| Error::MalformedLine {
            path: path.to_path_buf(),
            line: 0,
            reason,
        };
        let cfg: Self = if path.extension().is_some_and(|e| e == "toml") {
            toml::from_str(&text).map_err(|e| bad(e.to_string()))?
        } else {
            serde_json::from_str(&text).map_err(|e| Error::MalformedLine {
                path: path.to_path_buf(),
                line: e.line(),
                reason: e.to_string(),
            })?
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(Error::InvalidConfig(m));
        if self.repeats < 100 {
            return fail(format!("repeats must be at least 100, got {}", self.repeats));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return fail(format!("alpha must lie in (0, 1), got {}", self.alpha));
        }
        if !(0.0..=2.0).contains(&self.gamma) {
            return fail(format!("gamma must lie in [0, 2], got {}", self.gamma));
        }
        if !(0.0..=1.0).contains(&self.special_threshold) {
            return fail(format!("special_threshold must lie in [0, 1], got {}", self.special_threshold));
        }
        if self.beta == Some(0) {
            return fail("beta must be positive".into());
        }
        if let Some((lo, hi, step)) = self.beta_range {
            if lo == 0 || hi < lo || step == 0 {
                return fail(format!("beta_range [{lo}, {hi}, {step}] is not a valid sweep"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StageCounts {
    pub input: usize,
    pub prefiltered: usize,
    pub significant: usize,
    pub retained: usize,
    pub clusters: usize,
}

/// Enough to replay a run: inputs, settings, stage sizes and a digest of the results.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Provenance {
    pub seed: u64,
    pub config: PipelineConfig,
    pub task_names: Vec<String>,
    pub feature_names: Vec<String>,
    pub counts: StageCounts,
    /// sha256 of the JSON-serialized results.
    pub digest: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BetaPoint {
    pub beta: usize,
    pub n_clusters: usize,
}

/// Results of every stage. Feature indices refer to the input feature order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PipelineResults {
    /// Features surviving exclusion and the special-value filter.
    pub prefiltered: Vec<usize>,
    /// Observed balanced accuracy per prefiltered feature and task.
    pub accuracies: Vec<Vec<f64>>,
    /// Per-task p-values, same layout as `accuracies`.
    pub task_pvalues: Vec<Vec<f64>>,
    /// Combined p-value per prefiltered feature.
    pub pvalues: Vec<f64>,
    pub significant: Vec<usize>,
    /// Combined normalized score per significant feature.
    pub scores: Vec<f64>,
    pub retained: Vec<usize>,
    pub clusters: Vec<Vec<usize>>,
    pub max_within_distance: Vec<f64>,
    pub canonical: Vec<usize>,
    pub canonical_names: Vec<String>,
    pub beta_sweep: Vec<BetaPoint>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PipelineOutput {
    pub results: PipelineResults,
    pub provenance: Provenance,
}

fn stage<T>(r: Result<T>, name: &'static str) -> Result<T> {
    r.map_err(|e| e.in_stage(name))
}

/// Distance used inside the pipeline: correlation distance where defined,
/// otherwise 0 for rows identical on shared tasks and 2 for anything else.
fn pipeline_distances(norm: &TaskResultMatrix) -> Vec<Vec<f64>> {
    let f = norm.n_features();
    let mut d = vec![vec![0.0; f]; f];
    for i in 0..f {
        for j in i + 1..f {
            let v = row_distance(norm, i, j).unwrap_or_else(|_| {
                let same = norm
                    .row(i)
                    .iter()
                    .zip(norm.row(j))
                    .all(|(a, b)| a.is_none() || b.is_none() || a == b);
                if same {
                    0.0
                } else {
                    2.0
                }
            });
            d[i][j] = v;
            d[j][i] = v;
        }
    }
    d
}

fn submatrix(d: &[Vec<f64>], rows: &[usize]) -> Vec<Vec<f64>> {
    rows.iter()
        .map(|&i| rows.iter().map(|&j| d[i][j]).collect())
        .collect()
}

/// Runs statistical prefiltering, performance filtering and redundancy
/// clustering over the tasks. All tasks must share the same feature columns.
pub fn run_pipeline(
    tasks: &[SelectionTask],
    feature_names: &[String],
    config: &PipelineConfig,
) -> Result<PipelineOutput> {
    config.validate()?;
    if tasks.is_empty() {
        return Err(Error::EmptyInput);
    }
    let f = feature_names.len();
    if f < 2 {
        return Err(Error::InvalidConfig("selection needs at least two features".into()));
    }
    for t in tasks {
        if t.matrix.n_features() != f {
            return Err(Error::LengthMismatch {
                left: t.matrix.n_features(),
                right: f,
            });
        }
    }
    for name in &config.exclude {
        if !feature_names.contains(name) {
            return Err(Error::InvalidConfig(format!("excluded feature `{name}` is unknown")));
        }
    }

    // A: statistical prefiltering
    let special: Vec<Vec<bool>> = tasks.iter().map(|t| t.special.clone()).collect();
    let prefiltered: Vec<usize> = special_value_prefilter(&special, config.special_threshold)
        .into_iter()
        .filter(|&i| !config.exclude.contains(&feature_names[i]))
        .collect();
    let m = tasks.len();
    let cells: Vec<(usize, usize)> = prefiltered
        .iter()
        .flat_map(|&i| (0..m).map(move |j| (i, j)))
        .collect();
    let tested = crate::par::map_slice(&cells, |&(i, j)| -> Result<(f64, f64)> {
        let task = &tasks[j].matrix;
        let observed = cross_validate(task, &[i], config.seed)?.mean;
        let null = permutation_null(task, i, config.repeats, config.seed)?;
        let p = match config.pvalue {
            PValueMode::Gaussian => match gaussian_pvalue(&null, observed) {
                Err(Error::DegenerateNull) => empirical_pvalue(&null, observed),
                other => other?,
            },
            PValueMode::Empirical => empirical_pvalue(&null, observed),
        };
        Ok((observed, p))
    });
    let tested = stage(tested.into_iter().collect::<Result<Vec<_>>>(), "statistical prefiltering")?;
    let accuracies: Vec<Vec<f64>> = tested.chunks(m.max(1)).map(|c| c.iter().map(|x| x.0).collect()).collect();
    let task_pvalues: Vec<Vec<f64>> = tested.chunks(m.max(1)).map(|c| c.iter().map(|x| x.1).collect()).collect();
    let pvalues = stage(
        task_pvalues.iter().map(|p| fisher_combine(p)).collect::<Result<Vec<_>>>(),
        "statistical prefiltering",
    )?;
    let reject = stage(holm_bonferroni(&pvalues, config.alpha), "statistical prefiltering")?;
    let sig_pos: Vec<usize> = (0..prefiltered.len()).filter(|&k| reject[k]).collect();
    let significant: Vec<usize> = sig_pos.iter().map(|&k| prefiltered[k]).collect();

    // B: performance filtering
    let mut scores = Vec::new();
    let mut retained_pos = Vec::new();
    let mut norm = None;
    if !significant.is_empty() {
        let raw = TaskResultMatrix::new(
            sig_pos.iter().map(|&k| accuracies[k].iter().map(|&a| Some(a)).collect()).collect(),
            significant.iter().map(|&i| feature_names[i].clone()).collect(),
            tasks.iter().map(|t| t.name.clone()).collect(),
        )?;
        let nm = stage(normalize_accuracies(&raw), "performance filtering")?;
        scores = stage(combine_scores(&nm), "performance filtering")?;
        retained_pos = match config.beta {
            Some(beta) => top_beta(&scores, beta),
            None if scores.len() < 2 => vec![0],
            None => {
                let kept = threshold_top(&scores)?;
                if kept.is_empty() {
                    let top = scores.iter().cloned().fold(f64::MIN, f64::max);
                    (0..scores.len()).filter(|&k| scores[k] == top).collect()
                } else {
                    kept
                }
            }
        };
        norm = Some(nm);
    }
    let retained: Vec<usize> = retained_pos.iter().map(|&k| significant[k]).collect();

    // C: redundancy minimization
    let mut clusters = Vec::new();
    let mut max_within_distance = Vec::new();
    let mut canonical = Vec::new();
    let mut beta_sweep = Vec::new();
    if let Some(nm) = &norm {
        let all_d = pipeline_distances(nm);
        let d = submatrix(&all_d, &retained_pos);
        let assignment = complete_linkage_cluster(&d, config.gamma);
        let local_scores: Vec<f64> = retained_pos.iter().map(|&k| scores[k]).collect();
        let local_names: Vec<String> = retained.iter().map(|&i| feature_names[i].clone()).collect();
        let mode = match &config.curated {
            Some(list) => RepresentativeMode::CuratedList(list),
            None => RepresentativeMode::BestScore,
        };
        let reps = stage(
            select_representatives(&assignment, &local_scores, &local_names, &mode),
            "redundancy minimization",
        )?;
        max_within_distance = assignment.max_within(&d);
        clusters = assignment
            .members
            .iter()
            .map(|c| c.iter().map(|&k| retained[k]).collect())
            .collect();
        canonical = reps.iter().map(|&k| retained[k]).collect();
        if let Some((lo, hi, step)) = config.beta_range {
            for beta in (lo..=hi).step_by(step) {
                let rows = top_beta(&scores, beta);
                let n_clusters = complete_linkage_cluster(&submatrix(&all_d, &rows), config.gamma).n_clusters();
                beta_sweep.push(BetaPoint { beta, n_clusters });
            }
        }
    }

    let results = PipelineResults {
        canonical_names: canonical.iter().map(|&i| feature_names[i].clone()).collect(),
        prefiltered,
        accuracies,
        task_pvalues,
        pvalues,
        significant,
        scores,
        retained,
        clusters,
        max_within_distance,
        canonical,
        beta_sweep,
    };
    let json = serde_json::to_vec(&results).expect("results serialize");
    let digest = Sha256::digest(&json).iter().map(|b| format!("{b:02x}")).collect();
    let provenance = Provenance {
        seed: config.seed,
        config: config.clone(),
        task_names: tasks.iter().map(|t| t.name.clone()).collect(),
        feature_names: feature_names.to_vec(),
        counts: StageCounts {
            input: f,
            prefiltered: results.prefiltered.len(),
            significant: results.significant.len(),
            retained: results.retained.len(),
            clusters: results.clusters.len(),
        },
        digest,
    };
    Ok(PipelineOutput { results, provenance })
}
