use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::classify::{cross_validate, LabeledFeatureMatrix};
use crate::error::{Error, Result};
use crate::kernels::{chi2_sf, normal_sf};

/// Smallest p-value passed to the log in Fisher's method.
pub const P_FLOOR: f64 = 1e-300;

/// Accuracies of one feature under shuffled class labels.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NullDistribution {
    pub shuffled_accuracies: Vec<f64>,
    pub repeats: usize,
}

impl NullDistribution {
    pub fn mean(&self) -> f64 {
        self.shuffled_accuracies.iter().sum::<f64>() / self.repeats as f64
    }

    pub fn std(&self) -> f64 {
        let m = self.mean();
        let ss: f64 = self
            .shuffled_accuracies
            .iter()
            .map(|a| (a - m) * (a - m))
            .sum();
        (ss / (self.repeats - 1) as f64).sqrt()
    }
}

/// How a p-value is read off a null distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PValueMode {
    #[default]
    Gaussian,
    Empirical,
}

/// Permutation null for one column: repeat `r` shuffles the labels with a
/// generator seeded by `seed ^ r` and records the cross-validated balanced
/// accuracy of the column alone.
pub fn permutation_null(
    matrix: &LabeledFeatureMatrix,
    feature: usize,
    repeats: usize,
    seed: u64,
) -> Result<NullDistribution> {
    if repeats < 100 {
        return Err(Error::InvalidConfig(format!(
            "permutation repeats must be at least 100, got {repeats}"
        )));
    }
    if feature >= matrix.n_features() {
        return Err(Error::InvalidConfig(format!("no feature column {feature}")));
    }
    let col = matrix.select_columns(&[feature]);
    let shuffled = crate::par::map_range(repeats, |r| {
        let mut labels = col.labels().to_vec();
        labels.shuffle(&mut ChaCha8Rng::seed_from_u64(seed ^ r as u64));
        cross_validate(&col.with_labels(labels), &[0], seed).map(|cv| cv.mean)
    });
    Ok(NullDistribution {
        shuffled_accuracies: shuffled.into_iter().collect::<Result<_>>()?,
        repeats,
    })
}

/// Upper-tail p-value of `observed` under a normal fit to the null.
pub fn gaussian_pvalue(null: &NullDistribution, observed: f64) -> Result<f64> {
    if null.repeats < 2 {
        return Err(Error::DegenerateNull);
    }
    let sd = null.std();
    if !(sd > 0.0) {
        return Err(Error::DegenerateNull);
    }
    Ok(normal_sf((observed - null.mean()) / sd))
}

/// Upper-tail p-value counted directly from the null, (1 + #{null >= obs}) / (R + 1).
pub fn empirical_pvalue(null: &NullDistribution, observed: f64) -> f64 {
    let hits = null
        .shuffled_accuracies
        .iter()
        .filter(|&&a| a >= observed)
        .count();
    (1 + hits) as f64 / (null.repeats + 1) as f64
}

/// Fisher's method: chi-square survival of -2 sum ln p with 2M degrees of freedom.
pub fn fisher_combine(pvalues: &[f64]) -> Result<f64> {
    if pvalues.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut x = 0.0;
    for &p in pvalues {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidPValue(p));
        }
        x -= 2.0 * p.max(P_FLOOR).ln();
    }
    Ok(chi2_sf(x, 2 * pvalues.len() as u32))
}

/// Holm's step-down procedure. Returns a rejection flag per input p-value.
pub fn holm_bonferroni(pvalues: &[f64], alpha: f64) -> Result<Vec<bool>> {
    if let Some(&p) = pvalues.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return Err(Error::InvalidPValue(p));
    }
    let m = pvalues.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| pvalues[a].total_cmp(&pvalues[b]).then(a.cmp(&b)));
    let mut reject = vec![false; m];
    for (k, &i) in order.iter().enumerate() {
        if pvalues[i] < alpha / (m - k) as f64 {
            reject[i] = true;
        } else {
            break;
        }
    }
    Ok(reject)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn null(values: Vec<f64>) -> NullDistribution {
        NullDistribution {
            repeats: values.len(),
            shuffled_accuracies: values,
        }
    }

    #[test]
    fn gaussian_cases() {
        let n = null(vec![0.4, 0.5, 0.6]);
        assert!((gaussian_pvalue(&n, 0.5).unwrap() - 0.5).abs() < 1e-15);
        let p = gaussian_pvalue(&n, 0.5 + 2.0 * n.std()).unwrap();
        assert!((p - 0.022750131948179).abs() < 1e-12);
        assert!(gaussian_pvalue(&n, 0.5 - 5.0 * n.std()).unwrap() > 0.999999);
        assert_eq!(gaussian_pvalue(&null(vec![0.5; 4]), 0.5), Err(Error::DegenerateNull));
    }

    #[test]
    fn empirical_counts_ties() {
        let n = null(vec![0.1, 0.2, 0.3]);
        assert_eq!(empirical_pvalue(&n, 0.2), 0.75);
        assert_eq!(empirical_pvalue(&n, 0.9), 0.25);
    }

    #[test]
    fn fisher_cases() {
        assert!((fisher_combine(&[0.5, 0.5]).unwrap() - 0.596_573_590_279_972_6).abs() < 1e-9);
        assert_eq!(fisher_combine(&[1.0]).unwrap(), 1.0);
        let p = fisher_combine(&[0.05; 10]).unwrap();
        assert!((p - 7.341_634_175_937e-6).abs() < 1e-12, "{p}");
        assert!(fisher_combine(&[0.0]).unwrap().is_finite());
        assert!(fisher_combine(&[]).is_err());
        assert!(fisher_combine(&[1.5]).is_err());
    }

    #[test]
    fn holm_cases() {
        assert_eq!(holm_bonferroni(&[0.01, 0.04, 0.03], 0.05).unwrap(), vec![true, false, false]);
        assert_eq!(holm_bonferroni(&[1.0; 5], 0.05).unwrap(), vec![false; 5]);
        assert_eq!(holm_bonferroni(&[0.001, 0.01, 0.02], 0.05).unwrap(), vec![true, true, true]);
    }
}
