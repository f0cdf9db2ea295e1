//! Validated series type, z-scoring and the special-value markers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite, non-empty, ordered sequence of real samples.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    samples: Vec<f64>,
}

impl TimeSeries {
    /// Validates `samples`: at least one entry, every entry finite.
    pub fn new(samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(index) = samples.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteSample(index));
        }
        Ok(Self { samples })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.samples
    }
}

impl AsRef<[f64]> for TimeSeries {
    fn as_ref(&self) -> &[f64] {
        &self.samples
    }
}

impl TryFrom<Vec<f64>> for TimeSeries {
    type Error = Error;

    fn try_from(samples: Vec<f64>) -> Result<Self> {
        Self::new(samples)
    }
}

/// Copies `raw` into a validated [`TimeSeries`].
pub fn validate_series(raw: &[f64]) -> Result<TimeSeries> {
    TimeSeries::new(raw.to_vec())
}

/// Why a feature produced no number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Marker {
    NotComputable,
    DegenerateInput,
}

impl Marker {
    pub fn code(self) -> char {
        match self {
            Marker::NotComputable => 'N',
            Marker::DegenerateInput => 'D',
        }
    }

    pub fn from_code(c: char) -> Option<Self> {
        match c {
            'N' => Some(Marker::NotComputable),
            'D' => Some(Marker::DegenerateInput),
            _ => None,
        }
    }
}

/// A feature output: a finite number or a typed special-value marker.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FeatureValue {
    Value(f64),
    Special(Marker),
}

impl FeatureValue {
    pub fn value(self) -> Option<f64> {
        match self {
            FeatureValue::Value(v) => Some(v),
            FeatureValue::Special(_) => None,
        }
    }

    pub fn marker(self) -> Option<Marker> {
        match self {
            FeatureValue::Value(_) => None,
            FeatureValue::Special(m) => Some(m),
        }
    }

    pub fn is_special(self) -> bool {
        matches!(self, FeatureValue::Special(_))
    }

    /// Bitwise equality on values, identity on markers.
    pub fn bit_eq(self, other: Self) -> bool {
        match (self, other) {
            (FeatureValue::Value(a), FeatureValue::Value(b)) => a.to_bits() == b.to_bits(),
            (FeatureValue::Special(a), FeatureValue::Special(b)) => a == b,
            _ => false,
        }
    }
}

impl From<Result<f64>> for FeatureValue {
    fn from(r: Result<f64>) -> Self {
        match r {
            Ok(v) if v.is_finite() => FeatureValue::Value(v),
            Ok(_) => FeatureValue::Special(Marker::NotComputable),
            Err(Error::NotComputable(_)) => FeatureValue::Special(Marker::NotComputable),
            Err(_) => FeatureValue::Special(Marker::DegenerateInput),
        }
    }
}

pub(crate) fn mean(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let m = x.iter().sum::<f64>() / n;
    // one correction pass removes most of the summation error
    m + x.iter().map(|v| v - m).sum::<f64>() / n
}

/// Sample (N-1) standard deviation.
pub(crate) fn std_sample(x: &[f64]) -> f64 {
    let m = mean(x);
    let ss: f64 = x.iter().map(|v| (v - m) * (v - m)).sum();
    (ss / (x.len() as f64 - 1.0)).sqrt()
}

/// Standardizes to zero mean and unit sample standard deviation.
pub fn zscore(series: &TimeSeries) -> Result<TimeSeries> {
    zscore_slice(series.samples()).map(|samples| TimeSeries { samples })
}

pub(crate) fn zscore_slice(x: &[f64]) -> Result<Vec<f64>> {
    if x.len() < 2 {
        return Err(Error::DegenerateInput("z-score needs at least 2 samples"));
    }
    let m = mean(x);
    let ss: f64 = x.iter().map(|v| (v - m) * (v - m)).sum();
    let sd = (ss / (x.len() as f64 - 1.0)).sqrt();
    // relative test: spreads at rounding level of the offset are constants
    let scale = x.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    if !(sd > scale * 1e-13) || !sd.is_finite() {
        return Err(Error::DegenerateInput("constant series"));
    }
    Ok(x.iter().map(|v| (v - m) / sd).collect())
}
