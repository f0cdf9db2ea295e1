//! The 22 canonical features.
//!
//! Every feature z-scores its input first, so each is invariant to positive
//! affine rescaling of the raw samples. [`extract_all`] shares the z-scored
//! series, its autocorrelation and first zero crossing across features.

mod autocorr;
mod differences;
mod distribution;
mod fluctuation;
mod nonlinear;
mod other;
mod spectral;
pub(crate) mod temporal;

use std::cell::OnceCell;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels::{self, Acf};
use crate::series::{zscore_slice, FeatureValue, Marker, TimeSeries};

pub use fluctuation::FluctuationMethod;
pub use temporal::Tail;

/// Number of canonical features.
pub const N_FEATURES: usize = 22;

/// Feature families, following the grouping of the canonical table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Distribution,
    SimpleTemporal,
    LinearAutocorr,
    NonlinearAutocorr,
    SuccessiveDifferences,
    Fluctuation,
    Other,
}

/// Static description of one feature.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FeatureDescriptor {
    pub name: &'static str,
    pub family: Family,
    pub min_length: usize,
}

macro_rules! features {
    ($($variant:ident => $name:literal, $family:ident, $min:literal;)*) => {
        /// Identifier of a canonical feature, in output order.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum FeatureId { $($variant),* }

        impl FeatureId {
            pub const ALL: [FeatureId; N_FEATURES] = [$(FeatureId::$variant),*];

            pub fn descriptor(self) -> FeatureDescriptor {
                match self {
                    $(FeatureId::$variant => FeatureDescriptor {
                        name: $name,
                        family: Family::$family,
                        min_length: $min,
                    }),*
                }
            }
        }
    };
}

features! {
    HistogramMode5 => "DN_HistogramMode_5", Distribution, 5;
    HistogramMode10 => "DN_HistogramMode_10", Distribution, 5;
    LongstretchAboveMean => "SB_BinaryStats_mean_longstretch1", SimpleTemporal, 5;
    OutlierIncludeP => "DN_OutlierInclude_p_001_mdrmd", SimpleTemporal, 5;
    OutlierIncludeN => "DN_OutlierInclude_n_001_mdrmd", SimpleTemporal, 5;
    F1ecac => "CO_f1ecac", LinearAutocorr, 5;
    FirstMinAc => "CO_FirstMin_ac", LinearAutocorr, 5;
    SpectralArea51 => "SP_Summaries_welch_rect_area_5_1", LinearAutocorr, 16;
    SpectralCentroid => "SP_Summaries_welch_rect_centroid", LinearAutocorr, 16;
    LocalMean3Stderr => "FC_LocalSimple_mean3_stderr", LinearAutocorr, 5;
    TrevNum => "CO_trev_1_num", NonlinearAutocorr, 5;
    HistogramAmi => "CO_HistogramAMI_even_2_5", NonlinearAutocorr, 5;
    AmiGaussianFirstMin => "IN_AutoMutualInfoStats_40_gaussian_fmmi", NonlinearAutocorr, 5;
    Pnn40 => "MD_hrv_classic_pnn40", SuccessiveDifferences, 5;
    LongstretchDecreasing => "SB_BinaryStats_diff_longstretch0", SuccessiveDifferences, 5;
    MotifThreeHh => "SB_MotifThree_quantile_hh", SuccessiveDifferences, 5;
    LocalMean1Tauresrat => "FC_LocalSimple_mean1_tauresrat", SuccessiveDifferences, 5;
    Embed2ExpfitMeandiff => "CO_Embed2_Dist_tau_d_expfit_meandiff", SuccessiveDifferences, 5;
    FluctDfa => "SC_FluctAnal_2_dfa_50_1_2_logi_prop_r1", Fluctuation, 64;
    FluctRsrange => "SC_FluctAnal_2_rsrangefit_50_1_logi_prop_r1", Fluctuation, 64;
    TransitionSumdiagcov => "SB_TransitionMatrix_3ac_sumdiagcov", Other, 5;
    PeriodicityWang => "PD_PeriodicityWang_th0_01", Other, 5;
}

impl FeatureId {
    pub fn name(self) -> &'static str {
        self.descriptor().name
    }

    pub fn family(self) -> Family {
        self.descriptor().family
    }

    pub fn min_length(self) -> usize {
        self.descriptor().min_length
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == name)
    }

    /// True when the feature only takes integer values.
    pub fn is_integer_valued(self) -> bool {
        matches!(
            self,
            FeatureId::LongstretchAboveMean
                | FeatureId::LongstretchDecreasing
                | FeatureId::FirstMinAc
                | FeatureId::AmiGaussianFirstMin
                | FeatureId::PeriodicityWang
        )
    }

    /// Computes this single feature on `series`.
    pub fn compute(self, series: &TimeSeries) -> FeatureValue {
        match Context::new(series.samples()) {
            Ok(ctx) => ctx.feature(self),
            Err(_) => FeatureValue::Special(Marker::DegenerateInput),
        }
    }

    fn evaluate(self, ctx: &Context) -> Result<f64> {
        use FeatureId::*;
        if ctx.len() < self.min_length() {
            return Err(Error::DegenerateInput("series shorter than feature minimum"));
        }
        let z = ctx.z();
        match self {
            HistogramMode5 => distribution::histogram_mode(z, 5),
            HistogramMode10 => distribution::histogram_mode(z, 10),
            LongstretchAboveMean => Ok(temporal::longstretch_above_mean(z) as f64),
            OutlierIncludeP => temporal::outlier_include_mdrmd(z, Tail::Positive),
            OutlierIncludeN => temporal::outlier_include_mdrmd(z, Tail::Negative),
            F1ecac => Ok(autocorr::f1ecac(ctx.acf()?)),
            FirstMinAc => Ok(autocorr::first_min_ac(ctx.acf()?) as f64),
            SpectralArea51 => spectral::spectral_area_5_1(z),
            SpectralCentroid => spectral::spectral_centroid(z),
            LocalMean3Stderr => autocorr::local_mean_forecast_stderr(z, 3),
            TrevNum => Ok(nonlinear::trev_num(z)),
            HistogramAmi => nonlinear::histogram_ami(z, 2, 5),
            AmiGaussianFirstMin => {
                Ok(nonlinear::ami_gaussian_first_min(ctx.acf()?, z.len(), 40) as f64)
            }
            Pnn40 => Ok(differences::pnn40(z)),
            LongstretchDecreasing => Ok(differences::longstretch_decreasing(z) as f64),
            MotifThreeHh => differences::motif_three_hh(z),
            LocalMean1Tauresrat => differences::local_mean1_tauresrat(z, ctx.first_zero()?),
            Embed2ExpfitMeandiff => differences::embed2_dist_expfit_meandiff(z, ctx.first_zero()?),
            FluctDfa => fluctuation::fluct_anal_prop_r1(z, FluctuationMethod::Dfa),
            FluctRsrange => fluctuation::fluct_anal_prop_r1(z, FluctuationMethod::RsRange),
            TransitionSumdiagcov => other::transition_matrix_sumdiagcov(z, ctx.first_zero()?),
            PeriodicityWang => Ok(other::periodicity_wang(z) as f64),
        }
    }
}

impl fmt::Display for FeatureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Canonical feature names in output order.
pub fn feature_names() -> [&'static str; N_FEATURES] {
    FeatureId::ALL.map(FeatureId::name)
}

/// Shared, lazily computed intermediates for one series.
struct Context {
    z: Vec<f64>,
    acf: OnceCell<Result<Acf>>,
}

impl Context {
    fn new(raw: &[f64]) -> Result<Self> {
        Ok(Self {
            z: zscore_slice(raw)?,
            acf: OnceCell::new(),
        })
    }

    fn len(&self) -> usize {
        self.z.len()
    }

    fn z(&self) -> &[f64] {
        &self.z
    }

    fn acf(&self) -> Result<&Acf> {
        self.acf
            .get_or_init(|| kernels::autocorr(&self.z, self.z.len() - 1))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn first_zero(&self) -> Result<usize> {
        self.acf().map(kernels::first_zero_in)
    }

    fn feature(&self, id: FeatureId) -> FeatureValue {
        id.evaluate(self).into()
    }
}

/// The 22 feature outputs for one series, in [`FeatureId::ALL`] order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeatureVector {
    values: [FeatureValue; N_FEATURES],
}

impl FeatureVector {
    pub fn new(values: [FeatureValue; N_FEATURES]) -> Self {
        Self { values }
    }

    pub fn values(&self) -> &[FeatureValue; N_FEATURES] {
        &self.values
    }

    pub fn get(&self, id: FeatureId) -> FeatureValue {
        self.values[id.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = (FeatureId, FeatureValue)> + '_ {
        FeatureId::ALL.into_iter().zip(self.values.iter().copied())
    }

    pub fn bit_eq(&self, other: &Self) -> bool {
        self.values
            .iter()
            .zip(&other.values)
            .all(|(a, b)| a.bit_eq(*b))
    }
}

/// Computes all 22 features. Per-feature failures become markers.
pub fn extract_all(series: &TimeSeries) -> FeatureVector {
    let values = match Context::new(series.samples()) {
        Ok(ctx) => FeatureId::ALL.map(|id| ctx.feature(id)),
        Err(_) => [FeatureValue::Special(Marker::DegenerateInput); N_FEATURES],
    };
    FeatureVector { values }
}

/// Extracts every series, data-parallel when the `parallel` feature is on.
/// Output order follows input order.
pub fn extract_batch(series: &[TimeSeries]) -> Vec<FeatureVector> {
    crate::par::map_slice(series, extract_all)
}

fn prepared(series: &TimeSeries, id: FeatureId) -> Result<Vec<f64>> {
    if series.len() < id.min_length() {
        return Err(Error::DegenerateInput("series shorter than feature minimum"));
    }
    zscore_slice(series.samples())
}

fn full_acf(z: &[f64]) -> Result<Acf> {
    kernels::autocorr(z, z.len() - 1)
}

// Single-feature entry points. Each z-scores its input.

pub fn histogram_mode(series: &TimeSeries, n_bins: usize) -> Result<f64> {
    distribution::histogram_mode(&prepared(series, FeatureId::HistogramMode5)?, n_bins)
}

pub fn longstretch_above_mean(series: &TimeSeries) -> Result<usize> {
    Ok(temporal::longstretch_above_mean(&prepared(series, FeatureId::LongstretchAboveMean)?))
}

pub fn outlier_include_mdrmd(series: &TimeSeries, tail: Tail) -> Result<f64> {
    temporal::outlier_include_mdrmd(&prepared(series, FeatureId::OutlierIncludeP)?, tail)
}

pub fn f1ecac(series: &TimeSeries) -> Result<f64> {
    Ok(autocorr::f1ecac(&full_acf(&prepared(series, FeatureId::F1ecac)?)?))
}

pub fn first_min_ac(series: &TimeSeries) -> Result<usize> {
    Ok(autocorr::first_min_ac(&full_acf(&prepared(series, FeatureId::FirstMinAc)?)?))
}

pub fn spectral_area_5_1(series: &TimeSeries) -> Result<f64> {
    spectral::spectral_area_5_1(&prepared(series, FeatureId::SpectralArea51)?)
}

pub fn spectral_centroid(series: &TimeSeries) -> Result<f64> {
    spectral::spectral_centroid(&prepared(series, FeatureId::SpectralCentroid)?)
}

pub fn local_mean_forecast_stderr(series: &TimeSeries, window: usize) -> Result<f64> {
    autocorr::local_mean_forecast_stderr(&prepared(series, FeatureId::LocalMean3Stderr)?, window)
}

pub fn local_mean1_tauresrat(series: &TimeSeries) -> Result<f64> {
    let z = prepared(series, FeatureId::LocalMean1Tauresrat)?;
    let tau = kernels::first_zero_in(&full_acf(&z)?);
    differences::local_mean1_tauresrat(&z, tau)
}

pub fn trev_num(series: &TimeSeries) -> Result<f64> {
    Ok(nonlinear::trev_num(&prepared(series, FeatureId::TrevNum)?))
}

pub fn histogram_ami(series: &TimeSeries, lag: usize, n_bins: usize) -> Result<f64> {
    nonlinear::histogram_ami(&prepared(series, FeatureId::HistogramAmi)?, lag, n_bins)
}

pub fn ami_gaussian_first_min(series: &TimeSeries, max_lag: usize) -> Result<usize> {
    let z = prepared(series, FeatureId::AmiGaussianFirstMin)?;
    Ok(nonlinear::ami_gaussian_first_min(&full_acf(&z)?, z.len(), max_lag))
}

pub fn pnn40(series: &TimeSeries) -> Result<f64> {
    Ok(differences::pnn40(&prepared(series, FeatureId::Pnn40)?))
}

pub fn longstretch_decreasing(series: &TimeSeries) -> Result<usize> {
    Ok(differences::longstretch_decreasing(&prepared(series, FeatureId::LongstretchDecreasing)?))
}

pub fn motif_three_hh(series: &TimeSeries) -> Result<f64> {
    differences::motif_three_hh(&prepared(series, FeatureId::MotifThreeHh)?)
}

pub fn embed2_dist_expfit_meandiff(series: &TimeSeries) -> Result<f64> {
    let z = prepared(series, FeatureId::Embed2ExpfitMeandiff)?;
    let tau = kernels::first_zero_in(&full_acf(&z)?);
    differences::embed2_dist_expfit_meandiff(&z, tau)
}

pub fn fluct_anal_prop_r1(series: &TimeSeries, method: FluctuationMethod) -> Result<f64> {
    fluctuation::fluct_anal_prop_r1(&prepared(series, FeatureId::FluctDfa)?, method)
}

pub fn transition_matrix_sumdiagcov(series: &TimeSeries) -> Result<f64> {
    let z = prepared(series, FeatureId::TransitionSumdiagcov)?;
    let tau = kernels::first_zero_in(&full_acf(&z)?);
    other::transition_matrix_sumdiagcov(&z, tau)
}

pub fn periodicity_wang(series: &TimeSeries) -> Result<usize> {
    Ok(other::periodicity_wang(&prepared(series, FeatureId::PeriodicityWang)?))
}
