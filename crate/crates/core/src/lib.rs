//! Fast extraction of 22 canonical time-series features, plus the tooling
//! used to distil such a set from a larger pool: per-feature classification
//! scoring, permutation-based significance, performance filtering and
//! redundancy clustering.

pub mod bench;
pub mod classify;
pub mod error;
pub mod features;
pub mod io;
pub mod kernels;
pub mod par;
pub mod select;
pub mod series;

pub use error::{Error, Result};
pub use features::{extract_all, extract_batch, FeatureId, FeatureVector, N_FEATURES};
pub use series::{validate_series, zscore, FeatureValue, Marker, TimeSeries};
