//! The regressor behind every `fit(a, b)` of the metric algorithms.
//!
//! Features are passed column-major as `&[&[f64]]`: one slice per feature,
//! all of the same length.

mod forest;
mod tree;

pub use forest::{bootstrap_counts, RandomForest};
pub use tree::Tree;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Features considered at each split.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum FeatureSubsample {
    /// Every feature.
    #[default]
    All,
    /// `floor(sqrt(k))` features drawn per node; all of them when `k == 1`.
    Sqrt,
}

impl FeatureSubsample {
    pub(crate) fn count(self, features: usize) -> usize {
        match self {
            FeatureSubsample::All => features,
            FeatureSubsample::Sqrt => ((features as f64).sqrt().floor() as usize).max(1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegressorConfig {
    pub tree_count: usize,
    pub max_depth: usize,
    pub min_leaf: usize,
    pub feature_subsample: FeatureSubsample,
    pub seed: u64,
}

impl Default for RegressorConfig {
    fn default() -> Self {
        Self {
            tree_count: 100,
            max_depth: 12,
            min_leaf: 5,
            feature_subsample: FeatureSubsample::All,
            seed: 0,
        }
    }
}

impl RegressorConfig {
    pub fn validate(&self) -> Result<()> {
        if self.tree_count == 0 || self.max_depth == 0 || self.min_leaf == 0 {
            return Err(Error::InvalidInput(
                "tree_count, max_depth and min_leaf must all be at least 1".into(),
            ));
        }
        if self.max_depth > 60 {
            return Err(Error::InvalidInput(
                "max_depth above 60 is not supported".into(),
            ));
        }
        Ok(())
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        Self {
            seed,
            ..self.clone()
        }
    }
}

/// Fit/predict contract shared by every regressor the metrics can use.
pub trait Regressor: Sized + Send + Sync {
    type Config;

    fn fit(features: &[&[f64]], targets: &[f64], config: &Self::Config) -> Result<Self>;

    fn predict(&self, features: &[&[f64]]) -> Result<Vec<f64>>;

    fn feature_count(&self) -> usize;
}

/// Checks that `features` is a non-empty set of equal-length finite columns
/// and returns the row count.
pub(crate) fn check_features(features: &[&[f64]]) -> Result<usize> {
    let first = features
        .first()
        .ok_or_else(|| Error::InvalidInput("at least one feature column is required".into()))?;
    let rows = first.len();
    for (f, col) in features.iter().enumerate() {
        if col.len() != rows {
            return Err(Error::LengthMismatch {
                expected: rows,
                actual: col.len(),
            });
        }
        if let Some(row) = col.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                column: format!("feature {f}"),
                row,
            });
        }
    }
    Ok(rows)
}
