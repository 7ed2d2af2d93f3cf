//! Regressor-based metrics: modularity, compactness, explicitness,
//! minimality and sufficiency.
//!
//! Each metric compares the error of a regressor against the error of the
//! same kind of regressor asked to predict an independent U(0,1) column
//! from the same inputs. That noise baseline is the denominator of every
//! [`normalized_score`].

mod engine;
mod ind;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use ind::{compactness_explicitness, minimality, modularity, sufficiency};

/// Denominators below this are treated as degenerate.
pub const DENOMINATOR_GUARD: f64 = 1e-9;

/// Weight mass below which a representation is considered to carry no
/// information about the factors.
///
/// Holdout estimates of an uninformative variable's weight scatter around
/// zero at the 1e-2 level, so the guard sits above that scatter.
pub const WEIGHT_FLOOR: f64 = 0.05;

/// A score clamped to `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClampedScore {
    value: f64,
    /// Set when the denominator fell below [`DENOMINATOR_GUARD`].
    pub degenerate: bool,
}

impl ClampedScore {
    pub fn value(self) -> f64 {
        self.value
    }
}

/// `clamp(1 - numerator / denominator, 0, 1)`.
pub fn normalized_score(numerator_err: f64, denominator_err: f64) -> Result<ClampedScore> {
    if !numerator_err.is_finite() || !denominator_err.is_finite() {
        return Err(Error::InvalidInput("score errors must be finite".into()));
    }
    if numerator_err < 0.0 || denominator_err < 0.0 {
        return Err(Error::InvalidInput(format!(
            "score errors must be nonnegative, got {numerator_err} / {denominator_err}"
        )));
    }
    if denominator_err < DENOMINATOR_GUARD {
        return Ok(ClampedScore {
            value: 0.0,
            degenerate: true,
        });
    }
    Ok(ClampedScore {
        value: (1.0 - numerator_err / denominator_err).clamp(0.0, 1.0),
        degenerate: false,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    /// One value per representation variable.
    Variable,
    /// One value per factor of variation.
    Factor,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerAxis {
    pub axis: Axis,
    pub values: Vec<f64>,
}

/// Output of one metric run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub metric_name: String,
    pub factor_names: Vec<String>,
    pub variable_names: Vec<String>,
    /// Rows are factors, columns are representation variables.
    pub pair_scores: Option<Vec<Vec<f64>>>,
    /// Normalized informativeness weights of the variables.
    pub variable_weights: Option<Vec<f64>>,
    pub per_axis: PerAxis,
    pub aggregate: f64,
    /// Noise-baseline errors keyed by the regressor that produced them.
    pub noise_baselines: BTreeMap<String, f64>,
    pub warnings: Vec<String>,
}

impl MetricReport {
    /// Per-axis value by variable or factor name.
    pub fn per_axis_value(&self, name: &str) -> Option<f64> {
        let names = match self.per_axis.axis {
            Axis::Variable => &self.variable_names,
            Axis::Factor => &self.factor_names,
        };
        names
            .iter()
            .position(|n| n == name)
            .map(|k| self.per_axis.values[k])
    }

    pub fn has_degenerate_weights(&self) -> bool {
        self.warnings
            .iter()
            .any(|w| w.starts_with(DEGENERATE_WEIGHTS))
    }
}

pub(crate) const DEGENERATE_WEIGHTS: &str = "degenerate weights";
