//! Reference implementations of the established disentanglement metrics,
//! used as comparison points for the regressor-based metrics.
//!
//! All of them read MinMax-scaled tables. The histogram-based ones use
//! equal-width bins over [0, 1].

mod dci;
mod explicitness_score;
mod factor_vae;
mod lasso;
mod mi;
mod mig;
mod modularity_score;
mod sap;

pub use dci::{dci, Dci, DCI_LASSO_PENALTY};
pub use explicitness_score::{explicitness_score, roc_auc};
pub use factor_vae::factor_vae_score;
pub use mi::{entropy_binned, mutual_information_binned, BinnedJointHistogram};
pub use mig::{mig, mig_per_factor};
pub use modularity_score::{modularity_score, modularity_score_per_variable};
pub use sap::{sap, sap_per_factor};

use crate::data::ScaledTable;
use crate::error::{Error, Result};

fn check_pair(factors: &ScaledTable, repr: &ScaledTable) -> Result<()> {
    if factors.rows() != repr.rows() {
        return Err(Error::LengthMismatch {
            expected: factors.rows(),
            actual: repr.rows(),
        });
    }
    Ok(())
}

fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        0.0
    } else {
        values.iter().sum::<f64>() / values.len() as f64
    }
}

/// Normalized Shannon entropy of a nonnegative weight vector, in `[0, 1]`
/// (base = number of entries).
fn normalized_entropy(weights: &[f64]) -> f64 {
    let k = weights.len();
    if k <= 1 {
        return 0.0;
    }
    let total: f64 = weights.iter().sum();
    if total <= 0.0 {
        return 1.0;
    }
    let h: f64 = weights
        .iter()
        .filter(|&&w| w > 0.0)
        .map(|&w| {
            let p = w / total;
            -p * p.ln()
        })
        .sum();
    (h / (k as f64).ln()).clamp(0.0, 1.0)
}
