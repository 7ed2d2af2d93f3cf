use crate::data::ScaledTable;
use crate::error::Result;

use super::{check_pair, entropy_binned, mean, mutual_information_binned};

/// Mutual information gap of each factor: the difference between the two
/// most informative variables, divided by the factor's entropy.
pub fn mig_per_factor(factors: &ScaledTable, repr: &ScaledTable, bins: usize) -> Result<Vec<f64>> {
    check_pair(factors, repr)?;
    let mut gaps = Vec::with_capacity(factors.width());
    for i in 0..factors.width() {
        let y = factors.column(i);
        let h = entropy_binned(y, bins)?;
        if h <= 0.0 {
            gaps.push(0.0);
            continue;
        }
        let mut mi = (0..repr.width())
            .map(|j| mutual_information_binned(repr.column(j), y, bins))
            .collect::<Result<Vec<f64>>>()?;
        mi.sort_by(|a, b| b.total_cmp(a));
        let runner_up = mi.get(1).copied().unwrap_or(0.0);
        gaps.push(((mi[0] - runner_up) / h).clamp(0.0, 1.0));
    }
    Ok(gaps)
}

pub fn mig(factors: &ScaledTable, repr: &ScaledTable, bins: usize) -> Result<f64> {
    Ok(mean(&mig_per_factor(factors, repr, bins)?))
}
