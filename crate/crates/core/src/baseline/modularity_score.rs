use crate::data::ScaledTable;
use crate::error::Result;

use super::{check_pair, mean, mutual_information_binned};

/// Per variable: one minus the normalized squared deviation of its mutual
/// information profile over the factors from the ideal one-hot profile.
pub fn modularity_score_per_variable(
    factors: &ScaledTable,
    repr: &ScaledTable,
    bins: usize,
) -> Result<Vec<f64>> {
    check_pair(factors, repr)?;
    let n = factors.width();
    let mut scores = Vec::with_capacity(repr.width());
    for j in 0..repr.width() {
        let mi = (0..n)
            .map(|i| mutual_information_binned(repr.column(j), factors.column(i), bins))
            .collect::<Result<Vec<f64>>>()?;
        let (best, theta) =
            mi.iter()
                .copied()
                .enumerate()
                .fold(
                    (0, f64::NEG_INFINITY),
                    |acc, (i, v)| if v > acc.1 { (i, v) } else { acc },
                );
        if theta <= 0.0 {
            scores.push(0.0);
            continue;
        }
        if n == 1 {
            scores.push(1.0);
            continue;
        }
        let deviation: f64 = mi
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != best)
            .map(|(_, v)| v * v)
            .sum();
        let delta = deviation / (theta * theta * (n - 1) as f64);
        scores.push((1.0 - delta).clamp(0.0, 1.0));
    }
    Ok(scores)
}

pub fn modularity_score(factors: &ScaledTable, repr: &ScaledTable, bins: usize) -> Result<f64> {
    Ok(mean(&modularity_score_per_variable(factors, repr, bins)?))
}
