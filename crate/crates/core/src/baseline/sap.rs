use crate::data::ScaledTable;
use crate::error::Result;

use super::{check_pair, mean};

/// Coefficient of determination of the least-squares line `a ~ b`
/// (the squared Pearson correlation). Zero when either column is constant.
fn r_squared(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        let (dx, dy) = (x - ma, y - mb);
        sab += dx * dy;
        saa += dx * dx;
        sbb += dy * dy;
    }
    if saa <= 0.0 || sbb <= 0.0 {
        return 0.0;
    }
    (sab * sab / (saa * sbb)).clamp(0.0, 1.0)
}

/// Per factor: gap between the two best single-variable linear
/// predictability scores.
pub fn sap_per_factor(factors: &ScaledTable, repr: &ScaledTable) -> Result<Vec<f64>> {
    check_pair(factors, repr)?;
    Ok((0..factors.width())
        .map(|i| {
            let mut scores: Vec<f64> = (0..repr.width())
                .map(|j| r_squared(factors.column(i), repr.column(j)))
                .collect();
            scores.sort_by(|a, b| b.total_cmp(a));
            scores[0] - scores.get(1).copied().unwrap_or(0.0)
        })
        .collect())
}

pub fn sap(factors: &ScaledTable, repr: &ScaledTable) -> Result<f64> {
    Ok(mean(&sap_per_factor(factors, repr)?))
}
