use nalgebra::DMatrix;

use crate::config::RunConfig;
use crate::data::ScaledTable;
use crate::error::{Error, Result};
use crate::logistic::Logistic;
use crate::split::RowSplit;

use super::mi::bin_of;
use super::{check_pair, mean};

const RIDGE: f64 = 1e-3;

/// Area under the ROC curve of `scores` for `labels`, with ties counted as
/// half. `None` when either class is absent.
pub fn roc_auc(scores: &[f64], labels: &[bool]) -> Option<f64> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]));
    let positives = labels.iter().filter(|&&l| l).count();
    let negatives = labels.len() - positives;
    if positives == 0 || negatives == 0 {
        return None;
    }
    // Mann-Whitney U with average ranks over ties.
    let mut rank_sum = 0.0;
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && scores[order[end]] == scores[order[start]] {
            end += 1;
        }
        let avg_rank = (start + end + 1) as f64 / 2.0;
        rank_sum += avg_rank * order[start..end].iter().filter(|&&r| labels[r]).count() as f64;
        start = end;
    }
    let p = positives as f64;
    let u = rank_sum - p * (p + 1.0) / 2.0;
    Some(u / (p * negatives as f64))
}

/// Design matrix `[1, z_1.., z_1^2..]` over the given rows, with each
/// variable standardized by the fit-row statistics.
fn design(repr: &ScaledTable, rows: &[usize], stats: &[(f64, f64)]) -> DMatrix<f64> {
    let m = repr.width();
    DMatrix::from_fn(rows.len(), 1 + 2 * m, |r, c| {
        if c == 0 {
            return 1.0;
        }
        let j = (c - 1) % m;
        let (mu, sd) = stats[j];
        let v = (repr.column(j)[rows[r]] - mu) / sd;
        if c <= m {
            v
        } else {
            v * v
        }
    })
}

/// Recoverability of binned factors from the whole representation: for
/// each factor, one-vs-rest logistic classifiers over the factor's bins,
/// scored by mean held-out ROC AUC. The classifiers see each variable and
/// its square, so interior bins are separable.
pub fn explicitness_score(
    factors: &ScaledTable,
    repr: &ScaledTable,
    config: &RunConfig,
) -> Result<f64> {
    check_pair(factors, repr)?;
    config.validate()?;
    let split = RowSplit::new(factors.rows(), config.evaluation, config.seed)?;
    let stats: Vec<(f64, f64)> = (0..repr.width())
        .map(|j| {
            let col: Vec<f64> = split.train.iter().map(|&r| repr.column(j)[r]).collect();
            let mu = mean(&col);
            let var = col.iter().map(|v| (v - mu).powi(2)).sum::<f64>() / col.len() as f64;
            (mu, if var > 0.0 { var.sqrt() } else { 1.0 })
        })
        .collect();
    let x_train = design(repr, &split.train, &stats);
    let x_test = design(repr, &split.test, &stats);
    let bins = config.bins;

    let mut per_factor = Vec::with_capacity(factors.width());
    for i in 0..factors.width() {
        let classes: Vec<usize> = factors.column(i).iter().map(|&v| bin_of(v, bins)).collect();
        let mut aucs = Vec::new();
        for class in 0..bins {
            let train_labels: Vec<bool> =
                split.train.iter().map(|&r| classes[r] == class).collect();
            let test_labels: Vec<bool> = split.test.iter().map(|&r| classes[r] == class).collect();
            if !train_labels.iter().any(|&l| l) || train_labels.iter().all(|&l| l) {
                continue;
            }
            let model = match Logistic::fit(&x_train, &train_labels, RIDGE) {
                Ok(m) => m,
                Err(Error::Singular(_)) => continue,
                Err(e) => return Err(e),
            };
            let scores: Vec<f64> = x_test
                .row_iter()
                .map(|row| model.decision(row.iter().copied().collect::<Vec<_>>().as_slice()))
                .collect();
            if let Some(auc) = roc_auc(&scores, &test_labels) {
                aucs.push(auc);
            }
        }
        per_factor.push(if aucs.is_empty() { 0.5 } else { mean(&aucs) });
    }
    Ok(mean(&per_factor).clamp(0.0, 1.0))
}
