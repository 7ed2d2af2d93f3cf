use rand::Rng;

use crate::config::RunConfig;
use crate::data::ScaledTable;
use crate::error::{Error, Result};
use crate::seed::seeded_rng;

use super::check_pair;

const TRAIN_SHARE: f64 = 0.8;

/// Majority-vote FactorVAE score on a finite sample.
///
/// A vote fixes factor `k` by taking `batch_size` samples adjacent in the
/// ordering of `y_k`, divides each variable's batch variance by its global
/// variance and records the index of the smallest. A majority-vote
/// classifier from that index to `k` is trained on the first 80 % of the
/// votes; its accuracy on the rest is the score. Variables with zero
/// global variance are ignored.
pub fn factor_vae_score(
    factors: &ScaledTable,
    repr: &ScaledTable,
    config: &RunConfig,
) -> Result<f64> {
    check_pair(factors, repr)?;
    config.validate()?;
    let rows = factors.rows();
    let batch = config.batch_size;
    if batch < 2 || batch > rows {
        return Err(Error::InvalidInput(format!(
            "batch size {batch} must lie in [2, {rows}]"
        )));
    }
    let (n, m) = (factors.width(), repr.width());

    let global_var: Vec<f64> = (0..m)
        .map(|j| variance(repr.column(j).iter().copied()))
        .collect();
    let active: Vec<usize> = (0..m).filter(|&j| global_var[j] > 1e-24).collect();
    if active.is_empty() {
        return Ok(0.0);
    }

    let orders: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            let col = factors.column(i);
            let mut idx: Vec<usize> = (0..rows).collect();
            idx.sort_by(|&a, &b| col[a].total_cmp(&col[b]).then(a.cmp(&b)));
            idx
        })
        .collect();

    let mut rng = seeded_rng(config.seed, &["factor_vae".into()]);
    let votes: Vec<(usize, usize)> = (0..config.votes)
        .map(|_| {
            let k = rng.gen_range(0..n);
            let start = rng.gen_range(0..=rows - batch);
            let window = &orders[k][start..start + batch];
            let mut best = (f64::INFINITY, active[0]);
            for &j in &active {
                let col = repr.column(j);
                let v = variance(window.iter().map(|&r| col[r])) / global_var[j];
                if v < best.0 {
                    best = (v, j);
                }
            }
            (best.1, k)
        })
        .collect();

    let n_train = ((votes.len() as f64) * TRAIN_SHARE).round() as usize;
    let n_train = n_train.clamp(1, votes.len().saturating_sub(1).max(1));
    let mut counts = vec![vec![0usize; n]; m];
    for &(j, k) in &votes[..n_train] {
        counts[j][k] += 1;
    }
    let predict: Vec<Option<usize>> = counts
        .iter()
        .map(|row| {
            let (k, &c) =
                row.iter()
                    .enumerate()
                    .fold((0, &0), |acc, (k, c)| if c > acc.1 { (k, c) } else { acc });
            (c > 0).then_some(k)
        })
        .collect();
    let eval = if votes.len() > n_train {
        &votes[n_train..]
    } else {
        &votes[..]
    };
    let correct = eval.iter().filter(|&&(j, k)| predict[j] == Some(k)).count();
    Ok(correct as f64 / eval.len() as f64)
}

fn variance(values: impl Iterator<Item = f64> + Clone) -> f64 {
    let (mut n, mut sum) = (0usize, 0.0);
    for v in values.clone() {
        n += 1;
        sum += v;
    }
    let mean = sum / n as f64;
    values.map(|v| (v - mean).powi(2)).sum::<f64>() / n as f64
}
