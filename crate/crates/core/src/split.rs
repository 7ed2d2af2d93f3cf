use rand::seq::SliceRandom;

use crate::config::Evaluation;
use crate::error::{Error, Result};
use crate::seed::seeded_rng;

/// Row indices used for fitting and for computing errors.
#[derive(Debug, Clone)]
pub(crate) struct RowSplit {
    pub train: Vec<usize>,
    pub test: Vec<usize>,
}

impl RowSplit {
    pub fn new(rows: usize, evaluation: Evaluation, seed: u64) -> Result<Self> {
        match evaluation {
            Evaluation::InSample => Ok(Self {
                train: (0..rows).collect(),
                test: (0..rows).collect(),
            }),
            Evaluation::Holdout(fraction) => {
                if !(fraction > 0.0 && fraction < 1.0) {
                    return Err(Error::InvalidInput(format!(
                        "holdout fraction must lie in (0, 1), got {fraction}"
                    )));
                }
                let mut order: Vec<usize> = (0..rows).collect();
                order.shuffle(&mut seeded_rng(seed, &["holdout".into()]));
                let n_test = ((rows as f64) * fraction).round() as usize;
                let n_test = n_test.clamp(1, rows.saturating_sub(1));
                let mut test = order[..n_test].to_vec();
                let mut train = order[n_test..].to_vec();
                train.sort_unstable();
                test.sort_unstable();
                Ok(Self { train, test })
            }
        }
    }
}

pub(crate) fn gather(values: &[f64], rows: &[usize]) -> Vec<f64> {
    rows.iter().map(|&r| values[r]).collect()
}
