//! L1-regularized least squares with intercept, by cyclic coordinate
//! descent on `(1 / 2n) |y - b - Xw|^2 + penalty * |w|_1`.

use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 20_000;
const TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone)]
pub(crate) struct Lasso {
    pub intercept: f64,
    pub coef: Vec<f64>,
}

fn soft_threshold(x: f64, t: f64) -> f64 {
    if x > t {
        x - t
    } else if x < -t {
        x + t
    } else {
        0.0
    }
}

impl Lasso {
    /// `columns` are the features, column-major.
    pub fn fit(columns: &[Vec<f64>], target: &[f64], penalty: f64) -> Result<Self> {
        let rows = target.len();
        if rows == 0 {
            return Err(Error::InvalidInput("lasso needs at least one row".into()));
        }
        if let Some(c) = columns.iter().find(|c| c.len() != rows) {
            return Err(Error::LengthMismatch {
                expected: rows,
                actual: c.len(),
            });
        }
        let n = rows as f64;
        let means: Vec<f64> = columns.iter().map(|c| c.iter().sum::<f64>() / n).collect();
        let y_mean = target.iter().sum::<f64>() / n;
        let centered: Vec<Vec<f64>> = columns
            .iter()
            .zip(&means)
            .map(|(c, mu)| c.iter().map(|v| v - mu).collect())
            .collect();
        let scale: Vec<f64> = centered
            .iter()
            .map(|c| c.iter().map(|v| v * v).sum::<f64>() / n)
            .collect();
        let mut residual: Vec<f64> = target.iter().map(|v| v - y_mean).collect();
        let mut coef = vec![0.0; columns.len()];

        for _ in 0..MAX_SWEEPS {
            let mut max_change: f64 = 0.0;
            for (j, x) in centered.iter().enumerate() {
                if scale[j] <= 0.0 {
                    continue;
                }
                let old = coef[j];
                let rho =
                    x.iter().zip(&residual).map(|(a, r)| a * r).sum::<f64>() / n + scale[j] * old;
                let new = soft_threshold(rho, penalty) / scale[j];
                let delta = new - old;
                if delta != 0.0 {
                    for (r, a) in residual.iter_mut().zip(x) {
                        *r -= delta * a;
                    }
                    coef[j] = new;
                }
                max_change = max_change.max(delta.abs());
            }
            if max_change < TOLERANCE {
                break;
            }
        }
        let intercept = y_mean - coef.iter().zip(&means).map(|(w, mu)| w * mu).sum::<f64>();
        Ok(Self { intercept, coef })
    }

    pub fn predict(&self, columns: &[Vec<f64>]) -> Vec<f64> {
        let rows = columns.first().map_or(0, Vec::len);
        (0..rows)
            .map(|r| {
                self.intercept
                    + self
                        .coef
                        .iter()
                        .zip(columns)
                        .map(|(w, c)| w * c[r])
                        .sum::<f64>()
            })
            .collect()
    }
}
