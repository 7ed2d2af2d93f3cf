use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::data::ScaledTable;
use crate::error::Result;
use crate::split::{gather, RowSplit};

use super::lasso::Lasso;
use super::{check_pair, mean, normalized_entropy};

/// L1 penalty of the per-factor probes.
pub const DCI_LASSO_PENALTY: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dci {
    pub disentanglement: f64,
    pub completeness: f64,
    pub informativeness: f64,
    /// `importance[j][i]`: relevance of variable `j` for factor `i`.
    pub importance: Vec<Vec<f64>>,
}

/// Disentanglement, completeness and informativeness.
///
/// One L1-regularized linear probe per factor predicts it from the whole
/// (MinMax-scaled) representation on the fit rows; the absolute
/// coefficients form that factor's column of the importance matrix.
/// Informativeness is the held-out R² averaged over factors.
pub fn dci(factors: &ScaledTable, repr: &ScaledTable, config: &RunConfig) -> Result<Dci> {
    check_pair(factors, repr)?;
    config.validate()?;
    let split = RowSplit::new(factors.rows(), config.evaluation, config.seed)?;
    let (n, m) = (factors.width(), repr.width());
    let train: Vec<Vec<f64>> = (0..m)
        .map(|j| gather(repr.column(j), &split.train))
        .collect();
    let test: Vec<Vec<f64>> = (0..m)
        .map(|j| gather(repr.column(j), &split.test))
        .collect();

    let mut importance = vec![vec![0.0; n]; m];
    let mut informativeness = Vec::with_capacity(n);
    for (i, y) in factors.table.columns().iter().enumerate() {
        let y_train = gather(y, &split.train);
        let y_test = gather(y, &split.test);
        let model = Lasso::fit(&train, &y_train, DCI_LASSO_PENALTY)?;
        for (j, w) in model.coef.iter().enumerate() {
            importance[j][i] = w.abs();
        }
        let pred = model.predict(&test);
        let y_mean = mean(&y_test);
        let var: f64 = y_test.iter().map(|v| (v - y_mean).powi(2)).sum();
        let sse: f64 = pred.iter().zip(&y_test).map(|(p, v)| (p - v).powi(2)).sum();
        informativeness.push(if var > 0.0 {
            (1.0 - sse / var).clamp(0.0, 1.0)
        } else {
            0.0
        });
    }

    let total: f64 = importance.iter().flatten().sum();
    let disentanglement = if total > 0.0 {
        importance
            .iter()
            .map(|row| {
                let weight = row.iter().sum::<f64>() / total;
                let d = if n > 1 {
                    1.0 - normalized_entropy(row)
                } else {
                    1.0
                };
                weight * d
            })
            .sum::<f64>()
    } else {
        0.0
    };
    let completeness = mean(
        &(0..n)
            .map(|i| {
                let col: Vec<f64> = importance.iter().map(|row| row[i]).collect();
                if col.iter().sum::<f64>() <= 0.0 {
                    0.0
                } else if m > 1 {
                    1.0 - normalized_entropy(&col)
                } else {
                    1.0
                }
            })
            .collect::<Vec<_>>(),
    );

    Ok(Dci {
        disentanglement: disentanglement.clamp(0.0, 1.0),
        completeness: completeness.clamp(0.0, 1.0),
        informativeness: mean(&informativeness),
        importance,
    })
}
