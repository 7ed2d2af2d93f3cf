use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::config::RunConfig;
use crate::data::ScaledTable;
use crate::error::Result;

use super::engine::{Side, Target, Workspace};
use super::{normalized_score, Axis, MetricReport, PerAxis, DEGENERATE_WEIGHTS, WEIGHT_FLOOR};

/// Which error the per-pair numerator measures in the factor-to-variable
/// direction.
#[derive(Clone, Copy, PartialEq)]
enum PairReference {
    /// Distance to the prediction from all factors (modularity).
    FullPrediction,
    /// Distance to the observed variable (minimality).
    Observed,
}

struct Scorer {
    warnings: Vec<String>,
}

impl Scorer {
    fn score(&mut self, label: impl FnOnce() -> String, num: f64, den: f64) -> Result<f64> {
        let s = normalized_score(num, den)?;
        if s.degenerate {
            self.warnings.push(format!(
                "{}: noise baseline error {den:e} below guard; score set to 0",
                label()
            ));
        }
        Ok(s.value())
    }
}

fn max_of(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, f64::max)
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

fn factor_to_variable(
    metric: &'static str,
    reference: PairReference,
    factors: &ScaledTable,
    repr: &ScaledTable,
    config: &RunConfig,
) -> Result<MetricReport> {
    let ws = Workspace::new(metric, factors, repr, config)?;
    let (n, m) = (ws.n_factors(), ws.n_variables());
    let mut scorer = Scorer {
        warnings: Vec::new(),
    };
    let mut baselines = BTreeMap::new();

    // f*: y -> eps
    let f_star = ws.fit_predict("f*", Side::Factors, None, Target::Noise)?;
    let alpha_den = ws.error(&f_star, ws.truth(Target::Noise))?;
    baselines.insert("f*(y)".to_string(), alpha_den);

    // f_j: y -> z_j
    let f: Vec<Vec<f64>> = (0..m)
        .into_par_iter()
        .map(|j| ws.fit_predict("f", Side::Factors, None, Target::Variable(j)))
        .collect::<Result<_>>()?;

    // g*_i: y_i -> eps
    let g_star: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| ws.fit_predict("g*", Side::Factors, Some(i), Target::Noise))
        .collect::<Result<_>>()?;
    let mut pair_den = Vec::with_capacity(n);
    for (i, pred) in g_star.iter().enumerate() {
        let e = ws.error(pred, ws.truth(Target::Noise))?;
        baselines.insert(format!("g*({})", ws.factor_names()[i]), e);
        pair_den.push(e);
    }

    // g_ij: y_i -> z_j
    let g: Vec<Vec<f64>> = (0..n * m)
        .into_par_iter()
        .map(|k| ws.fit_predict("g", Side::Factors, Some(k / m), Target::Variable(k % m)))
        .collect::<Result<_>>()?;

    let mut pair_scores = vec![vec![0.0; m]; n];
    for i in 0..n {
        for j in 0..m {
            let reference = match reference {
                PairReference::FullPrediction => f[j].as_slice(),
                PairReference::Observed => ws.truth(Target::Variable(j)),
            };
            let num = ws.error(&g[i * m + j], reference)?;
            pair_scores[i][j] = scorer.score(
                || format!("{}/{}", ws.factor_names()[i], ws.variable_names()[j]),
                num,
                pair_den[i],
            )?;
        }
    }

    let mut alpha = Vec::with_capacity(m);
    for (j, pred) in f.iter().enumerate() {
        let num = ws.error(pred, ws.truth(Target::Variable(j)))?;
        alpha.push(scorer.score(
            || format!("weight of {}", ws.variable_names()[j]),
            num,
            alpha_den,
        )?);
    }

    let per_variable: Vec<f64> = (0..m)
        .map(|j| max_of(pair_scores.iter().map(|row| row[j])))
        .collect();

    // Sums run in name order so that permuting columns is exact.
    let mut by_name: Vec<usize> = (0..m).collect();
    by_name.sort_by(|&a, &b| ws.variable_names()[a].cmp(&ws.variable_names()[b]));
    let total: f64 = by_name.iter().map(|&j| alpha[j]).sum();
    let mut warnings = scorer.warnings;
    let (weights, aggregate) = if total < WEIGHT_FLOOR {
        warnings.push(format!(
            "{DEGENERATE_WEIGHTS}: total variable weight {total:.4} below {WEIGHT_FLOOR}; \
             the representation carries no information about the factors"
        ));
        (vec![0.0; m], 0.0)
    } else {
        let weights: Vec<f64> = alpha.iter().map(|a| a / total).collect();
        let agg = by_name
            .iter()
            .map(|&j| weights[j] * per_variable[j])
            .sum::<f64>()
            .clamp(0.0, 1.0);
        (weights, agg)
    };

    Ok(MetricReport {
        metric_name: metric.to_string(),
        factor_names: ws.factor_names().to_vec(),
        variable_names: ws.variable_names().to_vec(),
        pair_scores: Some(pair_scores),
        variable_weights: Some(weights),
        per_axis: PerAxis {
            axis: Axis::Variable,
            values: per_variable,
        },
        aggregate,
        noise_baselines: baselines,
        warnings,
    })
}

/// Modularity: how well each variable is explained by a single factor, as
/// opposed to all of them, weighted by how much factor information the
/// variable carries.
pub fn modularity(
    factors: &ScaledTable,
    repr: &ScaledTable,
    config: &RunConfig,
) -> Result<MetricReport> {
    factor_to_variable(
        "ind_modularity",
        PairReference::FullPrediction,
        factors,
        repr,
        config,
    )
}

/// Minimality: like [`modularity`], but each single-factor prediction is
/// compared with the observed variable, so nuisance content lowers the
/// score.
pub fn minimality(
    factors: &ScaledTable,
    repr: &ScaledTable,
    config: &RunConfig,
) -> Result<MetricReport> {
    factor_to_variable("minimality", PairReference::Observed, factors, repr, config)
}

/// Compactness and explicitness share the `z -> y_i` regressors, so they
/// are computed together.
pub fn compactness_explicitness(
    factors: &ScaledTable,
    repr: &ScaledTable,
    config: &RunConfig,
) -> Result<(MetricReport, MetricReport)> {
    let ws = Workspace::new("ind_compactness_explicitness", factors, repr, config)?;
    let (n, m) = (ws.n_factors(), ws.n_variables());
    let mut scorer = Scorer {
        warnings: Vec::new(),
    };
    let mut baselines = BTreeMap::new();

    let f_star = ws.fit_predict("f*", Side::Repr, None, Target::Noise)?;
    let explicit_den = ws.error(&f_star, ws.truth(Target::Noise))?;
    baselines.insert("f*(z)".to_string(), explicit_den);

    let f: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| ws.fit_predict("f", Side::Repr, None, Target::Factor(i)))
        .collect::<Result<_>>()?;

    let g_star: Vec<Vec<f64>> = (0..m)
        .into_par_iter()
        .map(|j| ws.fit_predict("g*", Side::Repr, Some(j), Target::Noise))
        .collect::<Result<_>>()?;
    let mut pair_den = Vec::with_capacity(m);
    for (j, pred) in g_star.iter().enumerate() {
        let e = ws.error(pred, ws.truth(Target::Noise))?;
        baselines.insert(format!("g*({})", ws.variable_names()[j]), e);
        pair_den.push(e);
    }

    let g: Vec<Vec<f64>> = (0..n * m)
        .into_par_iter()
        .map(|k| ws.fit_predict("g", Side::Repr, Some(k % m), Target::Factor(k / m)))
        .collect::<Result<_>>()?;

    let mut pair_scores = vec![vec![0.0; m]; n];
    let mut explicit = Vec::with_capacity(n);
    for i in 0..n {
        for j in 0..m {
            let num = ws.error(&g[i * m + j], &f[i])?;
            pair_scores[i][j] = scorer.score(
                || format!("{}/{}", ws.factor_names()[i], ws.variable_names()[j]),
                num,
                pair_den[j],
            )?;
        }
        let num = ws.error(&f[i], ws.truth(Target::Factor(i)))?;
        explicit.push(scorer.score(
            || format!("explicitness of {}", ws.factor_names()[i]),
            num,
            explicit_den,
        )?);
    }
    let per_factor: Vec<f64> = pair_scores
        .iter()
        .map(|row| max_of(row.iter().copied()))
        .collect();

    let compactness = MetricReport {
        metric_name: "ind_compactness".into(),
        factor_names: ws.factor_names().to_vec(),
        variable_names: ws.variable_names().to_vec(),
        pair_scores: Some(pair_scores),
        variable_weights: None,
        aggregate: mean(&per_factor),
        per_axis: PerAxis {
            axis: Axis::Factor,
            values: per_factor,
        },
        noise_baselines: baselines.clone(),
        warnings: scorer.warnings.clone(),
    };
    let explicitness = MetricReport {
        metric_name: "ind_explicitness".into(),
        factor_names: ws.factor_names().to_vec(),
        variable_names: ws.variable_names().to_vec(),
        pair_scores: None,
        variable_weights: None,
        aggregate: mean(&explicit),
        per_axis: PerAxis {
            axis: Axis::Factor,
            values: explicit,
        },
        noise_baselines: baselines,
        warnings: scorer.warnings,
    };
    Ok((compactness, explicitness))
}

/// Sufficiency: how well the single best variable predicts each factor.
pub fn sufficiency(
    factors: &ScaledTable,
    repr: &ScaledTable,
    config: &RunConfig,
) -> Result<MetricReport> {
    let ws = Workspace::new("sufficiency", factors, repr, config)?;
    let (n, m) = (ws.n_factors(), ws.n_variables());
    let mut scorer = Scorer {
        warnings: Vec::new(),
    };
    let mut baselines = BTreeMap::new();

    let g_star: Vec<Vec<f64>> = (0..m)
        .into_par_iter()
        .map(|j| ws.fit_predict("g*", Side::Repr, Some(j), Target::Noise))
        .collect::<Result<_>>()?;
    let mut pair_den = Vec::with_capacity(m);
    for (j, pred) in g_star.iter().enumerate() {
        let e = ws.error(pred, ws.truth(Target::Noise))?;
        baselines.insert(format!("g*({})", ws.variable_names()[j]), e);
        pair_den.push(e);
    }

    let g: Vec<Vec<f64>> = (0..n * m)
        .into_par_iter()
        .map(|k| ws.fit_predict("g", Side::Repr, Some(k % m), Target::Factor(k / m)))
        .collect::<Result<_>>()?;

    let mut pair_scores = vec![vec![0.0; m]; n];
    for i in 0..n {
        for j in 0..m {
            let num = ws.error(&g[i * m + j], ws.truth(Target::Factor(i)))?;
            pair_scores[i][j] = scorer.score(
                || format!("{}/{}", ws.factor_names()[i], ws.variable_names()[j]),
                num,
                pair_den[j],
            )?;
        }
    }
    let per_factor: Vec<f64> = pair_scores
        .iter()
        .map(|row| max_of(row.iter().copied()))
        .collect();
    Ok(MetricReport {
        metric_name: "sufficiency".into(),
        factor_names: ws.factor_names().to_vec(),
        variable_names: ws.variable_names().to_vec(),
        pair_scores: Some(pair_scores),
        variable_weights: None,
        aggregate: mean(&per_factor),
        per_axis: PerAxis {
            axis: Axis::Factor,
            values: per_factor,
        },
        noise_baselines: baselines,
        warnings: scorer.warnings,
    })
}
