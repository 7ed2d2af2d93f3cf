//! Linear probes on single columns: explain a representation component
//! from a factor, or classify factor labels from one component.
//!
//! Both probes fit on the run's fit rows and report held-out quality.

use nalgebra::DMatrix;

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::logistic::Logistic;
use crate::split::{gather, RowSplit};

const CLASSIFIER_RIDGE: f64 = 1e-3;

fn check_lengths(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::LengthMismatch {
            expected: a,
            actual: b,
        });
    }
    if a < 4 {
        return Err(Error::TooFewSamples {
            needed: 4,
            actual: a,
        });
    }
    Ok(())
}

fn mean_and_var(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    (mean, var)
}

/// Ordinary least squares `repr ~ a + b * factor`; returns the held-out
/// mean squared error.
pub fn linear_regression_probe(
    factor_column: &[f64],
    repr_column: &[f64],
    config: &RunConfig,
) -> Result<f64> {
    check_lengths(factor_column.len(), repr_column.len())?;
    let split = RowSplit::new(factor_column.len(), config.evaluation, config.seed)?;
    let x = gather(factor_column, &split.train);
    let y = gather(repr_column, &split.train);
    let (mx, vx) = mean_and_var(&x);
    let (my, _) = mean_and_var(&y);
    if vx <= 1e-300 || vx <= 1e-24 * mx.abs().max(1.0).powi(2) {
        return Err(Error::Singular(
            "factor column is constant on the fit rows".into(),
        ));
    }
    let cov = x
        .iter()
        .zip(&y)
        .map(|(a, b)| (a - mx) * (b - my))
        .sum::<f64>()
        / x.len() as f64;
    let slope = cov / vx;
    let intercept = my - slope * mx;
    let sse: f64 = split
        .test
        .iter()
        .map(|&r| {
            let e = repr_column[r] - (intercept + slope * factor_column[r]);
            e * e
        })
        .sum();
    Ok(sse / split.test.len() as f64)
}

/// One-dimensional logistic classifier, one-vs-rest over the classes
/// present; returns held-out accuracy.
pub fn linear_classifier_probe(
    repr_column: &[f64],
    factor_labels: &[i64],
    config: &RunConfig,
) -> Result<f64> {
    check_lengths(factor_labels.len(), repr_column.len())?;
    let mut classes: Vec<i64> = factor_labels.to_vec();
    classes.sort_unstable();
    classes.dedup();
    if classes.len() < 2 {
        return Err(Error::InvalidInput(
            "classifier probe needs at least two classes".into(),
        ));
    }
    if repr_column.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput(
            "representation column has non-finite values".into(),
        ));
    }
    let split = RowSplit::new(repr_column.len(), config.evaluation, config.seed)?;
    let x = gather(repr_column, &split.train);
    let (mx, vx) = mean_and_var(&x);
    if vx <= 0.0 {
        return Err(Error::Singular(
            "representation column is constant on the fit rows".into(),
        ));
    }
    let sd = vx.sqrt();
    let standardized = |v: f64| (v - mx) / sd;
    let design = DMatrix::from_fn(split.train.len(), 2, |r, c| {
        if c == 0 {
            1.0
        } else {
            standardized(repr_column[split.train[r]])
        }
    });

    // Binary problems need a single model; its "rest" class is classes[0].
    let positives: &[i64] = if classes.len() == 2 {
        &classes[1..]
    } else {
        &classes
    };
    let models = positives
        .iter()
        .map(|&class| {
            let labels: Vec<bool> = split
                .train
                .iter()
                .map(|&r| factor_labels[r] == class)
                .collect();
            if labels.iter().all(|&l| !l) {
                // absent from the fit rows: never predicted
                return Ok(None);
            }
            Logistic::fit(&design, &labels, CLASSIFIER_RIDGE).map(Some)
        })
        .collect::<Result<Vec<_>>>()?;

    let correct = split
        .test
        .iter()
        .filter(|&&r| {
            let row = [1.0, standardized(repr_column[r])];
            let predicted = if classes.len() == 2 {
                match &models[0] {
                    Some(m) if m.decision(&row) > 0.0 => classes[1],
                    _ => classes[0],
                }
            } else {
                let mut best = (f64::NEG_INFINITY, classes[0]);
                for (model, &class) in models.iter().zip(&classes) {
                    if let Some(m) = model {
                        let d = m.decision(&row);
                        if d > best.0 {
                            best = (d, class);
                        }
                    }
                }
                best.1
            };
            predicted == factor_labels[r]
        })
        .count();
    Ok(correct as f64 / split.test.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::draw_noise;

    fn cfg() -> RunConfig {
        RunConfig::with_seed(3)
    }

    #[test]
    fn exact_affine_relation_has_no_error() {
        let f = draw_noise(1000, 1).unwrap().values;
        let z: Vec<f64> = f.iter().map(|v| 2.0 * v + 1.0).collect();
        assert!(linear_regression_probe(&f, &z, &cfg()).unwrap() <= 1e-12);
    }

    #[test]
    fn noise_error_matches_its_variance() {
        let f = draw_noise(10_000, 2).unwrap().values;
        let z = draw_noise(10_000, 3).unwrap().values;
        let mse = linear_regression_probe(&f, &z, &cfg()).unwrap();
        let (_, var) = mean_and_var(&z);
        assert!((mse / var - 1.0).abs() <= 0.1, "{mse} vs {var}");
    }

    #[test]
    fn constant_factor_is_singular() {
        let z = draw_noise(100, 3).unwrap().values;
        assert!(matches!(
            linear_regression_probe(&vec![1.0; 100], &z, &cfg()),
            Err(Error::Singular(_))
        ));
    }

    #[test]
    fn separated_classes_are_recovered() {
        let u = draw_noise(4000, 4).unwrap().values;
        let jitter = draw_noise(4000, 5).unwrap().values;
        let labels: Vec<i64> = u.iter().map(|&v| i64::from(v > 0.5)).collect();
        // +-2 with uniform jitter of standard deviation 0.1
        let z: Vec<f64> = labels
            .iter()
            .zip(&jitter)
            .map(|(&l, &e)| if l == 1 { 2.0 } else { -2.0 } + (e - 0.5) * 0.1 * 12f64.sqrt())
            .collect();
        assert!(linear_classifier_probe(&z, &labels, &cfg()).unwrap() >= 0.999);
    }

    #[test]
    fn unrelated_labels_are_at_chance() {
        let u = draw_noise(10_000, 6).unwrap().values;
        let z = draw_noise(10_000, 7).unwrap().values;
        let labels: Vec<i64> = u.iter().map(|&v| i64::from(v > 0.5)).collect();
        let acc = linear_classifier_probe(&z, &labels, &cfg()).unwrap();
        assert!((acc - 0.5).abs() <= 0.03, "{acc}");
    }

    #[test]
    fn single_class_is_rejected() {
        let z = draw_noise(100, 7).unwrap().values;
        assert!(linear_classifier_probe(&z, &vec![3; 100], &cfg()).is_err());
    }

    #[test]
    fn multiclass_ordered_components() {
        // three well separated ordered clusters
        let u = draw_noise(3000, 8).unwrap().values;
        let labels: Vec<i64> = u.iter().map(|&v| (v * 3.0).floor() as i64).collect();
        let z: Vec<f64> = labels
            .iter()
            .map(|&l| [-5.0, 0.0, 5.0][l as usize])
            .collect();
        let acc = linear_classifier_probe(&z, &labels, &cfg()).unwrap();
        assert!(acc > 0.6, "{acc}");
    }

    #[test]
    fn affine_rescaling_leaves_probes_unchanged() {
        let f = draw_noise(2000, 9).unwrap().values;
        let e = draw_noise(2000, 10).unwrap().values;
        let z: Vec<f64> = f.iter().zip(&e).map(|(a, b)| a + 0.3 * b).collect();
        let labels: Vec<i64> = f.iter().map(|&v| i64::from(v > 0.4)).collect();
        let rescaled: Vec<f64> = z.iter().map(|v| 3.0 * v - 7.0).collect();

        let a = linear_classifier_probe(&z, &labels, &cfg()).unwrap();
        let b = linear_classifier_probe(&rescaled, &labels, &cfg()).unwrap();
        assert!((a - b).abs() <= 1.0 / 1000.0, "{a} vs {b}");

        let m1 = linear_regression_probe(&f, &z, &cfg()).unwrap();
        let m2 = linear_regression_probe(&f, &rescaled, &cfg()).unwrap();
        assert!((m2 / m1 - 9.0).abs() < 1e-6);
    }
}
