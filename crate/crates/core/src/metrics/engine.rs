//! Shared fitting machinery for the regressor-based metrics.

use crate::config::RunConfig;
use crate::data::{draw_noise, mae, ScaledTable};
use crate::error::{Error, Result};
use crate::regression::RandomForest;
use crate::seed::{derive_seed, Key};
use crate::split::{gather, RowSplit};

/// Which table a regressor reads its inputs from.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Side {
    Factors,
    Repr,
}

/// What a regressor predicts.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Target {
    Noise,
    Factor(usize),
    Variable(usize),
}

struct Part {
    names: Vec<String>,
    train: Vec<Vec<f64>>,
    test: Vec<Vec<f64>>,
    /// Column indices sorted by name; multi-column fits read columns in
    /// this order so that results do not depend on column order.
    canonical: Vec<usize>,
}

impl Part {
    fn new(table: &ScaledTable, split: &RowSplit) -> Self {
        let names = table.names().to_vec();
        let mut canonical: Vec<usize> = (0..names.len()).collect();
        canonical.sort_by(|&a, &b| names[a].cmp(&names[b]).then(a.cmp(&b)));
        Self {
            train: (0..table.width())
                .map(|j| gather(table.column(j), &split.train))
                .collect(),
            test: (0..table.width())
                .map(|j| gather(table.column(j), &split.test))
                .collect(),
            names,
            canonical,
        }
    }
}

/// Scaled data split into fit and evaluation rows plus the run's noise column.
pub(crate) struct Workspace<'a> {
    factors: Part,
    repr: Part,
    noise_train: Vec<f64>,
    noise_test: Vec<f64>,
    config: &'a RunConfig,
    metric: &'static str,
}

impl<'a> Workspace<'a> {
    pub fn new(
        metric: &'static str,
        factors: &ScaledTable,
        repr: &ScaledTable,
        config: &'a RunConfig,
    ) -> Result<Self> {
        config.validate()?;
        if factors.rows() != repr.rows() {
            return Err(Error::LengthMismatch {
                expected: factors.rows(),
                actual: repr.rows(),
            });
        }
        let rows = factors.rows();
        let split = RowSplit::new(rows, config.evaluation, config.seed)?;
        let needed = 2 * config.regressor.min_leaf;
        if split.train.len() < needed {
            return Err(Error::TooFewSamples {
                needed,
                actual: split.train.len(),
            });
        }
        // One noise draw per metric run, shared by every baseline fit.
        let noise = draw_noise(
            rows,
            derive_seed(config.seed, &[metric.into(), "noise".into()]),
        )?;
        Ok(Self {
            factors: Part::new(factors, &split),
            repr: Part::new(repr, &split),
            noise_train: gather(&noise.values, &split.train),
            noise_test: gather(&noise.values, &split.test),
            config,
            metric,
        })
    }

    pub fn n_factors(&self) -> usize {
        self.factors.names.len()
    }

    pub fn n_variables(&self) -> usize {
        self.repr.names.len()
    }

    pub fn factor_names(&self) -> &[String] {
        &self.factors.names
    }

    pub fn variable_names(&self) -> &[String] {
        &self.repr.names
    }

    fn part(&self, side: Side) -> &Part {
        match side {
            Side::Factors => &self.factors,
            Side::Repr => &self.repr,
        }
    }

    fn target_name(&self, target: Target) -> &str {
        match target {
            Target::Noise => "eps",
            Target::Factor(i) => &self.factors.names[i],
            Target::Variable(j) => &self.repr.names[j],
        }
    }

    /// Held-out values of a target.
    pub fn truth(&self, target: Target) -> &[f64] {
        match target {
            Target::Noise => &self.noise_test,
            Target::Factor(i) => &self.factors.test[i],
            Target::Variable(j) => &self.repr.test[j],
        }
    }

    fn train_target(&self, target: Target) -> &[f64] {
        match target {
            Target::Noise => &self.noise_train,
            Target::Factor(i) => &self.factors.train[i],
            Target::Variable(j) => &self.repr.train[j],
        }
    }

    /// Fits `inputs -> target` on the fit rows and predicts the evaluation
    /// rows. `inputs = None` means every column of `side`.
    ///
    /// The regressor seed is keyed by metric, role and column names, never
    /// by position.
    pub fn fit_predict(
        &self,
        role: &str,
        side: Side,
        inputs: Option<usize>,
        target: Target,
    ) -> Result<Vec<f64>> {
        let part = self.part(side);
        let columns: Vec<usize> = match inputs {
            Some(c) => vec![c],
            None => part.canonical.clone(),
        };
        let input_label = match inputs {
            Some(c) => part.names[c].as_str(),
            None => "*",
        };
        let seed = derive_seed(
            self.config.seed,
            &[
                Key::Str(self.metric),
                Key::Str(role),
                Key::Str(input_label),
                Key::Str(self.target_name(target)),
            ],
        );
        let train: Vec<&[f64]> = columns.iter().map(|&c| part.train[c].as_slice()).collect();
        let test: Vec<&[f64]> = columns.iter().map(|&c| part.test[c].as_slice()).collect();
        let model = RandomForest::fit(
            &train,
            self.train_target(target),
            &self.config.regressor.with_seed(seed),
        )?;
        model.predict(&test)
    }

    pub fn error(&self, predictions: &[f64], reference: &[f64]) -> Result<f64> {
        mae(predictions, reference)
    }
}
