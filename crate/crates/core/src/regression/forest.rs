use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::seed::{seeded_rng, Key};

use super::tree::{GrowParams, Grower, Tree};
use super::{check_features, Regressor, RegressorConfig};

/// Bagged CART regression trees; predictions are the mean tree output.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomForest {
    trees: Vec<Tree>,
    feature_count: usize,
    importances: Vec<f64>,
}

fn tree_seed(seed: u64, tree: usize) -> u64 {
    crate::seed::derive_seed(seed, &[Key::Str("tree"), Key::Int(tree as u64)])
}

/// Bootstrap multiplicities of tree `tree` for a forest seeded with `seed`.
pub fn bootstrap_counts(seed: u64, tree: usize, rows: usize) -> Vec<u32> {
    let mut rng = seeded_rng(tree_seed(seed, tree), &[Key::Str("bootstrap")]);
    let mut counts = vec![0u32; rows];
    for _ in 0..rows {
        counts[rng.gen_range(0..rows)] += 1;
    }
    counts
}

impl RandomForest {
    pub fn fit(features: &[&[f64]], targets: &[f64], config: &RegressorConfig) -> Result<Self> {
        config.validate()?;
        let rows = check_features(features)?;
        if targets.len() != rows {
            return Err(Error::LengthMismatch {
                expected: rows,
                actual: targets.len(),
            });
        }
        if let Some(row) = targets.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                column: "target".into(),
                row,
            });
        }
        let needed = 2 * config.min_leaf;
        if rows < needed {
            return Err(Error::TooFewSamples {
                needed,
                actual: rows,
            });
        }
        if rows > u32::MAX as usize {
            return Err(Error::InvalidInput("too many rows".into()));
        }

        let presorted: Vec<Vec<u32>> = features
            .iter()
            .map(|col| {
                let mut idx: Vec<u32> = (0..rows as u32).collect();
                idx.sort_by(|&a, &b| col[a as usize].total_cmp(&col[b as usize]).then(a.cmp(&b)));
                idx
            })
            .collect();

        let k = features.len();
        let grown: Vec<(Tree, Vec<f64>)> = (0..config.tree_count)
            .into_par_iter()
            .map(|t| {
                let weights = bootstrap_counts(config.seed, t, rows);
                let sorted = presorted
                    .iter()
                    .map(|list| {
                        list.iter()
                            .copied()
                            .filter(|&r| weights[r as usize] > 0)
                            .collect()
                    })
                    .collect();
                let grower = Grower {
                    features,
                    targets,
                    weights: &weights,
                    params: GrowParams {
                        max_depth: config.max_depth,
                        min_leaf: config.min_leaf as f64,
                        subsample: config.feature_subsample,
                        seed: tree_seed(config.seed, t),
                    },
                };
                let mut importance = vec![0.0; k];
                let tree = grower.grow(sorted, &mut importance);
                (tree, importance)
            })
            .collect();

        let mut importances = vec![0.0; k];
        let mut trees = Vec::with_capacity(grown.len());
        for (tree, imp) in grown {
            let total: f64 = imp.iter().sum();
            if total > 0.0 {
                for (acc, v) in importances.iter_mut().zip(&imp) {
                    *acc += v / total;
                }
            }
            trees.push(tree);
        }
        let total: f64 = importances.iter().sum();
        if total > 0.0 {
            importances.iter_mut().for_each(|v| *v /= total);
        }
        Ok(Self {
            trees,
            feature_count: k,
            importances,
        })
    }

    pub fn predict(&self, features: &[&[f64]]) -> Result<Vec<f64>> {
        if features.len() != self.feature_count {
            return Err(Error::DimensionMismatch {
                expected: self.feature_count,
                actual: features.len(),
            });
        }
        let rows = check_features(features)?;
        let scale = 1.0 / self.trees.len() as f64;
        let out = (0..rows)
            .into_par_iter()
            .with_min_len(256)
            .map(|r| {
                let sum: f64 = self.trees.iter().map(|t| t.predict_row(features, r)).sum();
                sum * scale
            })
            .collect();
        Ok(out)
    }

    /// Mean normalized impurity decrease per feature; sums to 1 unless no
    /// tree ever split.
    pub fn feature_importances(&self) -> &[f64] {
        &self.importances
    }

    pub fn trees(&self) -> &[Tree] {
        &self.trees
    }

    pub fn feature_count(&self) -> usize {
        self.feature_count
    }
}

impl Regressor for RandomForest {
    type Config = RegressorConfig;

    fn fit(features: &[&[f64]], targets: &[f64], config: &RegressorConfig) -> Result<Self> {
        RandomForest::fit(features, targets, config)
    }

    fn predict(&self, features: &[&[f64]]) -> Result<Vec<f64>> {
        RandomForest::predict(self, features)
    }

    fn feature_count(&self) -> usize {
        self.feature_count
    }
}
