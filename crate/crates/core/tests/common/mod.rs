#![allow(dead_code)]

use disent_core::seed::seeded_rng;
use disent_core::{Role, SampleTable};
use rand::Rng;

pub fn uniform_columns(seed: u64, label: &str, k: usize, rows: usize) -> Vec<Vec<f64>> {
    let mut rng = seeded_rng(seed, &["test".into(), label.into()]);
    (0..k)
        .map(|_| (0..rows).map(|_| rng.gen::<f64>()).collect())
        .collect()
}

pub fn factors(seed: u64, rows: usize) -> SampleTable {
    SampleTable::with_prefix(
        Role::Factors,
        "y",
        uniform_columns(seed, "factors", 3, rows),
    )
    .unwrap()
}

/// `z_i = y_i`.
pub fn identity_repr(y: &SampleTable) -> SampleTable {
    SampleTable::with_prefix(Role::Representation, "z", y.columns().to_vec()).unwrap()
}

pub fn noise_repr(seed: u64, k: usize, rows: usize) -> SampleTable {
    SampleTable::with_prefix(
        Role::Representation,
        "z",
        uniform_columns(seed, "noise-repr", k, rows),
    )
    .unwrap()
}

/// Three invertible functions of the factors followed by `extra` noise
/// columns.
pub fn wide_repr(y: &SampleTable, seed: u64, extra: usize) -> SampleTable {
    let mut cols = vec![
        y.column(0).to_vec(),
        y.column(1).iter().map(|v| (3.0 * v).cos()).collect(),
        y.column(2).iter().map(|v| v * v).collect(),
    ];
    cols.extend(uniform_columns(seed, "wide-noise", extra, y.rows()));
    SampleTable::with_prefix(Role::Representation, "z", cols).unwrap()
}
