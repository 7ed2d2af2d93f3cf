//! Numeric tables, MinMax scaling, the error function and noise baselines.

use std::collections::HashSet;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seed::seeded_rng;

/// What a table holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Factors,
    Representation,
    Noise,
}

/// A D×k table of finite reals with named columns, stored column-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleTable {
    names: Vec<String>,
    columns: Vec<Vec<f64>>,
    role: Role,
}

impl SampleTable {
    pub fn new(role: Role, names: Vec<String>, columns: Vec<Vec<f64>>) -> Result<Self> {
        if names.len() != columns.len() {
            return Err(Error::LengthMismatch {
                expected: names.len(),
                actual: columns.len(),
            });
        }
        if columns.is_empty() {
            return Err(Error::InvalidInput(
                "table needs at least one column".into(),
            ));
        }
        let rows = columns[0].len();
        if rows < 2 {
            return Err(Error::TooFewSamples {
                needed: 2,
                actual: rows,
            });
        }
        let mut seen = HashSet::new();
        for (name, col) in names.iter().zip(&columns) {
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidInput(format!(
                    "duplicate column name `{name}`"
                )));
            }
            if col.len() != rows {
                return Err(Error::LengthMismatch {
                    expected: rows,
                    actual: col.len(),
                });
            }
            if let Some(row) = col.iter().position(|v| !v.is_finite()) {
                return Err(Error::NonFinite {
                    column: name.clone(),
                    row,
                });
            }
        }
        Ok(Self {
            names,
            columns,
            role,
        })
    }

    /// Builds a table with names `{prefix}1..{prefix}k`.
    pub fn with_prefix(role: Role, prefix: &str, columns: Vec<Vec<f64>>) -> Result<Self> {
        let names = (1..=columns.len())
            .map(|i| format!("{prefix}{i}"))
            .collect();
        Self::new(role, names, columns)
    }

    pub fn rows(&self) -> usize {
        self.columns[0].len()
    }

    pub fn width(&self) -> usize {
        self.columns.len()
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn column(&self, j: usize) -> &[f64] {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[Vec<f64>] {
        &self.columns
    }

    pub fn column_by_name(&self, name: &str) -> Option<&[f64]> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|j| self.columns[j].as_slice())
    }

    /// Returns a table with the columns reordered by `order`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        Self::new(
            self.role,
            order.iter().map(|&j| self.names[j].clone()).collect(),
            order.iter().map(|&j| self.columns[j].clone()).collect(),
        )
    }

    /// Returns a copy with one column appended.
    pub fn with_column(&self, name: &str, values: Vec<f64>) -> Result<Self> {
        let mut names = self.names.clone();
        let mut columns = self.columns.clone();
        names.push(name.to_string());
        columns.push(values);
        Self::new(self.role, names, columns)
    }
}

/// A table whose columns were mapped onto [0, 1].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScaledTable {
    pub table: SampleTable,
    /// Per-column `(min, max)` of the source table.
    pub scaler_params: Vec<(f64, f64)>,
    pub warnings: Vec<String>,
}

impl ScaledTable {
    pub fn rows(&self) -> usize {
        self.table.rows()
    }

    pub fn width(&self) -> usize {
        self.table.width()
    }

    pub fn names(&self) -> &[String] {
        self.table.names()
    }

    pub fn column(&self, j: usize) -> &[f64] {
        self.table.column(j)
    }
}

/// Per-column MinMax scaling. Constant columns become 0.5 with a warning.
pub fn minmax_scale(table: &SampleTable) -> Result<ScaledTable> {
    let mut columns = Vec::with_capacity(table.width());
    let mut params = Vec::with_capacity(table.width());
    let mut warnings = Vec::new();
    for (name, col) in table.names().iter().zip(table.columns()) {
        if let Some(row) = col.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                column: name.clone(),
                row,
            });
        }
        let min = col.iter().copied().fold(f64::INFINITY, f64::min);
        let max = col.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        params.push((min, max));
        if max > min {
            let span = max - min;
            columns.push(
                col.iter()
                    .map(|&x| ((x - min) / span).clamp(0.0, 1.0))
                    .collect(),
            );
        } else {
            warnings.push(format!(
                "column `{name}` is constant ({min}); mapped to 0.5"
            ));
            columns.push(vec![0.5; col.len()]);
        }
    }
    Ok(ScaledTable {
        table: SampleTable::new(table.role(), table.names().to_vec(), columns)?,
        scaler_params: params,
        warnings,
    })
}

/// Mean absolute error, the `E` of every normalized score.
pub fn mae(predictions: &[f64], targets: &[f64]) -> Result<f64> {
    if predictions.len() != targets.len() {
        return Err(Error::LengthMismatch {
            expected: targets.len(),
            actual: predictions.len(),
        });
    }
    if predictions.is_empty() {
        return Err(Error::InvalidInput("mae of empty sequences".into()));
    }
    if predictions.iter().chain(targets).any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput(
            "mae input contains non-finite values".into(),
        ));
    }
    let total: f64 = predictions
        .iter()
        .zip(targets)
        .map(|(p, t)| (p - t).abs())
        .sum();
    Ok(total / predictions.len() as f64)
}

/// An i.i.d. U(0,1) column, reproducible from its seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoiseColumn {
    pub values: Vec<f64>,
    pub seed: u64,
}

pub fn draw_noise(len: usize, seed: u64) -> Result<NoiseColumn> {
    if len < 2 {
        return Err(Error::TooFewSamples {
            needed: 2,
            actual: len,
        });
    }
    let mut rng = seeded_rng(seed, &["uniform-noise".into()]);
    let values = (0..len).map(|_| rng.gen::<f64>()).collect();
    Ok(NoiseColumn { values, seed })
}
