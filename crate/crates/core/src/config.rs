use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::regression::RegressorConfig;

/// How the error terms of the metric algorithms are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Evaluation {
    /// Fit on one part of the rows, compute every error on the held-out
    /// fraction.
    Holdout(f64),
    /// Fit and evaluate on the same rows.
    InSample,
}

impl Default for Evaluation {
    fn default() -> Self {
        Evaluation::Holdout(0.5)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MetricKind {
    IndModularity,
    IndCompactness,
    IndExplicitness,
    Minimality,
    Sufficiency,
    Mig,
    Sap,
    Dci,
    ModularityScore,
    ExplicitnessScore,
    FactorVae,
}

impl MetricKind {
    pub const ALL: [MetricKind; 11] = [
        MetricKind::IndModularity,
        MetricKind::IndCompactness,
        MetricKind::IndExplicitness,
        MetricKind::Minimality,
        MetricKind::Sufficiency,
        MetricKind::Mig,
        MetricKind::Sap,
        MetricKind::Dci,
        MetricKind::ModularityScore,
        MetricKind::ExplicitnessScore,
        MetricKind::FactorVae,
    ];

    /// The five regressor-based metrics.
    pub const IND: [MetricKind; 5] = [
        MetricKind::IndModularity,
        MetricKind::IndCompactness,
        MetricKind::IndExplicitness,
        MetricKind::Minimality,
        MetricKind::Sufficiency,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MetricKind::IndModularity => "ind_modularity",
            MetricKind::IndCompactness => "ind_compactness",
            MetricKind::IndExplicitness => "ind_explicitness",
            MetricKind::Minimality => "minimality",
            MetricKind::Sufficiency => "sufficiency",
            MetricKind::Mig => "mig",
            MetricKind::Sap => "sap",
            MetricKind::Dci => "dci",
            MetricKind::ModularityScore => "modularity_score",
            MetricKind::ExplicitnessScore => "explicitness_score",
            MetricKind::FactorVae => "factor_vae",
        }
    }
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MetricKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let wanted = s.trim().to_ascii_lowercase();
        MetricKind::ALL
            .into_iter()
            .find(|m| m.name() == wanted)
            .ok_or_else(|| Error::UnknownMetric(s.to_string()))
    }
}

/// Every tunable of a metric run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub seed: u64,
    pub samples: usize,
    pub regressor: RegressorConfig,
    pub evaluation: Evaluation,
    /// Equal-width bins over [0, 1] for the histogram-based baselines.
    pub bins: usize,
    pub metrics: Vec<MetricKind>,
    /// Votes cast by the FactorVAE score.
    pub votes: usize,
    /// Samples per FactorVAE vote.
    pub batch_size: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            samples: 10_000,
            regressor: RegressorConfig::default(),
            evaluation: Evaluation::default(),
            bins: 20,
            metrics: MetricKind::IND.to_vec(),
            votes: 10_000,
            batch_size: 64,
        }
    }
}

impl RunConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> crate::Result<()> {
        self.regressor.validate()?;
        let positive = [
            ("samples", self.samples),
            ("bins", self.bins),
            ("votes", self.votes),
            ("batch_size", self.batch_size),
        ];
        for (name, v) in positive {
            if v == 0 {
                return Err(Error::InvalidInput(format!("{name} must be positive")));
            }
        }
        if self.bins < 2 {
            return Err(Error::InvalidInput("bins must be at least 2".into()));
        }
        if let Evaluation::Holdout(f) = self.evaluation {
            if !(f > 0.0 && f < 1.0) {
                return Err(Error::InvalidInput(format!(
                    "holdout fraction must lie in (0, 1), got {f}"
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn metric_names_round_trip() {
        for m in MetricKind::ALL {
            assert_eq!(m.name().parse::<MetricKind>().unwrap(), m);
        }
        assert_eq!(
            "IND_Modularity".parse::<MetricKind>().unwrap(),
            MetricKind::IndModularity
        );
        assert!("rmig".parse::<MetricKind>().is_err());
    }

    #[test]
    fn validation() {
        assert!(RunConfig::default().validate().is_ok());
        let bad = RunConfig {
            bins: 1,
            ..RunConfig::default()
        };
        assert!(bad.validate().is_err());
        let bad = RunConfig {
            evaluation: Evaluation::Holdout(1.0),
            ..RunConfig::default()
        };
        assert!(bad.validate().is_err());
    }
}
