//! Regressor-based disentanglement metrics that stay meaningful when the
//! factors of variation are statistically dependent.
//!
//! The crate is organised bottom-up:
//!
//! - [`data`]: sample tables, MinMax scaling, the error function and noise columns.
//! - [`regression`]: a random-forest regressor behind the [`regression::Regressor`] contract.
//! - [`metrics`]: modularity, compactness, explicitness, minimality and sufficiency.
//! - [`baseline`]: MIG, SAP, DCI, Modularity Score, Explicitness Score and the FactorVAE score.
//! - [`scenarios`]: the synthetic cosine benchmark generators.
//! - [`probes`]: linear regression / classification probes on single columns.
//! - [`ingest`]: CSV reading.
//! - [`report`]: result documents and their rendering.

pub mod baseline;
pub mod config;
pub mod data;
pub mod error;
pub mod ingest;
mod logistic;
pub mod metrics;
pub mod probes;
pub mod regression;
pub mod report;
pub mod scenarios;
pub mod seed;
mod split;

pub use config::{Evaluation, MetricKind, RunConfig};
pub use data::{draw_noise, mae, minmax_scale, NoiseColumn, Role, SampleTable, ScaledTable};
pub use error::{Error, Result};
pub use metrics::{
    compactness_explicitness, minimality, modularity, normalized_score, sufficiency, ClampedScore,
    MetricReport,
};
pub use regression::{FeatureSubsample, RandomForest, Regressor, RegressorConfig};
pub use report::{eval_files, report, run_scenario, Format, ResultDocument};
pub use scenarios::{generate, list_scenarios, Scenario, ScenarioSpec};
