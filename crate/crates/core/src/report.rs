//! Result documents: running metrics over a scenario or ingested files,
//! and rendering batches of documents as JSON, CSV or Markdown.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::baseline::{self, Dci};
use crate::config::{MetricKind, RunConfig};
use crate::data::{minmax_scale, SampleTable, ScaledTable};
use crate::error::{Error, Result};
use crate::ingest;
use crate::metrics::{self, MetricReport};
use crate::scenarios::{generate, Scenario, ScenarioSpec};

pub const TOOL_NAME: &str = "disent";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Where the evaluated data came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Source {
    Scenario {
        scenario: Scenario,
        samples: usize,
    },
    Files {
        factors: String,
        representation: String,
    },
}

impl Source {
    /// Column heading used by the tabular renderers.
    pub fn label(&self) -> String {
        match self {
            Source::Scenario { scenario, .. } => scenario.name().to_string(),
            Source::Files { representation, .. } => representation.clone(),
        }
    }
}

/// Result of one metric.
///
/// `aggregate` is the headline number; for DCI it is the disentanglement
/// and the full triple lives in `dci`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricOutput {
    pub metric: MetricKind,
    pub aggregate: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<MetricReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dci: Option<Dci>,
    /// Per-factor values of scalar baselines (MIG, SAP).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub per_factor: Option<Vec<f64>>,
    /// Per-variable values of scalar baselines (Modularity Score).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub per_variable: Option<Vec<f64>>,
}

impl MetricOutput {
    fn scalar(metric: MetricKind, aggregate: f64) -> Self {
        Self {
            metric,
            aggregate,
            report: None,
            dci: None,
            per_factor: None,
            per_variable: None,
        }
    }

    /// `(row name, value)` pairs used by the CSV and Markdown renderers.
    pub fn rows(&self) -> Vec<(String, f64)> {
        match &self.dci {
            Some(d) => vec![
                ("dci_disentanglement".into(), d.disentanglement),
                ("dci_completeness".into(), d.completeness),
                ("dci_informativeness".into(), d.informativeness),
            ],
            None => vec![(self.metric.name().into(), self.aggregate)],
        }
    }

    /// One value per representation variable, if the metric has them.
    pub fn variable_values(&self) -> Option<&[f64]> {
        if let Some(r) = &self.report {
            if r.per_axis.axis == metrics::Axis::Variable {
                return Some(&r.per_axis.values);
            }
        }
        self.per_variable.as_deref()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub total_seconds: f64,
    /// Wall time per computation; compactness and explicitness share one.
    pub computations: BTreeMap<String, f64>,
}

/// Everything produced by one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub tool: String,
    pub tool_version: String,
    pub source: Source,
    pub config: RunConfig,
    pub factor_names: Vec<String>,
    pub variable_names: Vec<String>,
    pub metrics: Vec<MetricOutput>,
    /// Per-variable values keyed by metric name, aligned with
    /// `variable_names`. Filled only when requested.
    #[serde(default)]
    pub per_variable: BTreeMap<String, Vec<f64>>,
    pub timing: Timing,
    pub warnings: Vec<String>,
}

impl ResultDocument {
    pub fn metric(&self, kind: MetricKind) -> Option<&MetricOutput> {
        self.metrics.iter().find(|m| m.metric == kind)
    }

    pub fn aggregate(&self, kind: MetricKind) -> Option<f64> {
        self.metric(kind).map(|m| m.aggregate)
    }

    /// Per-variable value of `kind` for the variable called `variable`.
    pub fn variable_value(&self, kind: MetricKind, variable: &str) -> Option<f64> {
        let k = self.variable_names.iter().position(|n| n == variable)?;
        self.metric(kind)?.variable_values().map(|v| v[k])
    }

    /// Copy with every timing field zeroed, for reproducibility checks.
    pub fn without_timing(&self) -> Self {
        Self {
            timing: Timing::default(),
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Generates a scenario with `config.samples` rows and `config.seed`,
/// scales it and runs the requested metrics.
pub fn run_scenario(
    scenario: Scenario,
    config: &RunConfig,
    per_variable: bool,
) -> Result<ResultDocument> {
    config.validate()?;
    let (y, z) = generate(&ScenarioSpec::new(scenario, config.samples, config.seed))?;
    evaluate(
        &y,
        &z,
        Source::Scenario {
            scenario,
            samples: config.samples,
        },
        config,
        per_variable,
    )
}

/// Ingests two CSV files and runs the requested metrics on them.
pub fn eval_files(
    factors_csv: &Path,
    repr_csv: &Path,
    config: &RunConfig,
    per_variable: bool,
) -> Result<ResultDocument> {
    config.validate()?;
    let (y, z) = ingest::read_pair(factors_csv, repr_csv)?;
    evaluate(
        &y,
        &z,
        Source::Files {
            factors: factors_csv.display().to_string(),
            representation: repr_csv.display().to_string(),
        },
        config,
        per_variable,
    )
}

/// Scales both tables and runs `config.metrics` in canonical order.
pub fn evaluate(
    factors: &SampleTable,
    repr: &SampleTable,
    source: Source,
    config: &RunConfig,
    per_variable: bool,
) -> Result<ResultDocument> {
    config.validate()?;
    let start = Instant::now();
    let y = minmax_scale(factors)?;
    let z = minmax_scale(repr)?;
    let mut warnings: Vec<String> = y
        .warnings
        .iter()
        .map(|w| format!("factors: {w}"))
        .chain(z.warnings.iter().map(|w| format!("representation: {w}")))
        .collect();

    let mut requested = config.metrics.clone();
    requested.sort();
    requested.dedup();

    let mut timing = Timing::default();
    let mut outputs = Vec::with_capacity(requested.len());
    let mut compact_explicit: Option<(MetricReport, MetricReport)> = None;
    for kind in requested {
        let t = Instant::now();
        let output = match kind {
            MetricKind::IndCompactness | MetricKind::IndExplicitness => {
                if compact_explicit.is_none() {
                    compact_explicit = Some(metrics::compactness_explicitness(&y, &z, config)?);
                    timing.computations.insert(
                        "ind_compactness_explicitness".into(),
                        t.elapsed().as_secs_f64(),
                    );
                }
                let (c, e) = compact_explicit.as_ref().expect("computed above");
                let r = if kind == MetricKind::IndCompactness {
                    c
                } else {
                    e
                };
                outputs.push(from_report(kind, r.clone()));
                continue;
            }
            _ => compute(kind, &y, &z, config)?,
        };
        timing
            .computations
            .insert(kind.name().into(), t.elapsed().as_secs_f64());
        outputs.push(output);
    }

    for out in &outputs {
        if let Some(r) = &out.report {
            warnings.extend(r.warnings.iter().map(|w| format!("{}: {w}", out.metric)));
        }
    }
    let per_variable = if per_variable {
        outputs
            .iter()
            .filter_map(|o| {
                o.variable_values()
                    .map(|v| (o.metric.name().into(), v.to_vec()))
            })
            .collect()
    } else {
        BTreeMap::new()
    };
    timing.total_seconds = start.elapsed().as_secs_f64();

    Ok(ResultDocument {
        tool: TOOL_NAME.into(),
        tool_version: TOOL_VERSION.into(),
        source,
        config: config.clone(),
        factor_names: y.names().to_vec(),
        variable_names: z.names().to_vec(),
        metrics: outputs,
        per_variable,
        timing,
        warnings,
    })
}

fn from_report(kind: MetricKind, report: MetricReport) -> MetricOutput {
    MetricOutput {
        aggregate: report.aggregate,
        report: Some(report),
        ..MetricOutput::scalar(kind, 0.0)
    }
}

fn compute(
    kind: MetricKind,
    y: &ScaledTable,
    z: &ScaledTable,
    config: &RunConfig,
) -> Result<MetricOutput> {
    Ok(match kind {
        MetricKind::IndModularity => from_report(kind, metrics::modularity(y, z, config)?),
        MetricKind::Minimality => from_report(kind, metrics::minimality(y, z, config)?),
        MetricKind::Sufficiency => from_report(kind, metrics::sufficiency(y, z, config)?),
        MetricKind::IndCompactness | MetricKind::IndExplicitness => {
            let (c, e) = metrics::compactness_explicitness(y, z, config)?;
            from_report(
                kind,
                if kind == MetricKind::IndCompactness {
                    c
                } else {
                    e
                },
            )
        }
        MetricKind::Mig => {
            let per = baseline::mig_per_factor(y, z, config.bins)?;
            MetricOutput {
                per_factor: Some(per.clone()),
                ..MetricOutput::scalar(kind, per.iter().sum::<f64>() / per.len() as f64)
            }
        }
        MetricKind::Sap => {
            let per = baseline::sap_per_factor(y, z)?;
            MetricOutput {
                per_factor: Some(per.clone()),
                ..MetricOutput::scalar(kind, per.iter().sum::<f64>() / per.len() as f64)
            }
        }
        MetricKind::ModularityScore => {
            let per = baseline::modularity_score_per_variable(y, z, config.bins)?;
            MetricOutput {
                per_variable: Some(per),
                ..MetricOutput::scalar(kind, baseline::modularity_score(y, z, config.bins)?)
            }
        }
        MetricKind::Dci => {
            let d = baseline::dci(y, z, config)?;
            MetricOutput {
                dci: Some(d.clone()),
                ..MetricOutput::scalar(kind, d.disentanglement)
            }
        }
        MetricKind::ExplicitnessScore => {
            MetricOutput::scalar(kind, baseline::explicitness_score(y, z, config)?)
        }
        MetricKind::FactorVae => {
            MetricOutput::scalar(kind, baseline::factor_vae_score(y, z, config)?)
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "markdown" | "md" => Ok(Format::Markdown),
            _ => Err(Error::UnknownFormat(s.to_string())),
        }
    }
}

/// Renders a batch of documents.
///
/// JSON is a single object for one document and an array otherwise.
/// CSV has one `metric,scenario,aggregate` row per value. Markdown shows
/// metric rows by source columns, scenarios in benchmark order, followed
/// by one per-variable table per metric when per-variable values exist.
pub fn report(docs: &[ResultDocument], format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(match docs {
            [one] => serde_json::to_string_pretty(one)?,
            many => serde_json::to_string_pretty(many)?,
        } + "\n"),
        Format::Csv => Ok(render_csv(docs)),
        Format::Markdown => Ok(render_markdown(docs)),
    }
}

/// Parses the output of [`report`] with [`Format::Json`].
pub fn parse_json(text: &str) -> Result<Vec<ResultDocument>> {
    if text.trim_start().starts_with('[') {
        Ok(serde_json::from_str(text)?)
    } else {
        Ok(vec![serde_json::from_str(text)?])
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn render_csv(docs: &[ResultDocument]) -> String {
    let mut out = String::from("metric,scenario,aggregate\n");
    for doc in ordered(docs) {
        let label = csv_field(&doc.source.label());
        for m in &doc.metrics {
            for (name, value) in m.rows() {
                let _ = writeln!(out, "{name},{label},{value}");
            }
        }
    }
    out
}

/// Scenario documents first, in benchmark order; others keep their order.
fn ordered(docs: &[ResultDocument]) -> Vec<&ResultDocument> {
    let mut v: Vec<&ResultDocument> = docs.iter().collect();
    v.sort_by_key(|d| match &d.source {
        Source::Scenario { scenario, .. } => Scenario::ALL
            .iter()
            .position(|s| s == scenario)
            .unwrap_or(usize::MAX),
        Source::Files { .. } => usize::MAX,
    });
    v
}

fn cell(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |x| format!("{x:.4}"))
}

fn table(out: &mut String, corner: &str, columns: &[String], rows: &[(String, Vec<Option<f64>>)]) {
    let _ = writeln!(out, "| {corner} | {} |", columns.join(" | "));
    let _ = writeln!(out, "|---|{}", "---:|".repeat(columns.len()));
    for (name, values) in rows {
        let cells: Vec<String> = values.iter().map(|v| cell(*v)).collect();
        let _ = writeln!(out, "| {name} | {} |", cells.join(" | "));
    }
}

fn render_markdown(docs: &[ResultDocument]) -> String {
    let docs = ordered(docs);
    let columns: Vec<String> = docs.iter().map(|d| d.source.label()).collect();
    let mut out = String::new();

    let mut row_names: Vec<String> = Vec::new();
    for kind in MetricKind::ALL {
        for doc in &docs {
            if let Some(m) = doc.metric(kind) {
                for (name, _) in m.rows() {
                    if !row_names.contains(&name) {
                        row_names.push(name);
                    }
                }
            }
        }
    }
    let rows: Vec<(String, Vec<Option<f64>>)> = row_names
        .into_iter()
        .map(|name| {
            let values = docs
                .iter()
                .map(|d| {
                    d.metrics
                        .iter()
                        .flat_map(MetricOutput::rows)
                        .find(|(n, _)| *n == name)
                        .map(|(_, v)| v)
                })
                .collect();
            (name, values)
        })
        .collect();
    table(&mut out, "metric", &columns, &rows);

    for kind in MetricKind::ALL {
        let key = kind.name();
        if !docs.iter().any(|d| d.per_variable.contains_key(key)) {
            continue;
        }
        let mut variables: Vec<String> = Vec::new();
        for d in &docs {
            for v in &d.variable_names {
                if !variables.contains(v) {
                    variables.push(v.clone());
                }
            }
        }
        let rows: Vec<(String, Vec<Option<f64>>)> = variables
            .iter()
            .map(|var| {
                let values = docs
                    .iter()
                    .map(|d| {
                        let k = d.variable_names.iter().position(|n| n == var)?;
                        d.per_variable.get(key).map(|v| v[k])
                    })
                    .collect();
                (var.clone(), values)
            })
            .collect();
        let _ = writeln!(out, "\n{key} per variable\n");
        table(&mut out, "variable", &columns, &rows);
    }
    out
}
