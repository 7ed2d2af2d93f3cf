//! `disent`: disentanglement metrics on synthetic scenarios or CSV data.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use disent_core::ingest::read_pair;
use disent_core::probes::{linear_classifier_probe, linear_regression_probe};
use disent_core::{
    eval_files, list_scenarios, report, run_scenario, Evaluation, Format, MetricKind,
    ResultDocument, RunConfig, Scenario,
};

#[derive(Parser)]
#[command(
    name = "disent",
    version,
    about = "Disentanglement metrics for dependent factors"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate benchmark scenarios and score them.
    Run(RunArgs),
    /// Score a representation read from CSV against factors read from CSV.
    Eval(EvalArgs),
    /// Linear probes between paired factor and representation columns.
    Probe(ProbeArgs),
    /// Print the built-in scenarios.
    ListScenarios,
}

#[derive(Args)]
struct Common {
    /// Base seed; every random stream is derived from it.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Held-out fraction used for every error term.
    #[arg(long, value_name = "FRACTION", conflicts_with = "in_sample")]
    holdout: Option<f64>,
    /// Fit and evaluate on the same rows.
    #[arg(long)]
    in_sample: bool,
    /// Output file; standard output when absent.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// json, csv or markdown.
    #[arg(long, default_value = "json")]
    format: String,
}

impl Common {
    fn evaluation(&self) -> Evaluation {
        match (self.in_sample, self.holdout) {
            (true, _) => Evaluation::InSample,
            (false, Some(f)) => Evaluation::Holdout(f),
            (false, None) => Evaluation::default(),
        }
    }
}

#[derive(Args)]
struct MetricArgs {
    /// Comma-separated metric names, or `ind` (default), `baselines`, `all`.
    #[arg(long, default_value = "ind")]
    metrics: String,
    /// Include per-variable tables.
    #[arg(long)]
    per_variable: bool,
    /// Trees per random forest.
    #[arg(long)]
    trees: Option<usize>,
    /// Maximum tree depth.
    #[arg(long)]
    max_depth: Option<usize>,
    /// Histogram bins of the information-based baselines.
    #[arg(long)]
    bins: Option<usize>,
}

#[derive(Args)]
struct RunArgs {
    /// Comma-separated scenario names, or `main`, `nuisance`, `all`.
    #[arg(long, default_value = "main")]
    scenario: String,
    /// Samples per scenario.
    #[arg(long)]
    samples: Option<usize>,
    #[command(flatten)]
    metrics: MetricArgs,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct EvalArgs {
    /// CSV of factors of variation (header row).
    #[arg(long)]
    factors: PathBuf,
    /// CSV of representation variables (header row).
    #[arg(long, visible_alias = "repr")]
    representation: PathBuf,
    #[command(flatten)]
    metrics: MetricArgs,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProbeKind {
    /// Least squares from the factor to the component; held-out MSE.
    Regression,
    /// Logistic classifier from the component to integer labels; held-out accuracy.
    Classifier,
}

#[derive(Args)]
struct ProbeArgs {
    #[arg(long)]
    factors: PathBuf,
    #[arg(long, visible_alias = "repr")]
    representation: PathBuf,
    #[arg(long, value_enum, default_value = "regression")]
    kind: ProbeKind,
    /// Comma-separated `factor:variable` pairs; defaults to pairing
    /// columns by position.
    #[arg(long)]
    pairs: Option<String>,
    #[command(flatten)]
    common: Common,
}

fn parse_metrics(spec: &str) -> Result<Vec<MetricKind>> {
    let mut out = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match part.to_ascii_lowercase().as_str() {
            "all" => out.extend(MetricKind::ALL),
            "ind" => out.extend(MetricKind::IND),
            "baselines" => out.extend(&MetricKind::ALL[MetricKind::IND.len()..]),
            _ => out.push(part.parse()?),
        }
    }
    if out.is_empty() {
        bail!("no metrics requested");
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn parse_scenarios(spec: &str) -> Result<Vec<Scenario>> {
    let mut out = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match part.to_ascii_lowercase().as_str() {
            "all" => out.extend(Scenario::ALL),
            "main" => out.extend(Scenario::MAIN),
            "nuisance" => out.extend(Scenario::NUISANCE),
            _ => out.push(part.parse()?),
        }
    }
    if out.is_empty() {
        bail!("no scenarios requested");
    }
    let mut seen = Vec::new();
    out.retain(|s| {
        let fresh = !seen.contains(s);
        seen.push(*s);
        fresh
    });
    Ok(out)
}

fn build_config(
    common: &Common,
    metrics: &MetricArgs,
    samples: Option<usize>,
) -> Result<RunConfig> {
    let mut cfg = RunConfig::with_seed(common.seed);
    cfg.evaluation = common.evaluation();
    cfg.metrics = parse_metrics(&metrics.metrics)?;
    if let Some(s) = samples {
        cfg.samples = s;
    }
    if let Some(t) = metrics.trees {
        cfg.regressor.tree_count = t;
    }
    if let Some(d) = metrics.max_depth {
        cfg.regressor.max_depth = d;
    }
    if let Some(b) = metrics.bins {
        cfg.bins = b;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn emit(common: &Common, text: &str) -> Result<()> {
    match &common.out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_documents(common: &Common, docs: &[ResultDocument]) -> Result<()> {
    let format: Format = common.format.parse()?;
    for doc in docs {
        for w in &doc.warnings {
            eprintln!("warning: {}: {w}", doc.source.label());
        }
    }
    emit(common, &report(docs, format)?)
}

fn run(args: &RunArgs) -> Result<()> {
    let cfg = build_config(&args.common, &args.metrics, args.samples)?;
    let scenarios = parse_scenarios(&args.scenario)?;
    args.common.format.parse::<Format>()?;
    let mut docs = Vec::with_capacity(scenarios.len());
    for sc in scenarios {
        eprintln!("running {sc}");
        docs.push(run_scenario(sc, &cfg, args.metrics.per_variable)?);
    }
    emit_documents(&args.common, &docs)
}

fn eval(args: &EvalArgs) -> Result<()> {
    let cfg = build_config(&args.common, &args.metrics, None)?;
    args.common.format.parse::<Format>()?;
    let doc = eval_files(
        &args.factors,
        &args.representation,
        &cfg,
        args.metrics.per_variable,
    )?;
    emit_documents(&args.common, &[doc])
}

#[derive(serde::Serialize)]
struct ProbeRow {
    factor: String,
    variable: String,
    kind: &'static str,
    value: f64,
}

fn integer_labels(values: &[f64], name: &str, file: &Path) -> Result<Vec<i64>> {
    values
        .iter()
        .enumerate()
        .map(|(row, &v)| {
            if v.fract() == 0.0 && v.abs() < 9e15 {
                Ok(v as i64)
            } else {
                bail!(
                    "{}:{}: classifier labels must be integers, column `{name}` has {v}",
                    file.display(),
                    row + 2
                )
            }
        })
        .collect()
}

fn probe(args: &ProbeArgs) -> Result<()> {
    let format: Format = args.common.format.parse()?;
    let mut cfg = RunConfig::with_seed(args.common.seed);
    cfg.evaluation = args.common.evaluation();
    cfg.validate()?;
    let (y, z) = read_pair(&args.factors, &args.representation)?;
    let pairs: Vec<(String, String)> = match &args.pairs {
        Some(spec) => spec
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|p| match p.split_once(':') {
                Some((a, b)) => Ok((a.trim().to_string(), b.trim().to_string())),
                None => bail!("pair `{p}` is not of the form factor:variable"),
            })
            .collect::<Result<_>>()?,
        None => y
            .names()
            .iter()
            .zip(z.names())
            .map(|(a, b)| (a.clone(), b.clone()))
            .collect(),
    };
    let mut rows = Vec::with_capacity(pairs.len());
    for (f, v) in pairs {
        let factor = y
            .column_by_name(&f)
            .with_context(|| format!("no factor column `{f}`"))?;
        let variable = z
            .column_by_name(&v)
            .with_context(|| format!("no representation column `{v}`"))?;
        let (kind, value) = match args.kind {
            ProbeKind::Regression => ("mse", linear_regression_probe(factor, variable, &cfg)?),
            ProbeKind::Classifier => {
                let labels = integer_labels(factor, &f, &args.factors)?;
                (
                    "accuracy",
                    linear_classifier_probe(variable, &labels, &cfg)?,
                )
            }
        };
        rows.push(ProbeRow {
            factor: f,
            variable: v,
            kind,
            value,
        });
    }
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&rows)? + "\n",
        Format::Csv => {
            let mut s = String::from("factor,variable,kind,value\n");
            for r in &rows {
                let _ = writeln!(s, "{},{},{},{}", r.factor, r.variable, r.kind, r.value);
            }
            s
        }
        Format::Markdown => {
            let mut s = String::from("| factor | variable | kind | value |\n|---|---|---|---:|\n");
            for r in &rows {
                let _ = writeln!(
                    s,
                    "| {} | {} | {} | {:.6} |",
                    r.factor, r.variable, r.kind, r.value
                );
            }
            s
        }
    };
    emit(&args.common, &text)
}

fn init_threads() -> Result<()> {
    if let Ok(raw) = std::env::var("DISENT_THREADS") {
        let n: usize = raw
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .with_context(|| format!("DISENT_THREADS must be a positive integer, got `{raw}`"))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring the worker pool")?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = init_threads().and_then(|()| match &cli.command {
        Command::Run(a) => run(a),
        Command::Eval(a) => eval(a),
        Command::Probe(a) => probe(a),
        Command::ListScenarios => {
            for (name, desc) in list_scenarios() {
                println!("{name:<10} {desc}");
            }
            Ok(())
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
