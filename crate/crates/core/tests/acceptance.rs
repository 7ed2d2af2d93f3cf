//! Acceptance gate. Prints one PASS/FAIL line per criterion, preceded by
//! the individual checks, and exits nonzero if any criterion fails.

mod common;

use std::process::ExitCode;

use disent_core::metrics::compactness_explicitness;
use disent_core::probes::{linear_classifier_probe, linear_regression_probe};
use disent_core::report::{evaluate, Source};
use disent_core::seed::seeded_rng;
use disent_core::{minmax_scale, run_scenario, MetricKind, ResultDocument, RunConfig, Scenario};
use rand::Rng;

use MetricKind::*;

struct Criterion {
    checks: Vec<(String, bool)>,
}

impl Criterion {
    fn new() -> Self {
        Self { checks: Vec::new() }
    }

    fn check(&mut self, label: impl Into<String>, pass: bool) {
        let label = label.into();
        println!("    {} {label}", if pass { "ok  " } else { "FAIL" });
        self.checks.push((label, pass));
    }

    fn at_least(&mut self, what: &str, value: f64, bound: f64) {
        self.check(format!("{what} = {value:.4} >= {bound}"), value >= bound);
    }

    fn at_most(&mut self, what: &str, value: f64, bound: f64) {
        self.check(format!("{what} = {value:.4} <= {bound}"), value <= bound);
    }

    fn near(&mut self, what: &str, value: f64, center: f64, tol: f64) {
        self.check(
            format!("{what} = {value:.4} in {center} +/- {tol}"),
            (value - center).abs() <= tol,
        );
    }

    fn within(&mut self, what: &str, value: f64, lo: f64, hi: f64) {
        self.check(
            format!("{what} = {value:.4} in [{lo}, {hi}]"),
            (lo..=hi).contains(&value),
        );
    }

    fn passed(&self) -> bool {
        self.checks.iter().all(|(_, p)| *p)
    }
}

struct Suite {
    docs: Vec<ResultDocument>,
}

impl Suite {
    fn doc(&self, s: Scenario) -> &ResultDocument {
        self.docs
            .iter()
            .find(|d| matches!(d.source, Source::Scenario { scenario, .. } if scenario == s))
            .expect("scenario computed")
    }

    fn agg(&self, s: Scenario, m: MetricKind) -> f64 {
        self.doc(s).aggregate(m).expect("metric computed")
    }

    fn var(&self, s: Scenario, m: MetricKind, z: &str) -> f64 {
        self.doc(s)
            .variable_value(m, z)
            .expect("per-variable value")
    }

    fn dci_completeness(&self, s: Scenario) -> f64 {
        self.doc(s)
            .metric(Dci)
            .unwrap()
            .dci
            .as_ref()
            .unwrap()
            .completeness
    }
}

fn criterion_1(s: &Suite, c: &mut Criterion) {
    for sc in [Scenario::Cos0, Scenario::Cos1I, Scenario::Cos1D] {
        c.at_least(&format!("modularity {sc}"), s.agg(sc, IndModularity), 0.99);
    }
    c.near(
        "modularity Cos2I",
        s.agg(Scenario::Cos2I, IndModularity),
        0.90,
        0.07,
    );
    c.near(
        "modularity Cos2D",
        s.agg(Scenario::Cos2D, IndModularity),
        0.90,
        0.07,
    );
    c.near(
        "modularity Cos3I",
        s.agg(Scenario::Cos3I, IndModularity),
        0.35,
        0.10,
    );
    c.near(
        "modularity Cos3D",
        s.agg(Scenario::Cos3D, IndModularity),
        0.80,
        0.08,
    );
}

fn criterion_2(s: &Suite, c: &mut Criterion) {
    for sc in [Scenario::Cos0, Scenario::Cos1I, Scenario::Cos1D] {
        c.at_least(
            &format!("compactness {sc}"),
            s.agg(sc, IndCompactness),
            0.99,
        );
    }
    c.near(
        "compactness Cos2D",
        s.agg(Scenario::Cos2D, IndCompactness),
        0.89,
        0.08,
    );
    c.near(
        "compactness Cos3I",
        s.agg(Scenario::Cos3I, IndCompactness),
        0.35,
        0.10,
    );
    c.near(
        "compactness Cos3D",
        s.agg(Scenario::Cos3D, IndCompactness),
        0.81,
        0.08,
    );
}

fn criterion_3(s: &Suite, c: &mut Criterion) {
    c.at_least(
        "explicitness Cos1I",
        s.agg(Scenario::Cos1I, IndExplicitness),
        0.98,
    );
    c.at_least(
        "explicitness Cos1D",
        s.agg(Scenario::Cos1D, IndExplicitness),
        0.98,
    );
    c.near(
        "explicitness Cos2I",
        s.agg(Scenario::Cos2I, IndExplicitness),
        0.66,
        0.10,
    );
    c.at_least(
        "explicitness Cos3D",
        s.agg(Scenario::Cos3D, IndExplicitness),
        0.93,
    );
}

fn criterion_4(s: &Suite, c: &mut Criterion) {
    for m in [IndModularity, IndCompactness, Sufficiency] {
        let diff = (s.agg(Scenario::Cos1I, m) - s.agg(Scenario::Cos1D, m)).abs();
        c.at_most(&format!("|{m}(Cos1I) - {m}(Cos1D)|"), diff, 0.02);
    }
}

fn criterion_5(s: &Suite, c: &mut Criterion) {
    for sc in [Scenario::Cos1D, Scenario::Cos2D, Scenario::Cos3D] {
        let v = s.agg(sc, FactorVae);
        c.check(format!("factor_vae {sc} = {v:.4} == 1"), v == 1.0);
    }
    let (i, d) = (s.agg(Scenario::Cos1I, Mig), s.agg(Scenario::Cos1D, Mig));
    c.check(
        format!("mig Cos1D {d:.4} < mig Cos1I {i:.4} - 0.1"),
        d < i - 0.1,
    );
    let (i, d) = (s.agg(Scenario::Cos1I, Sap), s.agg(Scenario::Cos1D, Sap));
    c.check(
        format!("sap Cos1D {d:.4} < sap Cos1I {i:.4} - 0.2"),
        d < i - 0.2,
    );
    let comp: Vec<f64> = [Scenario::Cos1D, Scenario::Cos2D, Scenario::Cos3D]
        .into_iter()
        .map(|sc| s.dci_completeness(sc))
        .collect();
    c.check(
        format!(
            "dci completeness {:.4} < {:.4} < {:.4} (Cos1D, Cos2D, Cos3D)",
            comp[0], comp[1], comp[2]
        ),
        comp[0] < comp[1] && comp[1] < comp[2],
    );
    let (i, z) = (
        s.agg(Scenario::Cos1I, ModularityScore),
        s.agg(Scenario::Cos0, ModularityScore),
    );
    c.check(
        format!("modularity_score Cos1I {i:.4} < Cos0 {z:.4} - 0.05"),
        i < z - 0.05,
    );
}

fn criterion_6(s: &Suite, c: &mut Criterion) {
    for sc in [
        Scenario::CosNuis2I,
        Scenario::CosNuis3I,
        Scenario::CosNuis2D,
        Scenario::CosNuis3D,
    ] {
        c.at_most(
            &format!("minimality z4 {sc}"),
            s.var(sc, Minimality, "z4"),
            0.05,
        );
        c.within(
            &format!("modularity z4 {sc}"),
            s.var(sc, IndModularity, "z4"),
            0.65,
            0.90,
        );
    }
    c.near(
        "minimality z3 CosNuis2I",
        s.var(Scenario::CosNuis2I, Minimality, "z3"),
        0.35,
        0.10,
    );
    c.near(
        "modularity z3 CosNuis2I",
        s.var(Scenario::CosNuis2I, IndModularity, "z3"),
        0.86,
        0.08,
    );
}

fn criterion_7(s: &Suite, c: &mut Criterion) {
    let cfg = RunConfig::default();
    let rows = cfg.samples;
    let y = common::factors(11, rows);

    let identity = common::identity_repr(&y);
    let doc = evaluate(&y, &identity, source("identity"), &cfg, false).unwrap();
    for m in MetricKind::IND {
        c.at_least(&format!("identity {m}"), doc.aggregate(m).unwrap(), 0.97);
    }

    let noise = common::noise_repr(12, 4, rows);
    let doc = evaluate(&y, &noise, source("noise"), &cfg, false).unwrap();
    c.at_most(
        "pure noise explicitness",
        doc.aggregate(IndExplicitness).unwrap(),
        0.05,
    );
    let report = doc.metric(IndModularity).unwrap().report.as_ref().unwrap();
    c.check(
        format!(
            "pure noise modularity aggregate {} with degenerate-weights warning",
            report.aggregate
        ),
        report.aggregate == 0.0 && report.has_degenerate_weights(),
    );

    let baselines: Vec<f64> = s
        .docs
        .iter()
        .flat_map(|d| &d.metrics)
        .filter_map(|m| m.report.as_ref())
        .flat_map(|r| r.noise_baselines.values().copied())
        .collect();
    let lo = baselines.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = baselines.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    c.check(
        format!(
            "{} noise-baseline errors span [{lo:.4}, {hi:.4}] within 0.25 +/- 0.01",
            baselines.len()
        ),
        !baselines.is_empty() && (lo - 0.25).abs() <= 0.01 && (hi - 0.25).abs() <= 0.01,
    );

    let mut prop1 = Vec::new();
    let mut prop2 = Vec::new();
    for doc in &s.docs {
        let name = doc.source.label();
        let suff = doc.aggregate(Sufficiency).unwrap();
        let bound = doc
            .aggregate(IndCompactness)
            .unwrap()
            .min(doc.aggregate(IndExplicitness).unwrap())
            + 0.1;
        if suff > bound {
            prop1.push(format!("{name}: {suff:.4} > {bound:.4}"));
        }
        for v in &doc.variable_names {
            let min = doc.variable_value(Minimality, v).unwrap();
            let m = doc.variable_value(IndModularity, v).unwrap();
            if min > m + 0.1 {
                prop2.push(format!("{name}/{v}: {min:.4} > {m:.4} + 0.1"));
            }
        }
    }
    c.check(
        format!(
            "sufficiency <= min(compactness, explicitness) + 0.1 on all {} scenarios {prop1:?}",
            s.docs.len()
        ),
        prop1.is_empty(),
    );
    c.check(
        format!("per-variable minimality <= modularity + 0.1 on all scenarios {prop2:?}"),
        prop2.is_empty(),
    );

    let sc = Scenario::Cos3D;
    let cfg = RunConfig {
        metrics: MetricKind::ALL.to_vec(),
        ..RunConfig::default()
    };
    let reference = s.doc(sc).without_timing().to_json().unwrap();
    let again = run_scenario(sc, &cfg, true)
        .unwrap()
        .without_timing()
        .to_json()
        .unwrap();
    c.check(
        format!("{sc} repeated run is byte-identical"),
        again == reference,
    );
    for threads in [1, 3] {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        let out = pool
            .install(|| run_scenario(sc, &cfg, true))
            .unwrap()
            .without_timing()
            .to_json()
            .unwrap();
        c.check(
            format!("{sc} with {threads} worker thread(s) is byte-identical"),
            out == reference,
        );
    }
}

fn source(name: &str) -> Source {
    Source::Files {
        factors: "synthetic".into(),
        representation: name.into(),
    }
}

fn criterion_8(c: &mut Criterion) {
    let cfg = RunConfig::default();
    let rows = cfg.samples;
    let mut rng = seeded_rng(21, &["acceptance".into(), "probes".into()]);
    let x: Vec<f64> = (0..rows).map(|_| rng.gen::<f64>()).collect();

    let affine: Vec<f64> = x.iter().map(|v| 2.0 * v + 1.0).collect();
    c.at_most(
        "regression probe on exact affine component",
        linear_regression_probe(&x, &affine, &cfg).unwrap(),
        1e-12,
    );
    let noise: Vec<f64> = (0..rows).map(|_| rng.gen::<f64>()).collect();
    let var = {
        let m = noise.iter().sum::<f64>() / rows as f64;
        noise.iter().map(|v| (v - m).powi(2)).sum::<f64>() / rows as f64
    };
    let ratio = linear_regression_probe(&x, &noise, &cfg).unwrap() / var;
    c.near("regression probe MSE / variance on noise", ratio, 1.0, 0.10);

    let labels: Vec<i64> = (0..rows).map(|r| (r % 2) as i64).collect();
    let separated: Vec<f64> = labels
        .iter()
        .map(|&l| {
            let g: f64 = (0..12).map(|_| rng.gen::<f64>()).sum::<f64>() - 6.0;
            let center = if l == 1 { 2.0 } else { -2.0 };
            center + 0.1 * g
        })
        .collect();
    c.at_least(
        "classifier probe on separated classes",
        linear_classifier_probe(&separated, &labels, &cfg).unwrap(),
        0.999,
    );
    let chance = linear_classifier_probe(&x, &labels, &cfg).unwrap();
    c.near("classifier probe on independent labels", chance, 0.5, 0.03);

    let y = common::factors(31, rows);
    let wide = common::wide_repr(&y, 32, 61);
    let (ys, zs) = (minmax_scale(&y).unwrap(), minmax_scale(&wide).unwrap());
    let (compact, _) = compactness_explicitness(&ys, &zs, &cfg).unwrap();
    c.at_least(
        "compactness of 64-column representation with 3 informative columns",
        compact.aggregate,
        0.95,
    );
}

fn main() -> ExitCode {
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let cfg = RunConfig {
        metrics: MetricKind::ALL.to_vec(),
        ..RunConfig::default()
    };
    let docs: Vec<ResultDocument> = Scenario::ALL
        .into_iter()
        .map(|sc| run_scenario(sc, &cfg, true).expect("scenario run"))
        .collect();
    let suite = Suite { docs };

    let titles = [
        "Ind. Modularity on the main scenarios",
        "Ind. Compactness on the main scenarios",
        "Ind. Explicitness on the main scenarios",
        "dependence invariance between Cos1I and Cos1D",
        "baseline failure modes",
        "per-variable minimality and modularity on nuisance scenarios",
        "property suite",
        "probe properties and 64-column compactness",
    ];
    let mut all = true;
    for (k, title) in titles.iter().enumerate() {
        let mut c = Criterion::new();
        match k + 1 {
            1 => criterion_1(&suite, &mut c),
            2 => criterion_2(&suite, &mut c),
            3 => criterion_3(&suite, &mut c),
            4 => criterion_4(&suite, &mut c),
            5 => criterion_5(&suite, &mut c),
            6 => criterion_6(&suite, &mut c),
            7 => criterion_7(&suite, &mut c),
            _ => criterion_8(&mut c),
        }
        let pass = c.passed();
        all &= pass;
        println!(
            "{} criterion {}: {title}",
            if pass { "PASS" } else { "FAIL" },
            k + 1
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
