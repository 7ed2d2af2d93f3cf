mod common;

use disent_core::{
    compactness_explicitness, generate, minimality, minmax_scale, modularity, sufficiency,
    MetricReport, RunConfig, ScaledTable, Scenario, ScenarioSpec,
};
use proptest::prelude::*;

fn scaled(sc: Scenario, rows: usize) -> (ScaledTable, ScaledTable) {
    let (y, z) = generate(&ScenarioSpec::new(sc, rows, 0)).unwrap();
    (minmax_scale(&y).unwrap(), minmax_scale(&z).unwrap())
}

fn light(seed: u64) -> RunConfig {
    let mut cfg = RunConfig::with_seed(seed);
    cfg.regressor.tree_count = 20;
    cfg
}

fn assert_ranges(r: &MetricReport) {
    let unit = |v: f64| (0.0..=1.0).contains(&v);
    assert!(unit(r.aggregate), "{}: {}", r.metric_name, r.aggregate);
    assert!(r.per_axis.values.iter().all(|&v| unit(v)));
    if let Some(p) = &r.pair_scores {
        assert!(p.iter().flatten().all(|&v| unit(v)));
    }
    if let Some(w) = &r.variable_weights {
        assert!(w.iter().all(|&v| v >= 0.0));
        let total: f64 = w.iter().sum();
        assert!(
            (total - 1.0).abs() < 1e-9 || (r.has_degenerate_weights() && r.aggregate == 0.0),
            "{}: weights {w:?}",
            r.metric_name
        );
    }
}

#[test]
fn permuting_variables_permutes_reports() {
    let (y, z) = scaled(Scenario::Cos3D, 2_000);
    let order = [2, 0, 3, 1];
    let p = minmax_scale(&z.table.permuted(&order).unwrap()).unwrap();
    let cfg = light(4);

    let check = |a: &MetricReport, b: &MetricReport| {
        assert_eq!(a.aggregate, b.aggregate, "{}", a.metric_name);
        if let (Some(pa), Some(pb)) = (&a.pair_scores, &b.pair_scores) {
            for (ra, rb) in pa.iter().zip(pb) {
                let permuted: Vec<f64> = order.iter().map(|&j| ra[j]).collect();
                assert_eq!(&permuted, rb);
            }
        }
        if let (Some(wa), Some(wb)) = (&a.variable_weights, &b.variable_weights) {
            let permuted: Vec<f64> = order.iter().map(|&j| wa[j]).collect();
            assert_eq!(&permuted, wb);
        }
    };
    check(
        &modularity(&y, &z, &cfg).unwrap(),
        &modularity(&y, &p, &cfg).unwrap(),
    );
    check(
        &minimality(&y, &z, &cfg).unwrap(),
        &minimality(&y, &p, &cfg).unwrap(),
    );
    check(
        &sufficiency(&y, &z, &cfg).unwrap(),
        &sufficiency(&y, &p, &cfg).unwrap(),
    );
    let (ca, ea) = compactness_explicitness(&y, &z, &cfg).unwrap();
    let (cb, eb) = compactness_explicitness(&y, &p, &cfg).unwrap();
    check(&ca, &cb);
    assert_eq!(ea.aggregate, eb.aggregate);
}

#[test]
fn appending_noise_barely_moves_weighted_aggregates() {
    let (y, z) = scaled(Scenario::Cos0, 10_000);
    let extra = common::uniform_columns(8, "appended", 1, 10_000).remove(0);
    let noisy = minmax_scale(&z.table.with_column("z4", extra).unwrap()).unwrap();
    let cfg = RunConfig::default();
    for metric in [modularity, minimality] {
        let a = metric(&y, &z, &cfg).unwrap().aggregate;
        let b = metric(&y, &noisy, &cfg).unwrap().aggregate;
        assert!((a - b).abs() <= 0.02, "{a} vs {b}");
    }
}

#[test]
fn identity_representation_is_minimal_per_variable() {
    let y = common::factors(2, 5_000);
    let z = common::identity_repr(&y);
    let (y, z) = (minmax_scale(&y).unwrap(), minmax_scale(&z).unwrap());
    let r = minimality(&y, &z, &RunConfig::default()).unwrap();
    assert!(
        r.per_axis.values.iter().all(|&v| v >= 0.97),
        "{:?}",
        r.per_axis
    );
}

#[test]
fn pure_noise_is_insufficient_and_degenerate() {
    let y = minmax_scale(&common::factors(3, 5_000)).unwrap();
    let z = minmax_scale(&common::noise_repr(4, 4, 5_000)).unwrap();
    let cfg = RunConfig::default();
    assert!(sufficiency(&y, &z, &cfg).unwrap().aggregate <= 0.05);
    let m = modularity(&y, &z, &cfg).unwrap();
    assert_eq!(m.aggregate, 0.0);
    assert!(m.has_degenerate_weights());
}

#[test]
fn reference_values_on_the_main_scenarios() {
    let cfg = RunConfig::default();
    let (y, z) = scaled(Scenario::Cos1D, 10_000);
    let (c, e) = compactness_explicitness(&y, &z, &cfg).unwrap();
    assert!(c.aggregate >= 0.99 && e.aggregate >= 0.98);
    let dependent = sufficiency(&y, &z, &cfg).unwrap().aggregate;
    let (y, z) = scaled(Scenario::Cos1I, 10_000);
    let independent = sufficiency(&y, &z, &cfg).unwrap().aggregate;
    assert!((dependent - independent).abs() <= 0.02);

    let (y, z) = scaled(Scenario::Cos2I, 10_000);
    let (_, e) = compactness_explicitness(&y, &z, &cfg).unwrap();
    assert!((e.aggregate - 0.6626).abs() <= 0.1, "{}", e.aggregate);

    let (y, z) = scaled(Scenario::CosNuis2I, 10_000);
    let z3 = minimality(&y, &z, &cfg)
        .unwrap()
        .per_axis_value("z3")
        .unwrap();
    assert!((z3 - 0.3453).abs() <= 0.1, "{z3}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn reports_stay_in_range(
        seed in any::<u64>(),
        scenario in proptest::sample::select(Scenario::ALL.to_vec()),
        in_sample in any::<bool>(),
    ) {
        let (y, z) = generate(&ScenarioSpec::new(scenario, 300, seed)).unwrap();
        let (y, z) = (minmax_scale(&y).unwrap(), minmax_scale(&z).unwrap());
        let mut cfg = light(seed);
        cfg.regressor.tree_count = 5;
        if in_sample {
            cfg.evaluation = disent_core::Evaluation::InSample;
        }
        assert_ranges(&modularity(&y, &z, &cfg).unwrap());
        assert_ranges(&minimality(&y, &z, &cfg).unwrap());
        assert_ranges(&sufficiency(&y, &z, &cfg).unwrap());
        let (c, e) = compactness_explicitness(&y, &z, &cfg).unwrap();
        assert_ranges(&c);
        assert_ranges(&e);
    }
}
