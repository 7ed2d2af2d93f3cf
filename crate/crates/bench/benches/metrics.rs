use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use disent_bench::scaled_scenario;
use disent_core::baseline::{dci, mig};
use disent_core::{modularity, RandomForest, RegressorConfig, RunConfig, Scenario};

fn forest_fit(c: &mut Criterion) {
    let mut group = c.benchmark_group("forest_fit");
    group.sample_size(10);
    for rows in [1_000, 5_000] {
        let (y, z) = scaled_scenario(Scenario::Cos3D, rows);
        let features: Vec<&[f64]> = (0..3).map(|i| y.column(i)).collect();
        let cfg = RegressorConfig::default();
        group.bench_with_input(BenchmarkId::new("3_features", rows), &rows, |b, _| {
            b.iter(|| RandomForest::fit(&features, z.column(0), &cfg).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("1_feature", rows), &rows, |b, _| {
            b.iter(|| RandomForest::fit(&features[..1], z.column(0), &cfg).unwrap())
        });
    }
    group.finish();
}

fn metrics(c: &mut Criterion) {
    let mut group = c.benchmark_group("metrics");
    group.sample_size(10);
    let (y, z) = scaled_scenario(Scenario::Cos1I, 2_000);
    let mut cfg = RunConfig::default();
    cfg.regressor.tree_count = 20;
    group.bench_function("ind_modularity_cos1i_2000", |b| {
        b.iter(|| modularity(&y, &z, &cfg).unwrap())
    });
    let (y, z) = scaled_scenario(Scenario::Cos1I, 10_000);
    group.bench_function("mig_cos1i_10000", |b| b.iter(|| mig(&y, &z, 20).unwrap()));
    let cfg = RunConfig::default();
    group.bench_function("dci_cos1i_10000", |b| b.iter(|| dci(&y, &z, &cfg).unwrap()));
    group.finish();
}

criterion_group!(benches, forest_fit, metrics);
criterion_main!(benches);
