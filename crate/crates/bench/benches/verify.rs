use criterion::{criterion_group, criterion_main, Criterion};

use surfqp::fixtures;
use surfqp::transport::path_transport;
use surfqp::FlipDirection::Forward;
use surfqp::{run_suite, ExtAlgebraTable, SuiteConfig, SUITES};

fn suites(c: &mut Criterion) {
    let config = SuiteConfig::builtin();
    let mut g = c.benchmark_group("suite");
    g.sample_size(10);
    for s in SUITES {
        g.bench_function(s.to_string(), |b| b.iter(|| run_suite(s, &config).unwrap()));
    }
    g.finish();
}

fn kernels(c: &mut Criterion) {
    let h = fixtures::heptagon();
    c.bench_function("ext table heptagon", |b| {
        b.iter(|| ExtAlgebraTable::of(&h).unwrap())
    });
    let path = vec![("d0-2".to_string(), Forward), ("d0-4".to_string(), Forward)];
    c.bench_function("transport heptagon square", |b| {
        b.iter(|| path_transport(&h, &path).unwrap())
    });
    c.bench_function("all hexagon triangulations", |b| {
        b.iter(|| fixtures::all_triangulations(&fixtures::hexagon()))
    });
}

criterion_group!(benches, suites, kernels);
criterion_main!(benches);
