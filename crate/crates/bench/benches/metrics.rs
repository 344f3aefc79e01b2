use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_bigint::BigInt;
use num_rational::BigRational;
use stabdisj_bench::enumerable_instances;
use stabdisj_core::bounds;
use stabdisj_core::families;
use stabdisj_core::oracle::{parse_circuit, CodeOracle};
use stabdisj_core::MetricsConfig;

fn bench_metrics(c: &mut Criterion) {
    let cfg = MetricsConfig::default();
    let mut group = c.benchmark_group("compute_metrics");
    group.sample_size(10);
    for f in enumerable_instances() {
        group.bench_with_input(BenchmarkId::from_parameter(&f.name), &f, |b, f| {
            b.iter(|| f.analyze(&cfg).unwrap())
        });
    }
    group.finish();
}

fn bench_bounds(c: &mut Criterion) {
    let r = |p: i64, q: i64| BigRational::new(BigInt::from(p), BigInt::from(q));
    let (d_min, d_max, delta) = (r(3, 1), r(3, 1), r(5, 3));
    c.bench_function("multiblock r=2", |b| {
        b.iter(|| bounds::multiblock_level_bound(&d_min, &d_max, &delta, 2, 5, Some(16)).unwrap())
    });
    c.bench_function("multiblock r=4096", |b| {
        b.iter(|| bounds::multiblock_level_bound(&d_min, &d_max, &delta, 4096, 5, Some(16)).unwrap())
    });
}

fn bench_oracle(c: &mut Criterion) {
    let f = families::reed_muller(2).unwrap();
    let h = parse_circuit("gate * H", &f.partition, 2).unwrap();
    c.bench_function("steane codespace", |b| b.iter(|| CodeOracle::new(&f.code).unwrap()));
    let oracle = CodeOracle::new(&f.code).unwrap();
    c.bench_function("steane hadamard level", |b| {
        b.iter(|| {
            let mut cls = oracle.classifier();
            oracle.hierarchy_level(&h, 4, &mut cls).unwrap()
        })
    });
}

criterion_group!(benches, bench_metrics, bench_bounds, bench_oracle);
criterion_main!(benches);
