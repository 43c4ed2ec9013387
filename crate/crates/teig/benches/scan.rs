//! Parallel vs sequential scan throughput on a small reference workload.
//!
//! The grid points of a scan are independent, so with the `parallel` feature
//! the speedup should track the worker count until assembly becomes
//! memory-bound. `cargo bench` compares a 1-worker pool against the default
//! pool; building with `--no-default-features` benches the plain sequential
//! fallback instead.

use criterion::{criterion_group, criterion_main, Criterion};
use num_complex::Complex64;
use teig::geometry::{BoundaryCurve, Mesh};
use teig::rim::RimConfig;
use teig::scan::scan_interval;
use teig::schur::EtaPolicy;

fn small_scan(mesh: &Mesh, cfg: &RimConfig) {
    let result = scan_interval(1.8, 2.1, 11, 16.0, EtaPolicy::Auto, mesh, cfg).unwrap();
    assert_eq!(result.samples.len(), 12);
}

fn bench_scans(c: &mut Criterion) {
    let mesh = Mesh::build(&BoundaryCurve::disk(0.5).unwrap(), 16).unwrap();
    let cfg = RimConfig::new(16, 1e-3, 0).unwrap();

    let mut group = c.benchmark_group("interval_scan");
    group.sample_size(10);

    #[cfg(feature = "parallel")]
    {
        let single = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        group.bench_function("sequential_1_worker", |b| {
            b.iter(|| single.install(|| small_scan(&mesh, &cfg)))
        });
        group.bench_function("parallel_default_pool", |b| {
            b.iter(|| small_scan(&mesh, &cfg))
        });
    }
    #[cfg(not(feature = "parallel"))]
    {
        group.bench_function("sequential_fallback", |b| {
            b.iter(|| small_scan(&mesh, &cfg))
        });
    }
    group.finish();
}

fn bench_assembly(c: &mut Criterion) {
    let mesh = Mesh::build(&BoundaryCurve::disk(0.5).unwrap(), 32).unwrap();
    c.bench_function("layer_operators_n32", |b| {
        b.iter(|| teig::nystrom::layer_operators(Complex64::new(8.0, 0.0), &mesh).unwrap())
    });
}

criterion_group!(benches, bench_scans, bench_assembly);
criterion_main!(benches);
