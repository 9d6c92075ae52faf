//! Coupling scans on the rayon pool against the same scan on one thread.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hybrid_lgt::compactness::slice_ground_energies;
use hybrid_lgt::model::pure_gauge_ed;
use hybrid_lgt::par;

fn couplings(n: usize) -> Vec<f64> {
    (0..n).map(|k| 0.3 + 0.1 * k as f64).collect()
}

fn pure_gauge_scan(c: &mut Criterion) {
    let gs = couplings(16);
    let point = |g: &f64| pure_gauge_ed(*g, 24, 2).unwrap();
    let mut group = c.benchmark_group("pure_gauge_scan");
    group.bench_function(BenchmarkId::new("sequential", gs.len()), |b| b.iter(|| par::map_sequential(&gs, point)));
    #[cfg(feature = "parallel")]
    group.bench_function(BenchmarkId::new("parallel", gs.len()), |b| b.iter(|| par::map_parallel(&gs, point)));
    group.finish();
}

fn radial_slice_scan(c: &mut Criterion) {
    let gs = couplings(4);
    let radii: Vec<f64> = (0..8).map(|k| 0.6 + 0.1 * k as f64).collect();
    let point = |g: &f64| slice_ground_energies(*g, 1.5, &radii, 6).unwrap();
    let mut group = c.benchmark_group("radial_slice_scan");
    group.sample_size(10);
    group.bench_function(BenchmarkId::new("sequential", gs.len()), |b| b.iter(|| par::map_sequential(&gs, point)));
    #[cfg(feature = "parallel")]
    group.bench_function(BenchmarkId::new("parallel", gs.len()), |b| b.iter(|| par::map_parallel(&gs, point)));
    group.finish();
}

criterion_group!(benches, pure_gauge_scan, radial_slice_scan);
criterion_main!(benches);
