use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use plycover::boxcover::hyperbox_cover_sequential;
use plycover::harness::{gen_instance, GenKind, GenParams};
use plycover::{
    disk_cover, exact_ply, hyperbox_cover, membership, par, polygon_cover, ConvexPolygon, Cover,
    PointSet,
};

fn points(n: usize, dim: usize) -> PointSet {
    let params = GenParams {
        range: (0.0, (n as f64).powf(1.0 / dim as f64) * 2.0),
        ..GenParams::default()
    };
    gen_instance(GenKind::Uniform, n, dim, 1, &params)
        .unwrap()
        .point_set()
        .unwrap()
}

fn box_cover(c: &mut Criterion) {
    let mut group = c.benchmark_group("hyperbox_cover");
    group.sample_size(20);
    for (n, dim) in [(1 << 14, 2), (1 << 16, 2), (1 << 14, 3)] {
        let ps = points(n, dim);
        let lengths = vec![1.0; dim];
        let id = format!("n{n}-d{dim}");
        group.bench_with_input(BenchmarkId::new("parallel", &id), &ps, |b, ps| {
            b.iter(|| hyperbox_cover(black_box(ps), &lengths).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("sequential", &id), &ps, |b, ps| {
            b.iter(|| hyperbox_cover_sequential(black_box(ps), &lengths).unwrap())
        });
    }
    group.finish();
}

/// Verification work, on all threads versus a single-thread pool.
fn verification(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    let ps = points(1 << 13, 2);
    let disks = Cover::from(&disk_cover(&ps).unwrap());
    let boxes = Cover::from(&hyperbox_cover(&ps, &[1.0, 1.0]).unwrap());
    let tri = ConvexPolygon::new(vec![[0.0, 0.0], [1.0, 0.0], [0.3, 0.9]]).unwrap();
    let polys = Cover::from(&polygon_cover(&ps, &tri).unwrap());
    for (name, cover) in [("disks", &disks), ("boxes", &boxes), ("polygons", &polys)] {
        group.bench_function(BenchmarkId::new("exact_ply/parallel", name), |b| {
            b.iter(|| exact_ply(black_box(cover)))
        });
        group.bench_function(BenchmarkId::new("exact_ply/sequential", name), |b| {
            b.iter(|| par::with_threads(1, || exact_ply(black_box(cover))))
        });
        group.bench_function(BenchmarkId::new("membership/parallel", name), |b| {
            b.iter(|| membership(&ps, black_box(cover)).unwrap())
        });
        group.bench_function(BenchmarkId::new("membership/sequential", name), |b| {
            b.iter(|| par::with_threads(1, || membership(&ps, black_box(cover)).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, box_cover, verification);
criterion_main!(benches);
