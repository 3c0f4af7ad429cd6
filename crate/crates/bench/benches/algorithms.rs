use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use hcover::epsnet::{build_epsnet, maximal_anchored_empty, NetConfig};
use hcover::exact::verify_epsnet;
use hcover::flowcheck::max_cover_value;
use hcover::generate::{random_cover, uniform_points, CoverParams};
use hcover::wolsey::solve_capacitated;
use hcover::{AnchorSide, Point, Strip};

fn cover(c: &mut Criterion) {
    let mut group = c.benchmark_group("cover");
    for (n, m) in [(50, 20), (200, 60)] {
        let params = CoverParams { n, m, capacity: (5, 20), cost: (1, 10), density: 0.2 };
        let inst = random_cover(&params, 1).expect("valid params");
        let all: Vec<usize> = (0..m).collect();
        group.bench_with_input(BenchmarkId::new("max_flow", n), &inst, |b, inst| {
            b.iter(|| black_box(max_cover_value(inst, &all).expect("ids in range").0));
        });
        group.bench_with_input(BenchmarkId::new("greedy", n), &inst, |b, inst| {
            b.iter(|| black_box(solve_capacitated(inst).map(|t| t.cost)));
        });
    }
    group.finish();
}

fn nets(c: &mut Criterion) {
    let mut group = c.benchmark_group("epsnet");
    group.sample_size(20);
    for inv_eps in [8u32, 32] {
        let eps = 1.0 / inv_eps as f64;
        let pts = uniform_points(2000, 3);
        let cfg = NetConfig::new(eps, 3);
        group.bench_with_input(BenchmarkId::new("build", inv_eps), &pts, |b, pts| {
            b.iter(|| black_box(build_epsnet(pts, &cfg).expect("general position").net.len()));
        });
        let net = build_epsnet(&pts, &cfg).expect("general position").net;
        group.bench_with_input(BenchmarkId::new("verify", inv_eps), &pts, |b, pts| {
            b.iter(|| black_box(verify_epsnet(pts, eps, &net).expect("valid ids").ok));
        });
    }
    let probes: Vec<(usize, Point)> = uniform_points(500, 9).into_iter().enumerate().collect();
    group.bench_function("anchored_500", |b| {
        b.iter(|| black_box(maximal_anchored_empty(Strip::PLANE, AnchorSide::Left, &probes).len()));
    });
    group.finish();
}

criterion_group!(benches, cover, nets);
criterion_main!(benches);
