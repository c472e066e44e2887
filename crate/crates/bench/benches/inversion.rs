use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use ellinv_core::algebra::{pushforward, InversionEllipseExact};
use ellinv_core::pappus::{build_chain, verify_chain};
use ellinv_core::{ChainSpec, Ellipse, ImplicitCurve, Point, Tolerance};

fn point_map(c: &mut Criterion) {
    let e = Ellipse::new(Point::new(0.3, -0.2), 2.5, 1.5, 0.4).unwrap();
    let tol = Tolerance::default();
    let p = Point::new(3.72, 1.6);
    let mut g = c.benchmark_group("point");
    g.bench_function("closed_form", |b| b.iter(|| e.invert(black_box(p))));
    g.bench_function("ray", |b| b.iter(|| e.invert_point_by_ray(black_box(p), &tol)));
    g.bench_function("polar", |b| b.iter(|| e.invert_point_by_polar(black_box(p), &tol)));
    g.bench_function("squash", |b| b.iter(|| e.invert_point_by_squash(black_box(p), &tol)));
    g.finish();
}

fn curve_map(c: &mut Criterion) {
    let e: InversionEllipseExact = InversionEllipseExact::from_semi_axes(&"5/2".parse().unwrap(), &"3/2".parse().unwrap()).unwrap();
    let line: ImplicitCurve = "1,0:3;0,1:-7;0,0:11".parse().unwrap();
    let circle: ImplicitCurve = "2,0:1;0,2:1;1,0:-6;0,1:-2;0,0:9".parse().unwrap();
    let mut g = c.benchmark_group("pushforward");
    g.bench_function("line", |b| b.iter(|| pushforward(&e, black_box(&line))));
    g.bench_function("circle_to_quartic", |b| b.iter(|| pushforward(&e, black_box(&circle))));
    g.finish();
}

fn chain(c: &mut Criterion) {
    let spec = ChainSpec::new(1.0, 2.0 / 3.0, 0.6, 20).unwrap();
    let built = build_chain(&spec).unwrap();
    let mut g = c.benchmark_group("chain");
    g.bench_function("build_20", |b| b.iter(|| build_chain(black_box(&spec))));
    g.bench_function("verify_20", |b| b.iter(|| verify_chain(&spec, black_box(&built))));
    g.finish();
}

criterion_group!(benches, point_map, curve_map, chain);
criterion_main!(benches);
