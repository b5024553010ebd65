use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use imcf_solitons::flow::{flow_until, self_similarity_check_with, FlowState};
use imcf_solitons::plane::{sample_homothetic_curve, HomotheticCurveParams, ThetaRange};
use std::hint::black_box;

fn sampling(c: &mut Criterion) {
    let p = HomotheticCurveParams::new(2.0, 1.0, 1.0).unwrap();
    let range = ThetaRange::new(0.0, 2.0).unwrap();
    let mut g = c.benchmark_group("sample spiral");
    for n in [256, 4096] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| sample_homothetic_curve(&p, range, black_box(n)).unwrap())
        });
    }
    g.finish();
}

fn circle_flow(c: &mut Criterion) {
    let p = HomotheticCurveParams::new(1.0, 1.0, 0.0).unwrap();
    let range = ThetaRange::new(0.0, std::f64::consts::TAU).unwrap();
    let mut g = c.benchmark_group("flow");
    g.sample_size(10);
    g.bench_function("circle 128 to t=0.1", |b| {
        b.iter(|| {
            let curve = sample_homothetic_curve(&p, range, 128).unwrap();
            flow_until(FlowState::new(curve, 1e-3).unwrap(), black_box(0.1)).unwrap()
        })
    });
    let spiral = HomotheticCurveParams::new(2.0, 1.0, 1.0).unwrap();
    let arc = ThetaRange::new(0.0, 2.0).unwrap();
    g.bench_function("spiral self-similarity t=0.1", |b| {
        b.iter(|| self_similarity_check_with(&spiral, arc, black_box(0.1), 200, 128).unwrap())
    });
    g.finish();
}

criterion_group!(benches, sampling, circle_flow);
criterion_main!(benches);
