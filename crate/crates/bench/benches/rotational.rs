use criterion::{criterion_group, criterion_main, Criterion};
use imcf_solitons::rotational::{build_infinite_bottle, classify_hyperplane_expander, shoot_from_axis, Span};
use std::hint::black_box;

fn bottle(c: &mut Criterion) {
    c.bench_function("bottle n=2 h0=-1 r0'=0.5", |b| {
        b.iter(|| build_infinite_bottle(2, black_box(1.0), -1.0, 0.5, None).unwrap())
    });
}

fn shoot(c: &mut Criterion) {
    let span = Span::uniform(100.0).unwrap();
    c.bench_function("shoot n=3 C=1 h0=-1", |b| {
        b.iter(|| shoot_from_axis(3, black_box(1.0), -1.0, span).unwrap())
    });
}

fn classify(c: &mut Criterion) {
    let mut g = c.benchmark_group("classify plane n=2");
    g.sample_size(10);
    for cc in [0.7, 1.0, 2.0] {
        g.bench_function(format!("C={cc}"), |b| {
            b.iter(|| classify_hyperplane_expander(2, black_box(cc), -1.0, None).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, bottle, shoot, classify);
criterion_main!(benches);
