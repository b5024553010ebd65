use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use imcf_solitons::verification::{
    clifford_expander_residual, minkowski_first_identity, minkowski_second_identity, RevolutionProfile,
    TorusGrid,
};
use std::hint::black_box;

fn minkowski(c: &mut Criterion) {
    let torus = RevolutionProfile::torus(3, 1.0, 0.1, 4096).unwrap();
    c.bench_function("minkowski first, thin torus 4096", |b| {
        b.iter(|| minkowski_first_identity(black_box(&torus)).unwrap())
    });
    c.bench_function("minkowski second, thin torus 4096", |b| {
        b.iter(|| minkowski_second_identity(black_box(&torus)).unwrap())
    });
}

fn clifford(c: &mut Criterion) {
    let mut g = c.benchmark_group("clifford residual");
    for m in [32, 128] {
        let grid = TorusGrid::new(m).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(m), &grid, |b, grid| {
            b.iter(|| clifford_expander_residual(black_box(grid)))
        });
    }
    g.finish();
}

criterion_group!(benches, minkowski, clifford);
criterion_main!(benches);
