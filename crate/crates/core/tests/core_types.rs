use std::f64::consts::TAU;

use imcf_solitons::plane::{sample_homothetic_curve, HomotheticCurveParams, ThetaRange};
use imcf_solitons::{
    finite_diff_second, hausdorff_distance, PlaneCurve, SolitonError, SolitonSpec, Vec2,
};
use proptest::prelude::*;

fn circle(radius: f64, center: Vec2, m: usize) -> PlaneCurve {
    let pts: Vec<Vec2> = (0..m)
        .map(|i| center + radius * Vec2::from_angle(TAU * i as f64 / m as f64))
        .collect();
    PlaneCurve::from_polyline(&pts, true).unwrap()
}

fn square(shift: Vec2, per_side: usize) -> PlaneCurve {
    let corners = [
        Vec2::new(0.0, 0.0),
        Vec2::new(1.0, 0.0),
        Vec2::new(1.0, 1.0),
        Vec2::new(0.0, 1.0),
    ];
    let mut pts = Vec::new();
    for k in 0..4 {
        let (a, b) = (corners[k], corners[(k + 1) % 4]);
        for i in 0..per_side {
            let u = i as f64 / per_side as f64;
            pts.push(shift + a + u * (b - a));
        }
    }
    PlaneCurve::from_polyline(&pts, true).unwrap()
}

#[test]
fn hausdorff_examples() {
    let a = circle(1.0, Vec2::ZERO, 400);
    assert_eq!(hausdorff_distance(&a, &a).unwrap(), 0.0);
    let b = circle(2.0, Vec2::ZERO, 400);
    assert!((hausdorff_distance(&a, &b).unwrap() - 1.0).abs() < 1e-3);
    let s = square(Vec2::ZERO, 100);
    let t = square(Vec2::new(0.1, 0.0), 100);
    assert!((hausdorff_distance(&s, &t).unwrap() - 0.1).abs() < 1e-12);
}

#[test]
fn finite_differences() {
    let s = [0.0, 0.3, 1.1, 1.5, 2.6];
    let sq: Vec<f64> = s.iter().map(|x| x * x).collect();
    let lin: Vec<f64> = s.iter().map(|x| 3.0 * x - 1.0).collect();
    for i in 1..4 {
        assert!((finite_diff_second(&s, &sq, i).unwrap() - 2.0).abs() < 1e-12);
        assert!(finite_diff_second(&s, &lin, i).unwrap().abs() < 1e-12);
    }
    assert!(matches!(
        finite_diff_second(&s, &sq, 0),
        Err(SolitonError::IndexOutOfRange { .. })
    ));
    assert!(matches!(
        finite_diff_second(&s, &sq, 4),
        Err(SolitonError::IndexOutOfRange { .. })
    ));
    let h = 1e-3;
    let grid = [1.0 - h, 1.0, 1.0 + h];
    let cube: Vec<f64> = grid.iter().map(|x| x * x * x).collect();
    assert!((finite_diff_second(&grid, &cube, 1).unwrap() - 6.0).abs() < 1e-5);
}

#[test]
fn soliton_spec_constructors_enforce_invariants() {
    assert!(SolitonSpec::homothetic_curve(0.0).is_err());
    assert!(SolitonSpec::rotational(1, 1.0).is_err());
    assert!(SolitonSpec::rotational(2, 0.0).is_err());
    assert!(SolitonSpec::translator(&[0.0, 0.0]).is_err());
    assert!(SolitonSpec::translator(&[0.0, 1.0]).is_ok());
    assert!(SolitonSpec::translator(&[0.0, 0.0, 1.0]).is_ok());
}

#[test]
fn sampled_frames_are_orthonormal() {
    let p = HomotheticCurveParams::new(2.0, 1.0, 1.0).unwrap();
    let curve = sample_homothetic_curve(&p, ThetaRange::new(0.0, 2.0).unwrap(), 300).unwrap();
    for s in curve.samples() {
        assert!((s.tangent.norm() - 1.0).abs() <= 1e-12);
        assert!((s.normal.norm() - 1.0).abs() <= 1e-12);
        assert!(s.tangent.dot(s.normal).abs() <= 1e-12);
        assert!((s.normal - s.tangent.perp()).norm() <= 1e-12);
    }
}

fn random_circle() -> impl Strategy<Value = PlaneCurve> {
    (0.2..3.0f64, -2.0..2.0f64, -2.0..2.0f64).prop_map(|(r, x, y)| circle(r, Vec2::new(x, y), 256))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hausdorff_is_a_metric(a in random_circle(), b in random_circle(), c in random_circle()) {
        let ab = hausdorff_distance(&a, &b).unwrap();
        let ba = hausdorff_distance(&b, &a).unwrap();
        prop_assert_eq!(ab, ba);
        let bc = hausdorff_distance(&b, &c).unwrap();
        let ac = hausdorff_distance(&a, &c).unwrap();
        // chord spacing of the coarsest circle bounds the sampling error
        let spacing = [&a, &b, &c]
            .iter()
            .map(|k| k.samples()[0].point.distance(k.samples()[1].point))
            .fold(0.0, f64::max);
        prop_assert!(ac <= ab + bc + 2.0 * spacing);
    }
}
