use std::f64::consts::TAU;

use imcf_solitons::flow::{
    flow_step, flow_until, self_similarity_check, self_similarity_check_with,
    translator_flow_check, FlowState,
};
use imcf_solitons::plane::{sample_homothetic_curve, HomotheticCurveParams, ThetaRange};
use imcf_solitons::{PlaneCurve, SolitonError, Vec2};

fn unit_circle(m: usize) -> PlaneCurve {
    let p = HomotheticCurveParams::new(1.0, 1.0, 0.0).unwrap();
    sample_homothetic_curve(&p, ThetaRange::new(0.0, TAU).unwrap(), m).unwrap()
}

fn mean_radius(c: &PlaneCurve) -> f64 {
    let pts = c.points();
    pts.iter().map(|p| p.norm()).sum::<f64>() / pts.len() as f64
}

#[test]
fn circle_grows_exponentially() {
    let mut state = FlowState::new(unit_circle(512), 1e-4).unwrap();
    for t in [0.25, 0.5, 1.0] {
        state = flow_until(state, t).unwrap();
        let log_growth = mean_radius(&state.curve).ln();
        assert!((log_growth - t).abs() <= 1e-3, "t {t}: {log_growth}");
    }
}

#[test]
fn zero_step_changes_nothing() {
    let state = FlowState::new(unit_circle(64), 0.0).unwrap();
    assert_eq!(flow_step(&state).unwrap(), state);
}

#[test]
fn inflected_curve_breaks_down() {
    let pts: Vec<Vec2> = (0..201)
        .map(|i| {
            let x = -1.0 + 2.0 * i as f64 / 200.0;
            Vec2::new(x, x * x * x)
        })
        .collect();
    let curve = PlaneCurve::from_polyline(&pts, false).unwrap();
    let state = FlowState::new(curve, 1e-4).unwrap();
    assert!(matches!(
        flow_until(state, 0.1),
        Err(SolitonError::CurvatureDegenerate { .. })
    ));
}

#[test]
fn circle_self_similarity() {
    let p = HomotheticCurveParams::new(1.0, 1.0, 0.0).unwrap();
    let d = self_similarity_check(&p, ThetaRange::new(0.0, TAU).unwrap(), 0.5, 2000).unwrap();
    assert!(d <= 1e-3 * 0.5f64.exp(), "{d}");
}

#[test]
fn spiral_and_involute_are_self_similar() {
    for (c, mu1, mu2, a, b) in [(2.0, 1.0, 1.0, 0.0, 2.0), (1.0, 0.0, 1.0, 1.0, 3.0)] {
        let p = HomotheticCurveParams::new(c, mu1, mu2).unwrap();
        let r = ThetaRange::new(a, b).unwrap();
        let s = self_similarity_check_with(&p, r, 0.2, 2000, 256).unwrap();
        assert!(s.distance <= 5e-3 * s.scale, "c {c}: {s:?}");
    }
}

#[test]
fn dilation_factor_follows_the_speed_constant() {
    for (c, mu1, mu2, a, b) in [
        (0.5, 1.0, 0.3, 0.0, 1.5),
        (1.0, 0.0, 1.0, 1.0, 3.0),
        (2.0, 1.0, 1.0, 0.0, 2.0),
    ] {
        let p = HomotheticCurveParams::new(c, mu1, mu2).unwrap();
        let r = ThetaRange::new(a, b).unwrap();
        for t in [0.25, 0.5] {
            let s = self_similarity_check_with(&p, r, t, 2000, 128).unwrap();
            let err = (s.dilation_fit / s.dilation_expected - 1.0).abs();
            assert!(err <= 0.01, "c {c} t {t}: {s:?}");
        }
    }
}

#[test]
fn cycloid_translates_upwards() {
    let t = 0.1;
    let f = translator_flow_check(1.5, 4.78, 256, t, 1000).unwrap();
    assert!(f.distance <= 1e-3, "{f:?}");
    let drift = (f.translation - Vec2::new(0.0, t)).norm() / t;
    assert!(drift <= 1e-3, "{f:?}");
}
