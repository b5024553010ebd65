//! Right-hand sides of the rotational profile equation in its three charts.

use crate::error::{Result, SolitonError};

fn check_radius(h: f64, r: f64) -> Result<()> {
    if r > 0.0 {
        Ok(())
    } else {
        Err(SolitonError::NonpositiveRadius { h, r })
    }
}

/// `r''` for the graph `r(h)`:
/// `r''/(1+r'^2) = (n-1)/r - (1+r'^2)/(C(r - h r'))`.
pub fn profile_rhs_r_of_h(n: usize, c_const: f64, h: f64, r: f64, rp: f64) -> Result<f64> {
    check_radius(h, r)?;
    let support = r - h * rp;
    if support == 0.0 || !support.is_finite() {
        return Err(SolitonError::SupportDegenerate { h, r });
    }
    let q = 1.0 + rp * rp;
    Ok(q * ((n as f64 - 1.0) / r - q / (c_const * support)))
}

/// `h''` for the graph `h(r)`:
/// `h''/(1+h'^2) = -(n-1)h'/r + (1+h'^2)/(C(r h' - h))`.
pub fn profile_rhs_h_of_r(n: usize, c_const: f64, r: f64, h: f64, hp: f64) -> Result<f64> {
    check_radius(h, r)?;
    let support = r * hp - h;
    if support == 0.0 || !support.is_finite() {
        return Err(SolitonError::SupportDegenerate { h, r });
    }
    let q = 1.0 + hp * hp;
    Ok(q * (-(n as f64 - 1.0) * hp / r + q / (c_const * support)))
}

/// `dφ/ds` for the arc-length chart `r_s = cos φ`, `h_s = sin φ`.
pub fn profile_rhs_arclength(n: usize, c_const: f64, r: f64, h: f64, phi: f64) -> Result<f64> {
    check_radius(h, r)?;
    let (s, c) = phi.sin_cos();
    let support = r * s - h * c;
    if support == 0.0 || !support.is_finite() {
        return Err(SolitonError::SupportDegenerate { h, r });
    }
    Ok(-(n as f64 - 1.0) * s / r + 1.0 / (c_const * support))
}

/// Left side of the parametrization-free profile equation minus `1/C`:
/// `-(κ_prof + (n-1) ḣ/(r|v|)) (-ḣ r + ṙ h)/|v| - 1/C`,
/// with `κ_prof = (ṙ ḧ - ḣ r̈)/|v|³`.
pub fn rot_profile_residual(
    n: usize,
    c_const: f64,
    (r, h): (f64, f64),
    (rd, hd): (f64, f64),
    (rdd, hdd): (f64, f64),
) -> f64 {
    let speed = rd.hypot(hd);
    let kappa = (rd * hdd - hd * rdd) / speed.powi(3);
    let rot = (n as f64 - 1.0) * hd / (r * speed);
    let support = (-hd * r + rd * h) / speed;
    -(kappa + rot) * support - 1.0 / c_const
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cylinder_is_stationary_at_critical_constant() {
        for n in 2..6 {
            let c = 1.0 / (n as f64 - 1.0);
            for &h in &[-3.0, 0.0, 2.5] {
                assert_eq!(profile_rhs_r_of_h(n, c, h, 1.7, 0.0).unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn hand_evaluation() {
        assert_eq!(profile_rhs_r_of_h(2, 1.0, 0.0, 1.0, 1.0).unwrap(), -2.0);
    }

    #[test]
    fn half_circle_solves_both_charts() {
        let rr = 1.3;
        for n in 2..5 {
            let c = 1.0 / n as f64;
            for k in 0..9 {
                let h = -1.1 + 0.27 * k as f64;
                let r = (rr * rr - h * h).sqrt();
                let rp = -h / r;
                let rpp = -rr * rr / r.powi(3);
                let got = profile_rhs_r_of_h(n, c, h, r, rp).unwrap();
                assert!((got - rpp).abs() < 1e-12 * rpp.abs().max(1.0));
                // lower half circle as h(r)
                if h < 0.0 {
                    let hp = -r / h;
                    let hpp = -rr * rr / h.powi(3);
                    let got = profile_rhs_h_of_r(n, c, r, h, hp).unwrap();
                    assert!((got - hpp).abs() < 1e-11 * hpp.abs().max(1.0));
                }
                let res = rot_profile_residual(n, c, (r, h), (rp, 1.0), (rpp, 0.0));
                assert!(res.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn critical_constant_matches_rearranged_form() {
        for n in 2..5 {
            let c = 1.0 / (n as f64 - 1.0);
            for &(h, r, rp) in &[(-1.0, 1.0, 0.5), (0.4, 2.0, -0.3), (-2.0, 0.3, 1.7)] {
                let a = profile_rhs_r_of_h(n, c, h, r, rp).unwrap();
                let b = (n as f64 - 1.0) * (1.0 + rp * rp) * rp * (-h - rp * r) / (r * (r - h * rp));
                assert!((a - b).abs() < 1e-12 * a.abs().max(1.0));
            }
        }
    }

    #[test]
    fn degenerate_states_are_errors() {
        assert!(matches!(
            profile_rhs_r_of_h(2, 1.0, 0.0, 0.0, 1.0),
            Err(SolitonError::NonpositiveRadius { .. })
        ));
        assert!(matches!(
            profile_rhs_r_of_h(2, 1.0, 1.0, 1.0, 1.0),
            Err(SolitonError::SupportDegenerate { .. })
        ));
        assert!(matches!(
            profile_rhs_h_of_r(2, 1.0, 1.0, 1.0, 1.0),
            Err(SolitonError::SupportDegenerate { .. })
        ));
    }

    #[test]
    fn arclength_chart_agrees_with_graph_chart() {
        let (n, c) = (3, 0.8);
        let (r, h, hp) = (1.2, -0.7, 0.4);
        let hpp = profile_rhs_h_of_r(n, c, r, h, hp).unwrap();
        let phi = hp.atan();
        let phis = profile_rhs_arclength(n, c, r, h, phi).unwrap();
        // h'' = φ_r sec²φ and φ_s = φ_r cos φ
        let expected = phis / phi.cos() / phi.cos().powi(2);
        assert!((expected - hpp).abs() < 1e-12);
        // reversing orientation flips the sign of φ_s
        let back = profile_rhs_arclength(n, c, r, h, phi + std::f64::consts::PI).unwrap();
        assert!((back + phis).abs() < 1e-12);
    }
}
