//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

/// Profile equation solved for `r''` in the graph chart `r(h)`, written out
/// directly from `r''/(1+r'^2) = (n-1)/r - (1+r'^2)/(C(r - h r'))`.
pub fn oracle_rpp(n: usize, c: f64, h: f64, r: f64, p: f64) -> f64 {
    let q = 1.0 + p * p;
    q * ((n as f64 - 1.0) / r - q / (c * (r - h * p)))
}

/// Fixed-step classical RK4 for `r(h)` from `(h0, r0, r0p)`, evaluated at
/// `queries` (all on one side of `h0`) by cubic Hermite interpolation
/// between steps.
pub fn rk4_profile(
    n: usize,
    c: f64,
    h0: f64,
    r0: f64,
    r0p: f64,
    step: f64,
    queries: &[f64],
) -> Vec<f64> {
    if queries.is_empty() {
        return Vec::new();
    }
    let dir = if queries[0] >= h0 { 1.0 } else { -1.0 };
    assert!(queries.iter().all(|&q| (q - h0) * dir >= 0.0));
    let mut order: Vec<usize> = (0..queries.len()).collect();
    order.sort_by(|&a, &b| ((queries[a] - h0) * dir).total_cmp(&((queries[b] - h0) * dir)));
    let mut out = vec![f64::NAN; queries.len()];

    let dh = step * dir;
    let f = |h: f64, y: [f64; 2]| [y[1], oracle_rpp(n, c, h, y[0], y[1])];
    let (mut h, mut y, mut i) = (h0, [r0, r0p], 0u64);
    let mut k = 0;
    while k < order.len() {
        let q = queries[order[k]];
        if q == h {
            out[order[k]] = y[0];
            k += 1;
            continue;
        }
        let k1 = f(h, y);
        let k2 = f(h + 0.5 * dh, [y[0] + 0.5 * dh * k1[0], y[1] + 0.5 * dh * k1[1]]);
        let k3 = f(h + 0.5 * dh, [y[0] + 0.5 * dh * k2[0], y[1] + 0.5 * dh * k2[1]]);
        let k4 = f(h + dh, [y[0] + dh * k3[0], y[1] + dh * k3[1]]);
        let yn = [
            y[0] + dh / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
            y[1] + dh / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
        ];
        i += 1;
        let hn = h0 + dh * i as f64;
        while k < order.len() && (queries[order[k]] - hn) * dir <= 0.0 {
            let u = (queries[order[k]] - h) / dh;
            let (h00, h10) = (2.0 * u.powi(3) - 3.0 * u * u + 1.0, u.powi(3) - 2.0 * u * u + u);
            let (h01, h11) = (-2.0 * u.powi(3) + 3.0 * u * u, u.powi(3) - u * u);
            out[order[k]] = h00 * y[0] + h10 * dh * y[1] + h01 * yn[0] + h11 * dh * yn[1];
            k += 1;
        }
        h = hn;
        y = yn;
        assert!(y[0] > 0.0 && y[0].is_finite(), "oracle left the domain at h = {h}");
    }
    out
}

/// Oracle values at `queries` on either side of `h0`.
pub fn rk4_profile_both(
    n: usize,
    c: f64,
    h0: f64,
    r0: f64,
    r0p: f64,
    step: f64,
    queries: &[f64],
) -> Vec<f64> {
    let (up, down): (Vec<usize>, Vec<usize>) = (0..queries.len()).partition(|&i| queries[i] >= h0);
    let qu: Vec<f64> = up.iter().map(|&i| queries[i]).collect();
    let qd: Vec<f64> = down.iter().map(|&i| queries[i]).collect();
    let ru = rk4_profile(n, c, h0, r0, r0p, step, &qu);
    let rd = rk4_profile(n, c, h0, r0, r0p, step, &qd);
    let mut out = vec![0.0; queries.len()];
    for (k, &i) in up.iter().enumerate() {
        out[i] = ru[k];
    }
    for (k, &i) in down.iter().enumerate() {
        out[i] = rd[k];
    }
    out
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

use imcf_solitons::plane::{support_function, HomotheticCurveParams, ThetaRange};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random homothetic curves cycling through `c < 1`, `c = 1`, `c > 1`, each
/// with a θ-range on which `|ν|` stays at least 5% of its maximum.
pub fn random_soliton_cases(seed: u64, count: usize) -> Vec<(HomotheticCurveParams, ThetaRange)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let c = match out.len() % 3 {
            0 => loop {
                let c: f64 = rng.gen_range(-2.0..0.9);
                if c.abs() > 0.1 {
                    break c;
                }
            },
            1 => 1.0,
            _ => rng.gen_range(1.1..4.0),
        };
        let (mu1, mu2): (f64, f64) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        if mu1.hypot(mu2) < 0.2 {
            continue;
        }
        let p = HomotheticCurveParams::new(c, mu1, mu2).unwrap();
        let lo: f64 = rng.gen_range(-2.0..1.0);
        let hi = lo + rng.gen_range(0.2..1.5);
        let nus: Vec<f64> = (0..=400)
            .map(|i| support_function(&p, lo + (hi - lo) * i as f64 / 400.0).nu)
            .collect();
        let max = nus.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let same_sign = nus.iter().all(|v| v.signum() == nus[0].signum());
        if same_sign && nus.iter().all(|v| v.abs() >= 0.05 * max) {
            out.push((p, ThetaRange::new(lo, hi).unwrap()));
        }
    }
    out
}
