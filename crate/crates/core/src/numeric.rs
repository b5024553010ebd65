//! Finite differences, point-set distances, quadrature and interpolation.

use crate::error::{Result, SolitonError};
use crate::geometry::{PlaneCurve, Vec2};

/// Three-point second derivative on a possibly nonuniform grid, exact for
/// quadratics.
pub fn finite_diff_second(s_values: &[f64], f_values: &[f64], i: usize) -> Result<f64> {
    let len = s_values.len().min(f_values.len());
    if i == 0 || i + 1 >= len {
        return Err(SolitonError::IndexOutOfRange { index: i, len });
    }
    let (s0, s1, s2) = (s_values[i - 1], s_values[i], s_values[i + 1]);
    let (f0, f1, f2) = (f_values[i - 1], f_values[i], f_values[i + 1]);
    let h0 = s1 - s0;
    let h1 = s2 - s1;
    if !(h0 > 0.0 && h1 > 0.0) {
        return Err(SolitonError::InvalidParameter(
            "stencil abscissae must be strictly increasing".into(),
        ));
    }
    Ok(2.0 * (h0 * f2 - (h0 + h1) * f1 + h1 * f0) / (h0 * h1 * (h0 + h1)))
}

/// Three-point first derivative on a possibly nonuniform grid, exact for
/// quadratics. Abscissae may be increasing or decreasing.
pub fn finite_diff_first(s_values: &[f64], f_values: &[f64], i: usize) -> Result<f64> {
    let len = s_values.len().min(f_values.len());
    if i == 0 || i + 1 >= len {
        return Err(SolitonError::IndexOutOfRange { index: i, len });
    }
    let h0 = s_values[i] - s_values[i - 1];
    let h1 = s_values[i + 1] - s_values[i];
    let (f0, f1, f2) = (f_values[i - 1], f_values[i], f_values[i + 1]);
    Ok((h0 * h0 * f2 - h1 * h1 * f0 + (h1 * h1 - h0 * h0) * f1) / (h0 * h1 * (h0 + h1)))
}

/// Symmetric Hausdorff distance between the sample point sets of two curves.
pub fn hausdorff_distance(a: &PlaneCurve, b: &PlaneCurve) -> Result<f64> {
    hausdorff_points(&a.points(), &b.points())
}

/// Symmetric Hausdorff distance between two finite point sets (brute force).
pub fn hausdorff_points(a: &[Vec2], b: &[Vec2]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(SolitonError::EmptyCurve);
    }
    Ok(directed_hausdorff(a, b).max(directed_hausdorff(b, a)))
}

/// `max_{p in a} min_{q in b} |p - q|`.
pub fn directed_hausdorff(a: &[Vec2], b: &[Vec2]) -> f64 {
    a.iter()
        .map(|p| {
            b.iter()
                .map(|q| (*p - *q).norm_sq())
                .fold(f64::INFINITY, f64::min)
                .sqrt()
        })
        .fold(0.0, f64::max)
}

/// Distance from `p` to the segment `[a, b]`.
pub fn point_segment_distance(p: Vec2, a: Vec2, b: Vec2) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sq();
    if len2 == 0.0 {
        return p.distance(a);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.distance(a + t * ab)
}

/// Distance from `p` to a polyline (closed polylines include the last edge).
pub fn point_polyline_distance(p: Vec2, poly: &[Vec2], closed: bool) -> f64 {
    match poly.len() {
        0 => f64::INFINITY,
        1 => p.distance(poly[0]),
        m => {
            let mut best = f64::INFINITY;
            for i in 0..m - 1 {
                best = best.min(point_segment_distance(p, poly[i], poly[i + 1]));
            }
            if closed {
                best = best.min(point_segment_distance(p, poly[m - 1], poly[0]));
            }
            best
        }
    }
}

/// `max_{p in points} dist(p, polyline)`.
pub fn directed_polyline_distance(points: &[Vec2], poly: &[Vec2], closed: bool) -> f64 {
    points
        .iter()
        .map(|p| point_polyline_distance(*p, poly, closed))
        .fold(0.0, f64::max)
}

/// Symmetric Hausdorff distance between two polylines, measured from the
/// vertices of each to the edges of the other.
pub fn hausdorff_polylines(a: &[Vec2], a_closed: bool, b: &[Vec2], b_closed: bool) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(SolitonError::EmptyCurve);
    }
    Ok(directed_polyline_distance(a, b, b_closed).max(directed_polyline_distance(b, a, a_closed)))
}

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1].
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gauss_kronrod_15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let x = h * XGK[j];
        let pair = f(c - x) + f(c + x);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

/// Adaptive Gauss-Kronrod quadrature of `f` over `[a, b]`.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> f64 {
    fn recurse<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
        let (val, err) = gauss_kronrod_15(f, a, b);
        if err <= tol.max(f64::EPSILON * val.abs()) || depth == 0 {
            return val;
        }
        let m = 0.5 * (a + b);
        recurse(f, a, m, 0.5 * tol, depth - 1) + recurse(f, m, b, 0.5 * tol, depth - 1)
    }
    if a == b {
        return 0.0;
    }
    let (coarse, _) = gauss_kronrod_15(&f, a, b);
    let tol = rel_tol * coarse.abs().max(f64::MIN_POSITIVE);
    recurse(&f, a, b, tol, 40)
}

/// Composite Simpson rule on `values` sampled at uniform spacing `step`.
/// `values.len() - 1` must be even.
pub fn simpson(values: &[f64], step: f64) -> Result<f64> {
    let m = values.len();
    if m < 3 || (m - 1) % 2 != 0 {
        return Err(SolitonError::InvalidParameter(format!(
            "Simpson rule needs an odd number (>= 3) of nodes, got {m}"
        )));
    }
    let mut acc = values[0] + values[m - 1];
    for (i, v) in values.iter().enumerate().take(m - 1).skip(1) {
        acc += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
    }
    Ok(acc * step / 3.0)
}

/// Least-squares quadratic `a s^2 + b s + c` with its max absolute residual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticFit {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub max_residual: f64,
}

impl QuadraticFit {
    pub fn eval(&self, s: f64) -> f64 {
        (self.a * s + self.b) * s + self.c
    }
}

pub fn fit_quadratic(s: &[f64], y: &[f64]) -> Result<QuadraticFit> {
    let m = s.len().min(y.len());
    if m < 3 {
        return Err(SolitonError::InvalidParameter(
            "quadratic fit needs at least 3 points".into(),
        ));
    }
    let lo = s[..m].iter().copied().fold(f64::INFINITY, f64::min);
    let hi = s[..m].iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mid = 0.5 * (lo + hi);
    let half = (0.5 * (hi - lo)).max(f64::MIN_POSITIVE);

    // Normal equations in the scaled variable u in [-1, 1].
    let mut ata = [[0.0; 3]; 3];
    let mut aty = [0.0; 3];
    for k in 0..m {
        let u = (s[k] - mid) / half;
        let row = [u * u, u, 1.0];
        for i in 0..3 {
            for j in 0..3 {
                ata[i][j] += row[i] * row[j];
            }
            aty[i] += row[i] * y[k];
        }
    }
    let [au, bu, cu] = solve3(ata, aty)?;
    let a = au / (half * half);
    let b = bu / half - 2.0 * au * mid / (half * half);
    let c = au * mid * mid / (half * half) - bu * mid / half + cu;
    let max_residual = (0..m)
        .map(|k| {
            let u = (s[k] - mid) / half;
            ((au * u + bu) * u + cu - y[k]).abs()
        })
        .fold(0.0, f64::max);
    Ok(QuadraticFit {
        a,
        b,
        c,
        max_residual,
    })
}

fn solve3(mut m: [[f64; 3]; 3], mut rhs: [f64; 3]) -> Result<[f64; 3]> {
    for col in 0..3 {
        let piv = (col..3)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .unwrap();
        if m[piv][col].abs() < 1e-300 {
            return Err(SolitonError::InvalidParameter(
                "singular least-squares system".into(),
            ));
        }
        m.swap(col, piv);
        rhs.swap(col, piv);
        for r in col + 1..3 {
            let f = m[r][col] / m[col][col];
            for k in col..3 {
                m[r][k] -= f * m[col][k];
            }
            rhs[r] -= f * rhs[col];
        }
    }
    let mut x = [0.0; 3];
    for r in (0..3).rev() {
        let mut acc = rhs[r];
        for k in r + 1..3 {
            acc -= m[r][k] * x[k];
        }
        x[r] = acc / m[r][r];
    }
    Ok(x)
}

/// Interpolating cubic spline, natural or periodic.
#[derive(Debug, Clone)]
pub struct CubicSpline {
    knots: Vec<f64>,
    values: Vec<f64>,
    second: Vec<f64>,
}

impl CubicSpline {
    /// Natural spline through `(knots[i], values[i])`; knots strictly increasing.
    pub fn natural(knots: &[f64], values: &[f64]) -> Self {
        let m = knots.len();
        let mut second = vec![0.0; m];
        if m > 2 {
            let n = m - 2;
            let mut sub = vec![0.0; n];
            let mut diag = vec![0.0; n];
            let mut sup = vec![0.0; n];
            let mut rhs = vec![0.0; n];
            for k in 0..n {
                let i = k + 1;
                let h0 = knots[i] - knots[i - 1];
                let h1 = knots[i + 1] - knots[i];
                sub[k] = h0;
                diag[k] = 2.0 * (h0 + h1);
                sup[k] = h1;
                rhs[k] = 6.0 * ((values[i + 1] - values[i]) / h1 - (values[i] - values[i - 1]) / h0);
            }
            let inner = thomas(&sub, &diag, &sup, &rhs);
            second[1..m - 1].copy_from_slice(&inner);
        }
        Self {
            knots: knots.to_vec(),
            values: values.to_vec(),
            second,
        }
    }

    /// Periodic spline; `knots` has `m + 1` entries, the last closing the
    /// period, and `values` has `m` entries.
    pub fn periodic(knots: &[f64], values: &[f64]) -> Self {
        let m = values.len();
        assert_eq!(knots.len(), m + 1, "periodic spline needs a closing knot");
        let h: Vec<f64> = (0..m).map(|i| knots[i + 1] - knots[i]).collect();
        let v = |i: usize| values[i % m];
        // Row i: h[i-1] M[i-1] + 2(h[i-1]+h[i]) M[i] + h[i] M[i+1] = rhs
        let mut sub = vec![0.0; m];
        let mut diag = vec![0.0; m];
        let mut sup = vec![0.0; m];
        let mut rhs = vec![0.0; m];
        for i in 0..m {
            let hp = h[(i + m - 1) % m];
            let hn = h[i];
            sub[i] = hp;
            diag[i] = 2.0 * (hp + hn);
            sup[i] = hn;
            rhs[i] = 6.0 * ((v(i + 1) - v(i)) / hn - (v(i) - v(i + m - 1)) / hp);
        }
        let second = cyclic_thomas(&sub, &diag, &sup, &rhs);
        let mut vals = values.to_vec();
        vals.push(values[0]);
        let mut sec = second;
        sec.push(sec[0]);
        Self {
            knots: knots.to_vec(),
            values: vals,
            second: sec,
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        let k = &self.knots;
        let i = match k.partition_point(|&x| x <= t) {
            0 => 0,
            p if p >= k.len() => k.len() - 2,
            p => p - 1,
        };
        let h = k[i + 1] - k[i];
        let a = (k[i + 1] - t) / h;
        let b = (t - k[i]) / h;
        a * self.values[i]
            + b * self.values[i + 1]
            + ((a * a * a - a) * self.second[i] + (b * b * b - b) * self.second[i + 1]) * h * h / 6.0
    }
}

fn thomas(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    c[0] = sup[0] / diag[0];
    d[0] = rhs[0] / diag[0];
    for i in 1..n {
        let den = diag[i] - sub[i] * c[i - 1];
        c[i] = sup[i] / den;
        d[i] = (rhs[i] - sub[i] * d[i - 1]) / den;
    }
    let mut x = vec![0.0; n];
    x[n - 1] = d[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = d[i] - c[i] * x[i + 1];
    }
    x
}

/// Cyclic tridiagonal solve (Sherman-Morrison); `sub[0]` couples row 0 to the
/// last unknown and `sup[n-1]` couples the last row to unknown 0.
fn cyclic_thomas(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let alpha = sup[n - 1];
    let beta = sub[0];
    let gamma = -diag[0];
    let mut d2 = diag.to_vec();
    d2[0] -= gamma;
    d2[n - 1] -= alpha * beta / gamma;
    let x = thomas(sub, &d2, sup, rhs);
    let mut u = vec![0.0; n];
    u[0] = gamma;
    u[n - 1] = alpha;
    let z = thomas(sub, &d2, sup, &u);
    let fact = (x[0] + beta * x[n - 1] / gamma) / (1.0 + z[0] + beta * z[n - 1] / gamma);
    x.iter().zip(&z).map(|(xi, zi)| xi - fact * zi).collect()
}
