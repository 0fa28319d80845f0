#![allow(dead_code)]

use writhe_lab::{PolygonalCurve, Vec3};

// 5-point Gauss-Legendre on [0, 1]
const NODES: [f64; 5] = [
    0.046910077030668,
    0.230765344947158,
    0.5,
    0.769234655052842,
    0.953089922969332,
];
const WEIGHTS: [f64; 5] = [
    0.118463442528095,
    0.239314335249683,
    0.284444444444444,
    0.239314335249683,
    0.118463442528095,
];

fn gl_nodes() -> ([f64; 5], [f64; 5]) {
    // refine the tabulated values to full precision by Newton on P5
    let mut x = NODES;
    for xi in &mut x {
        let mut t = 2.0 * *xi - 1.0;
        for _ in 0..5 {
            let (p, dp) = legendre5(t);
            t -= p / dp;
        }
        *xi = (t + 1.0) / 2.0;
    }
    let mut w = WEIGHTS;
    for (wi, xi) in w.iter_mut().zip(x) {
        let t = 2.0 * xi - 1.0;
        let (_, dp) = legendre5(t);
        *wi = 1.0 / ((1.0 - t * t) * dp * dp);
    }
    (x, w)
}

fn legendre5(t: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, t);
    for k in 2..=5 {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let dp = 5.0 * (t * p1 - p0) / (t * t - 1.0);
    (p1, dp)
}

fn integrand(p1: Vec3, d1: Vec3, p3: Vec3, d2: Vec3, s: f64, t: f64) -> f64 {
    let r = (p1 + d1 * s) - (p3 + d2 * t);
    r.dot(d1.cross(d2)) / r.norm().powi(3)
}

fn rule(p1: Vec3, d1: Vec3, p3: Vec3, d2: Vec3, s0: f64, s1: f64, t0: f64, t1: f64) -> f64 {
    let (x, w) = gl_nodes();
    let mut sum = 0.0;
    for i in 0..5 {
        for j in 0..5 {
            let s = s0 + (s1 - s0) * x[i];
            let t = t0 + (t1 - t0) * x[j];
            sum += w[i] * w[j] * integrand(p1, d1, p3, d2, s, t);
        }
    }
    sum * (s1 - s0) * (t1 - t0)
}

fn adaptive(p1: Vec3, d1: Vec3, p3: Vec3, d2: Vec3, b: [f64; 4], whole: f64, tol: f64, depth: u32) -> f64 {
    let [s0, s1, t0, t1] = b;
    let (sm, tm) = ((s0 + s1) / 2.0, (t0 + t1) / 2.0);
    let quads = [[s0, sm, t0, tm], [sm, s1, t0, tm], [s0, sm, tm, t1], [sm, s1, tm, t1]];
    let parts: Vec<f64> = quads.iter().map(|q| rule(p1, d1, p3, d2, q[0], q[1], q[2], q[3])).collect();
    let refined: f64 = parts.iter().sum();
    if (refined - whole).abs() < tol || depth == 0 {
        return refined;
    }
    quads
        .iter()
        .zip(parts)
        .map(|(q, w)| adaptive(p1, d1, p3, d2, *q, w, tol / 4.0, depth - 1))
        .sum()
}

/// Adaptive tensor Gauss-Legendre quadrature of
/// ∫∫ (x - y) · (dx × dy) / |x - y|³ over two segments.
pub fn gauss_integral(p1: Vec3, p2: Vec3, p3: Vec3, p4: Vec3) -> f64 {
    let (d1, d2) = (p2 - p1, p4 - p3);
    let whole = rule(p1, d1, p3, d2, 0.0, 1.0, 0.0, 1.0);
    adaptive(p1, d1, p3, d2, [0.0, 1.0, 0.0, 1.0], whole, 1e-13, 14)
}

/// Writhe by quadrature over all non-adjacent edge pairs.
pub fn writhe_by_quadrature(c: &PolygonalCurve) -> f64 {
    let n = c.len();
    let mut sum = 0.0;
    for i in 0..n {
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let (a, b) = c.edge(i);
            let (p, q) = c.edge(j);
            sum += gauss_integral(a, b, p, q);
        }
    }
    sum / std::f64::consts::TAU
}

/// Signed crossings of two polylines viewed along `nu`, found by testing every
/// segment pair. `same` skips adjacent edges of a single curve.
pub fn crossings(a: &PolygonalCurve, b: &PolygonalCurve, nu: Vec3, same: bool) -> Vec<i64> {
    let nu = nu / nu.norm();
    let helper = if nu.x.abs() < 0.9 { Vec3::X } else { Vec3::Y };
    let e1 = nu.cross(helper);
    let e1 = e1 / e1.norm();
    let e2 = nu.cross(e1);
    let flat = |p: Vec3| (p.dot(e1), p.dot(e2));
    let (n, m) = (a.len(), b.len());
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..m {
            if same && (j <= i || j == i + 1 || (i == 0 && j == n - 1)) {
                continue;
            }
            let (p1, p2) = a.edge(i);
            let (p3, p4) = b.edge(j);
            let ((x1, y1), (x2, y2), (x3, y3), (x4, y4)) = (flat(p1), flat(p2), flat(p3), flat(p4));
            let den = (x2 - x1) * (y4 - y3) - (y2 - y1) * (x4 - x3);
            if den == 0.0 {
                continue;
            }
            let s = ((x3 - x1) * (y4 - y3) - (y3 - y1) * (x4 - x3)) / den;
            let t = ((x3 - x1) * (y2 - y1) - (y3 - y1) * (x2 - x1)) / den;
            if !(0.0..1.0).contains(&s) || !(0.0..1.0).contains(&t) {
                continue;
            }
            let ha = (p1 + (p2 - p1) * s).dot(nu);
            let hb = (p3 + (p4 - p3) * t).dot(nu);
            let (da, db) = (p2 - p1, p4 - p3);
            let (over, under) = if ha > hb { (da, db) } else { (db, da) };
            out.push(if over.cross(under).dot(nu) > 0.0 { 1 } else { -1 });
        }
    }
    out
}

pub fn directional_writhe_brute(c: &PolygonalCurve, nu: Vec3) -> i64 {
    crossings(c, c, nu, true).iter().sum()
}

pub fn linking_by_crossings(a: &PolygonalCurve, b: &PolygonalCurve, nu: Vec3) -> f64 {
    crossings(a, b, nu, false).iter().sum::<i64>() as f64 / 2.0
}
