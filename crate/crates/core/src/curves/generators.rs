use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curves::{parallel_transport_frame, CurveSystem, PolygonalCurve, Ribbon};
use crate::error::{Error, Result};
use crate::geom::{rotate_about, Point3, Vec3};

const MAX_ATTEMPTS: usize = 100;

fn check_unit(normal: Vec3) -> Result<()> {
    if (normal.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidParameter(format!(
            "normal must be a unit vector, |normal| = {}",
            normal.norm()
        )));
    }
    Ok(())
}

/// Orthonormal pair (u, w) spanning the plane normal to `n`, with u x w = n.
/// For n = +z this is (+x, +y).
fn plane_basis(n: Vec3) -> (Vec3, Vec3) {
    let u = Vec3::X - n * n.x;
    let u = match u.try_normalize(1e-6) {
        Some(u) => u,
        None => (Vec3::Y - n * n.y).try_normalize(1e-6).unwrap(),
    };
    (u, n.cross(u))
}

/// Regular n-gon inscribed in a circle, counterclockwise seen from `+normal`.
pub fn make_circle(center: Point3, normal: Vec3, radius: f64, n: usize) -> Result<PolygonalCurve> {
    check_unit(normal)?;
    if n < 3 {
        return Err(Error::InvalidParameter(format!("circle needs n >= 3, got {n}")));
    }
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::InvalidParameter(format!("radius must be positive, got {radius}")));
    }
    let (u, w) = plane_basis(normal);
    PolygonalCurve::new(
        (0..n)
            .map(|k| {
                let th = TAU * k as f64 / n as f64;
                center + u * (radius * th.cos()) + w * (radius * th.sin())
            })
            .collect(),
    )
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn torus_point(p: f64, q: f64, r_major: f64, r_minor: f64, th: f64, phase: f64) -> Point3 {
    let rho = r_major + r_minor * (q * th + phase).cos();
    Point3::new(rho * (p * th).cos(), rho * (p * th).sin(), r_minor * (q * th + phase).sin())
}

fn check_torus(r_major: f64, r_minor: f64) -> Result<()> {
    if !(r_major > r_minor && r_minor > 0.0 && r_major.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "torus radii need R > r > 0, got R = {r_major}, r = {r_minor}"
        )));
    }
    Ok(())
}

/// (p, q) torus knot sampled at `n` equally spaced parameter values.
pub fn make_torus_knot(p: i64, q: i64, r_major: f64, r_minor: f64, n: usize) -> Result<PolygonalCurve> {
    if p == 0 || q == 0 || gcd(p.unsigned_abs(), q.unsigned_abs()) != 1 {
        return Err(Error::InvalidParameter(format!("torus knot needs gcd(p, q) = 1, got ({p}, {q})")));
    }
    check_torus(r_major, r_minor)?;
    if n < 3 {
        return Err(Error::InvalidParameter(format!("torus knot needs n >= 3, got {n}")));
    }
    PolygonalCurve::new(
        (0..n)
            .map(|k| torus_point(p as f64, q as f64, r_major, r_minor, TAU * k as f64 / n as f64, 0.0))
            .collect(),
    )
}

/// (p, q) torus link with gcd(p, q) = d > 1: d parallel (p/d, q/d) torus knots,
/// each sampled with `n` vertices.
pub fn make_torus_link(p: i64, q: i64, r_major: f64, r_minor: f64, n: usize) -> Result<CurveSystem> {
    if p == 0 || q == 0 {
        return Err(Error::InvalidParameter(format!("torus link needs p, q nonzero, got ({p}, {q})")));
    }
    check_torus(r_major, r_minor)?;
    if n < 3 {
        return Err(Error::InvalidParameter(format!("torus link needs n >= 3, got {n}")));
    }
    let d = gcd(p.unsigned_abs(), q.unsigned_abs());
    let (pp, qq) = ((p / d as i64) as f64, (q / d as i64) as f64);
    let comps = (0..d)
        .map(|c| {
            let phase = TAU * c as f64 / d as f64;
            PolygonalCurve::new(
                (0..n)
                    .map(|k| torus_point(pp, qq, r_major, r_minor, TAU * k as f64 / n as f64, phase))
                    .collect(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    CurveSystem::new(comps)
}

/// Two circles of equal radius: A in the xy-plane about the origin, B in the
/// xz-plane about (separation, 0, 0). Oriented so that an interlocked pair has
/// linking number +1.
pub fn make_hopf_link(separation: f64, radius: f64, n: usize) -> Result<CurveSystem> {
    if !(radius > 0.0 && separation.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "hopf link needs radius > 0 and finite separation, got {radius}, {separation}"
        )));
    }
    let a = make_circle(Point3::ZERO, Vec3::Z, radius, n)?;
    let b = make_circle(Point3::new(separation, 0.0, 0.0), Vec3::Y, radius, n)?;
    CurveSystem::new(vec![a, b])
}

fn random_unit(rng: &mut ChaCha8Rng) -> Vec3 {
    let z: f64 = rng.gen_range(-1.0..=1.0);
    let phi: f64 = rng.gen_range(0.0..TAU);
    let s = (1.0 - z * z).max(0.0).sqrt();
    Vec3::new(s * phi.cos(), s * phi.sin(), z)
}

/// Random unit vector on the sphere drawn from `rng`.
pub fn random_direction<R: Rng>(rng: &mut R) -> Vec3 {
    let z: f64 = rng.gen_range(-1.0..=1.0);
    let phi: f64 = rng.gen_range(0.0..TAU);
    let s = (1.0 - z * z).max(0.0).sqrt();
    Vec3::new(s * phi.cos(), s * phi.sin(), z)
}

/// Closed polygon from `n` random unit steps with the mean step removed.
/// Candidates with a short edge or a near self-contact are redrawn.
pub fn make_random_closed_polygon(n: usize, seed: u64) -> Result<PolygonalCurve> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("random polygon needs n >= 3, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let steps: Vec<Vec3> = (0..n).map(|_| random_unit(&mut rng)).collect();
        let mean = steps.iter().fold(Vec3::ZERO, |a, &s| a + s) / n as f64;
        if steps.iter().any(|&s| (s - mean).norm() < 1e-3) {
            continue;
        }
        let mut p = Point3::ZERO;
        let mut verts = Vec::with_capacity(n);
        for s in &steps {
            verts.push(p);
            p += *s - mean;
        }
        let Ok(curve) = PolygonalCurve::new(verts) else { continue };
        if n > 3 && curve.min_nonadjacent_distance().0 < 1e-6 {
            continue;
        }
        return Ok(curve);
    }
    Err(Error::GenerationFailure { attempts: MAX_ATTEMPTS })
}

/// Random star-shaped polygon lying in a random plane through a random point.
/// The vertices are planar up to rounding in the rotation.
pub fn make_random_planar_polygon(n: usize, seed: u64) -> Result<PolygonalCurve> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("planar polygon needs n >= 3, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut angles: Vec<f64> = (0..n)
        .map(|k| (k as f64 + rng.gen_range(0.1..0.9)) * TAU / n as f64)
        .collect();
    angles.sort_by(f64::total_cmp);
    let flat: Vec<Point3> = angles
        .iter()
        .map(|&a| {
            let r = rng.gen_range(0.5..1.5);
            Point3::new(r * a.cos(), r * a.sin(), 0.0)
        })
        .collect();
    let axis = random_unit(&mut rng);
    let angle = rng.gen_range(0.0..TAU);
    let shift = random_unit(&mut rng) * rng.gen_range(0.0..3.0);
    PolygonalCurve::new(flat.into_iter().map(|p| rotate_about(p, axis, angle) + shift).collect())
}

/// Smooth closed curve with a few random Fourier modes, sampled at `n` points.
/// The same seed gives the same underlying smooth curve for every `n`.
pub fn make_random_smooth_curve(n: usize, seed: u64) -> Result<PolygonalCurve> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("smooth curve needs n >= 3, got {n}")));
    }
    let modes = smooth_modes(seed);
    for attempt in 0..MAX_ATTEMPTS {
        let coeffs = &modes[attempt];
        let verts: Vec<Point3> = (0..n)
            .map(|k| {
                let t = TAU * k as f64 / n as f64;
                coeffs.iter().enumerate().fold(Point3::ZERO, |acc, (m, (a, b))| {
                    let f = (m + 1) as f64 * t;
                    acc + *a * f.cos() + *b * f.sin()
                })
            })
            .collect();
        let Ok(curve) = PolygonalCurve::new(verts) else { continue };
        if curve.min_nonadjacent_distance().0 < 0.02 * curve.length() / n as f64
            || curve.vertex_tangents().is_err()
        {
            continue;
        }
        return Ok(curve);
    }
    Err(Error::GenerationFailure { attempts: MAX_ATTEMPTS })
}

fn smooth_modes(seed: u64) -> Vec<Vec<(Vec3, Vec3)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..MAX_ATTEMPTS)
        .map(|_| {
            (1..=3)
                .map(|m| {
                    let s = 1.0 / (m * m) as f64;
                    (random_unit(&mut rng) * s, random_unit(&mut rng) * s)
                })
                .collect()
        })
        .collect()
}

/// Smooth framing of `curve`: the parallel-transport frame with its holonomy
/// spread evenly, `turns` extra full rotations, and a random periodic wobble.
pub fn make_random_smooth_framing(curve: &PolygonalCurve, turns: i64, seed: u64) -> Result<Ribbon> {
    let t0 = curve.vertex_tangent(0)?;
    let pt = parallel_transport_frame(curve, t0.any_orthogonal())?;
    let h = pt.holonomy().unwrap_or(0.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let wobble: Vec<(f64, f64)> = (1..=2)
        .map(|_| (rng.gen_range(-0.5..0.5), rng.gen_range(0.0..TAU)))
        .collect();
    let n = curve.len() as f64;
    let angles: Vec<f64> = (0..curve.len())
        .map(|i| {
            let s = i as f64 / n;
            let w = wobble
                .iter()
                .enumerate()
                .map(|(m, (a, ph))| a * (TAU * (m + 1) as f64 * s + ph).sin())
                .sum::<f64>();
            (h + TAU * turns as f64) * s + w
        })
        .collect();
    pt.rotated_by(&angles)
}

/// Free-function form of [`PolygonalCurve::translate`].
pub fn translate(curve: &PolygonalCurve, v: Vec3) -> PolygonalCurve {
    curve.translate(v)
}

/// Free-function form of [`PolygonalCurve::resample`].
pub fn resample(curve: &PolygonalCurve, m: usize) -> Result<PolygonalCurve> {
    curve.resample(m)
}
