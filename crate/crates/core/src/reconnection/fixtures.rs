//! Built-in reconnection fixtures.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curves::{random_direction, CurveSystem, FluxTube, PolygonalCurve, Ribbon};
use crate::error::{Error, Result};
use crate::geom::{rotate_about, Point3, Vec3};
use crate::reconnection::{align_for_reconnection, ReconnectionSite};

fn p(x: f64, y: f64, z: f64) -> Point3 {
    Point3::new(x, y, z)
}

fn curve(pts: &[(f64, f64, f64)]) -> PolygonalCurve {
    PolygonalCurve::new(pts.iter().map(|&(x, y, z)| p(x, y, z)).collect()).expect("fixture is valid")
}

/// A pair of curves and the site where they reconnect.
#[derive(Debug, Clone, PartialEq)]
pub struct ReconnectablePair {
    pub a: PolygonalCurve,
    pub b: PolygonalCurve,
    pub site: ReconnectionSite,
}

/// Unit squares in the plane z = 0, B half a unit below A; A's bottom edge
/// and B's top edge are anti-parallel.
pub fn coplanar_squares() -> ReconnectablePair {
    ReconnectablePair {
        a: curve(&[(0., 0., 0.), (1., 0., 0.), (1., 1., 0.), (0., 1., 0.)]),
        b: curve(&[(1., -0.5, 0.), (0., -0.5, 0.), (0., -1.5, 0.), (1., -1.5, 0.)]),
        site: ReconnectionSite::new(0, 0),
    }
}

/// Unit squares in the planes z = 0 and z = 1 with matching opposite edges.
pub fn stacked_squares() -> ReconnectablePair {
    ReconnectablePair {
        a: curve(&[(0., 0., 0.), (1., 0., 0.), (1., 1., 0.), (0., 1., 0.)]),
        b: curve(&[(1., 0., 1.), (0., 0., 1.), (0., -1., 1.), (1., -1., 1.)]),
        site: ReconnectionSite::new(0, 0),
    }
}

/// Rectangle in z = 0 whose first side, from `start` to `start + (1, 0, 0)`,
/// is split into `span` equal sub-edges, followed by `rest`.
fn subdivided(start: Point3, span: usize, dir: f64, rest: &[Point3]) -> PolygonalCurve {
    let mut v: Vec<Point3> = (0..=span)
        .map(|k| start + Vec3::X * (dir * k as f64 / span as f64))
        .collect();
    v.extend_from_slice(rest);
    PolygonalCurve::new(v).expect("fixture is valid")
}

fn constant_framing(c: &PolygonalCurve, v: Vec3) -> Ribbon {
    Ribbon::new(c.clone(), vec![v; c.len()]).expect("planar framing is normal")
}

/// Two planar tubes of unit flux on the coplanar squares, framed by the
/// constant normal +z (the parallel-transport framing of a planar curve).
pub fn untwisted_tubes() -> (FluxTube, FluxTube, ReconnectionSite) {
    let f = coplanar_squares();
    let a = FluxTube::new(constant_framing(&f.a, Vec3::Z), 1.0).unwrap();
    let b = FluxTube::new(constant_framing(&f.b, Vec3::Z), 1.0).unwrap();
    (a, b, f.site)
}

/// Like [`untwisted_tubes`], but the common side of each square is split
/// into `8(k+1)` sub-edges and A's framing turns `k` times about the tangent
/// along its common side. That side is deleted by the reconnection, so the
/// twist drops by exactly `k`.
pub fn k_turn_tubes(k: i64) -> (FluxTube, FluxTube, ReconnectionSite) {
    let span = 8 * (k.unsigned_abs() as usize + 1);
    let a = subdivided(p(0., 0., 0.), span, 1.0, &[p(1., 1., 0.), p(0., 1., 0.)]);
    let b = subdivided(p(1., -0.5, 0.), span, -1.0, &[p(0., -1.5, 0.), p(1., -1.5, 0.)]);
    let framing: Vec<Vec3> = (0..a.len())
        .map(|i| {
            if i <= span {
                rotate_about(Vec3::Z, Vec3::X, TAU * k as f64 * i as f64 / span as f64)
            } else {
                Vec3::Z
            }
        })
        .collect();
    let ta = FluxTube::new(Ribbon::new(a, framing).unwrap(), 1.0).unwrap();
    let tb = FluxTube::new(constant_framing(&b, Vec3::Z), 1.0).unwrap();
    (ta, tb, ReconnectionSite::new(0, 0).with_span(span))
}

/// A closed curve whose arc through the origin is the twisted cubic
/// (s, s²/2, s³/6), sampled at s = 0, ±ell, ±2 ell, ±4 ell, ... so that the
/// common edge from s = 0 to s = ell and its neighbours shrink together, and
/// a hexagon B that shares that edge reversed. B's edges next to the common
/// edge lie in A's osculating planes at its two ends, so the total torsion
/// of the pair and of the joined curve differ only by twice the dihedral
/// angle across the common edge, which is O(ell).
pub fn torsion_family(ell: f64) -> Result<ReconnectablePair> {
    if !(ell > 0.0 && ell < 0.5) {
        return Err(Error::InvalidParameter(format!("common edge length must be in (0, 0.5), got {ell}")));
    }
    let cubic = |s: f64| p(s, s * s / 2.0, s * s * s / 6.0);
    let mut steps = vec![];
    let mut s = ell;
    while s < 0.75 {
        steps.push(s);
        s *= 2.0;
    }
    steps.push(1.0);
    let mut verts = vec![cubic(0.0)];
    verts.extend(steps.iter().map(|&s| cubic(s)));
    verts.extend([p(1.0, 2.0, 1.0), p(-1.0, 2.0, -1.0)]);
    verts.extend(steps.iter().rev().map(|&s| cubic(-s)));
    let a = PolygonalCurve::new(verts)?;
    let (pp, qq) = (a.vertex(0), a.vertex(1));
    let (prev, next) = (a.vertex(a.len() - 1), a.vertex(2));
    let axis = (qq - pp) / (qq - pp).norm();
    let outward = |v: Vec3| {
        let w = v - axis * v.dot(axis);
        -(w / w.norm())
    };
    let (up, uq) = (outward(prev - pp), outward(next - qq));
    let h = 0.4;
    let b = PolygonalCurve::new(vec![
        qq,
        pp,
        pp + up * h,
        pp + up * (3.0 * h) - axis * h,
        qq + uq * (3.0 * h) + axis * h,
        qq + uq * h,
    ])?;
    Ok(ReconnectablePair {
        a,
        b,
        site: ReconnectionSite::new(0, 0),
    })
}

/// The planar hexagon and skew octagon used by the pathway: they form a Hopf
/// link (Lk = +1) and can be reconnected along A's edge 0 and B's edge 0.
pub fn hopf_pair() -> ReconnectablePair {
    let a = curve(&[(1., 0., 0.), (0., 0., 0.), (-1., 1., 0.), (-1., 3., 0.), (2., 3., 0.), (2., 1., 0.)]);
    let b = curve(&[
        (0., 0., 0.),
        (1., 0., 0.),
        (2., -1., 0.),
        (2., -1., 1.),
        (0.5, 2., 1.),
        (0.5, 2., -1.),
        (-1., -1., -1.),
        (-1., -1., 0.),
    ])
    .translate(p(0., -0.1, 0.));
    ReconnectablePair {
        a,
        b,
        site: ReconnectionSite::new(0, 0),
    }
}

/// A trefoil made from the Hopf pair by a band: the arc u→v is traversed
/// once in each direction, the second time shifted by `gap` along -x. With
/// `gap = 0` the two copies coincide and the curve self-reconnects into the
/// Hopf pair at the returned site.
pub fn trefoil_theta(gap: f64) -> (PolygonalCurve, ReconnectionSite) {
    let h = hopf_pair();
    let (a, b) = (h.a.vertices(), h.b.vertices());
    let (u, v) = (b[0], a[2]);
    let g = Vec3::new(-gap, 0.0, 0.0);
    let mut verts = vec![u, v, a[3], a[4], a[5], a[0], a[1], v + g, u + g];
    verts.extend_from_slice(&b[1..]);
    let site = ReconnectionSite::new(0, 7).with_snap_tolerance(gap.max(super::DEFAULT_SNAP_TOLERANCE));
    (PolygonalCurve::new(verts).expect("fixture is valid"), site)
}

/// Finger points that pull the top-left and top-right arcs of the joined
/// pathway curve together.
pub const PATHWAY_FINGER: [(f64, f64, f64); 2] = [(0.5, 2.7, 0.0), (0.5, 2.9, 0.0)];

/// A reconnectable pair produced by cutting a random closed curve, together
/// with the curve it was cut from.
#[derive(Debug, Clone, PartialEq)]
pub struct CutPair {
    pub joined: PolygonalCurve,
    pub pair: ReconnectablePair,
}

fn walk(rng: &mut ChaCha8Rng, from: Point3, to: Point3, interior: usize, step: f64) -> Vec<Point3> {
    let steps: Vec<Vec3> = (0..=interior).map(|_| random_direction(rng) * step).collect();
    let drift = (steps.iter().fold(Vec3::ZERO, |s, &d| s + d) - (to - from)) / (interior + 1) as f64;
    let mut out = Vec::with_capacity(interior);
    let mut x = from;
    for d in &steps[..interior] {
        x += *d - drift;
        out.push(x);
    }
    out
}

/// Cut construction: build a closed curve through a planar site, split it
/// across the site into A (n vertices) and B (m vertices), pull B back from
/// A in the site plane, then apply a random rigid motion and relabelling.
/// The site's six edges (the common edge and its four neighbours) are
/// coplanar and the pull-back lies in their plane.
pub fn cut_construction(n: usize, m: usize, seed: u64) -> Result<CutPair> {
    if n < 5 || m < 5 {
        return Err(Error::InvalidParameter(format!("cut construction needs n, m >= 5, got {n}, {m}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    const ATTEMPTS: usize = 50;
    for _ in 0..ATTEMPTS {
        let (pp, qq) = (Point3::ZERO, p(1.0, 0.0, 0.0));
        let h = 0.5;
        let up = Vec3::Y * h;
        // fold each arc into its own half-space so A and B cannot meet
        let fold = |pts: Vec<Point3>, sign: f64| -> Vec<Point3> {
            pts.into_iter()
                .map(|x| Point3::new(x.x, sign * (h + (sign * x.y - h).abs()), x.z))
                .collect()
        };
        let arc_a = fold(walk(&mut rng, qq + up, pp + up, n - 4, 0.6), 1.0);
        let arc_b = fold(walk(&mut rng, pp - up, qq - up, m - 4, 0.6), -1.0);
        let mut va = vec![pp, qq, qq + up];
        va.extend(arc_a.iter().copied());
        va.push(pp + up);
        let mut vb = vec![qq, pp, pp - up];
        vb.extend(arc_b.iter().copied());
        vb.push(qq - up);
        let mut vj = vec![qq, qq + up];
        vj.extend(arc_a.iter().copied());
        vj.extend([pp + up, pp, pp - up]);
        vj.extend(arc_b.iter().copied());
        vj.push(qq - up);

        let axis = random_direction(&mut rng);
        let angle = rng.gen_range(0.0..TAU);
        let shift = random_direction(&mut rng) * rng.gen_range(0.0..2.0);
        let place = |v: Vec<Point3>| -> Result<PolygonalCurve> {
            PolygonalCurve::new(v.into_iter().map(|x| rotate_about(x, axis, angle) + shift).collect())
        };
        let pull = rotate_about(-Vec3::Y * 0.2, axis, angle);
        let (Ok(a), Ok(b), Ok(joined)) = (place(va), place(vb), place(vj)) else { continue };
        let b = b.translate(pull);
        if joined.min_nonadjacent_distance().0 < 1e-3 || CurveSystem::new(vec![a.clone(), b.clone()]).is_err() {
            continue;
        }
        let (ka, kb) = (rng.gen_range(0..n), rng.gen_range(0..m));
        let (a, b) = (a.rotate_start(ka), b.rotate_start(kb));
        let site = ReconnectionSite::new((n - ka) % n, (m - kb) % m);
        if align_for_reconnection(&a, &b, &site).is_err() {
            continue;
        }
        return Ok(CutPair {
            joined,
            pair: ReconnectablePair { a, b, site },
        });
    }
    Err(Error::GenerationFailure { attempts: ATTEMPTS })
}

const TRACING_FRAMES: [&str; 4] = [
    include_str!("../../fixtures/tracing/t0.json"),
    include_str!("../../fixtures/tracing/t1.json"),
    include_str!("../../fixtures/tracing/t2.json"),
    include_str!("../../fixtures/tracing/t3.json"),
];

/// Hand-traced frames of two strands reconnecting, viewed along +z.
pub fn tracing_frames() -> Vec<CurveSystem> {
    TRACING_FRAMES
        .iter()
        .map(|text| crate::io::parse_curves(text).and_then(|c| crate::io::system_of(&c)).expect("fixture is valid"))
        .collect()
}

/// The site in frame 2 whose reconnection gives frame 3.
pub fn tracing_site() -> ReconnectionSite {
    ReconnectionSite::new(2, 6).with_snap_tolerance(0.021)
}
