use serde::{Deserialize, Serialize};

use crate::curves::PolygonalCurve;
use crate::error::{Error, Result};
use crate::geom::{segment_distance, Point3, Vec3};

/// Default tolerance for snapping nearly coincident vertices together.
pub const DEFAULT_SNAP_TOLERANCE: f64 = 1e-9;
/// Largest angle between the reversed common edges that still counts as
/// anti-parallel.
pub const ANGLE_TOLERANCE: f64 = 1e-6;
/// Relative length mismatch repaired by moving B's far endpoint.
pub const LENGTH_REPAIR_LIMIT: f64 = 0.01;
/// Samples along the straight translation path.
pub const SWEEP_STEPS: usize = 64;

/// Where two curves (or two arcs of one curve) meet anti-parallel.
///
/// The common segment of A runs from vertex `edge_a` over `span` edges; the
/// one of B starts at vertex `edge_b`. With `span > 1` the segment must be
/// straight: the sub-edges are collinear subdivisions of one edge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReconnectionSite {
    pub edge_a: usize,
    pub edge_b: usize,
    pub snap_tolerance: f64,
    pub span: usize,
}

impl ReconnectionSite {
    pub fn new(edge_a: usize, edge_b: usize) -> Self {
        Self {
            edge_a,
            edge_b,
            snap_tolerance: DEFAULT_SNAP_TOLERANCE,
            span: 1,
        }
    }

    pub fn with_span(self, span: usize) -> Self {
        Self { span, ..self }
    }

    pub fn with_snap_tolerance(self, snap_tolerance: f64) -> Self {
        Self { snap_tolerance, ..self }
    }

    pub(crate) fn validate(&self, n: usize, m: usize) -> Result<()> {
        if self.edge_a >= n || self.edge_b >= m {
            return Err(Error::InvalidParameter(format!(
                "site ({}, {}) out of range for curves with {n} and {m} edges",
                self.edge_a, self.edge_b
            )));
        }
        if self.span == 0 || self.span + 2 > n || self.span + 2 > m {
            return Err(Error::InvalidParameter(format!("site span {} is too long", self.span)));
        }
        if !(self.snap_tolerance >= 0.0) {
            return Err(Error::InvalidParameter("snap tolerance must be non-negative".into()));
        }
        Ok(())
    }
}

/// Vertex `start + k` of a closed curve.
pub(crate) fn at(curve: &PolygonalCurve, start: usize, k: usize) -> Point3 {
    curve.vertex((start + k) % curve.len())
}

/// Check that the `span` sub-edges starting at `start` lie on one line.
pub(crate) fn check_straight(curve: &PolygonalCurve, start: usize, span: usize, tol: f64) -> Result<()> {
    let (p, q) = (at(curve, start, 0), at(curve, start, span));
    let d = q - p;
    let len = d.norm();
    for k in 1..span {
        let v = at(curve, start, k) - p;
        let s = v.dot(d) / (len * len);
        if v.cross(d).norm() / len > tol.max(1e-12 * len) || !(0.0..=1.0).contains(&s) {
            return Err(Error::NotAntiParallel(format!(
                "common segment from vertex {start} is not straight at sub-vertex {k}"
            )));
        }
    }
    Ok(())
}

/// The result of moving B onto A.
#[derive(Debug, Clone, PartialEq)]
pub struct Alignment {
    pub b: PolygonalCurve,
    pub translation: Vec3,
}

/// Minimum distance between A and B_aligned outside the common segment. Pairs
/// of edges that meet at a junction vertex are skipped.
pub(crate) fn remainder_distance(a: &PolygonalCurve, b: &PolygonalCurve, site: &ReconnectionSite) -> f64 {
    let (n, m, s) = (a.len(), b.len(), site.span);
    let common_a = |i: usize| (i + n - site.edge_a) % n < s;
    let common_b = |j: usize| (j + m - site.edge_b) % m < s;
    // edges touching the junctions P = A[ea] = B[eb+s] and Q = A[ea+s] = B[eb]
    let a_at_p = (site.edge_a + n - 1) % n;
    let a_at_q = (site.edge_a + s) % n;
    let b_at_p = (site.edge_b + s) % m;
    let b_at_q = (site.edge_b + m - 1) % m;
    let mut best = f64::INFINITY;
    for i in (0..n).filter(|&i| !common_a(i)) {
        let (p1, p2) = a.edge(i);
        for j in (0..m).filter(|&j| !common_b(j)) {
            let touching = (i == a_at_p && j == b_at_p) || (i == a_at_q && j == b_at_q);
            if touching {
                continue;
            }
            let (p3, p4) = b.edge(j);
            best = best.min(segment_distance(p1, p2, p3, p4));
        }
    }
    best
}

fn bounding_balls(c: &PolygonalCurve) -> Vec<(Point3, f64)> {
    c.edges().map(|(p, q)| ((p + q) * 0.5, 0.5 * p.distance(q))).collect()
}

/// A distance at or below `threshold` between A and B shifted by `offset`,
/// if there is one. Edge pairs whose bounding balls are far apart are skipped.
fn contact(
    a: &PolygonalCurve,
    balls_a: &[(Point3, f64)],
    b: &PolygonalCurve,
    balls_b: &[(Point3, f64)],
    offset: Vec3,
    threshold: f64,
) -> Option<f64> {
    for (i, &(ca, ra)) in balls_a.iter().enumerate() {
        for (j, &(cb, rb)) in balls_b.iter().enumerate() {
            let reach = ra + rb + threshold;
            if (cb + offset - ca).norm_squared() > reach * reach {
                continue;
            }
            let (p1, p2) = a.edge(i);
            let (p3, p4) = b.edge(j);
            let d = segment_distance(p1, p2, p3 + offset, p4 + offset);
            if d <= threshold {
                return Some(d);
            }
        }
    }
    None
}

/// Translate B so that its common segment lands on A's, reversed, after
/// checking that the edges are anti-parallel and of equal length and that
/// the straight translation path keeps B clear of A.
///
/// The path check samples 64 positions and demands a minimum distance of
/// `1e-9` times the diameter of the pair; it is a heuristic.
pub fn align_for_reconnection(a: &PolygonalCurve, b: &PolygonalCurve, site: &ReconnectionSite) -> Result<Alignment> {
    let (n, m, s) = (a.len(), b.len(), site.span);
    site.validate(n, m)?;
    let tol = site.snap_tolerance;
    check_straight(a, site.edge_a, s, tol)?;
    check_straight(b, site.edge_b, s, tol)?;
    let (pa, qa) = (at(a, site.edge_a, 0), at(a, site.edge_a, s));
    let (pb, qb) = (at(b, site.edge_b, 0), at(b, site.edge_b, s));
    let (da, db) = (qa - pa, qb - pb);
    let (la, lb) = (da.norm(), db.norm());
    let angle = (-da).cross(db).norm().atan2(-da.dot(db));
    if angle > ANGLE_TOLERANCE {
        return Err(Error::NotAntiParallel(format!(
            "edges {} of A and {} of B differ from anti-parallel by {angle:e} rad",
            site.edge_a, site.edge_b
        )));
    }
    if (la - lb).abs() > tol && (la - lb).abs() > LENGTH_REPAIR_LIMIT * la.min(lb) {
        return Err(Error::NotAntiParallel(format!(
            "common edges have lengths {la} and {lb}"
        )));
    }
    // B[eb] goes to A[ea + s]
    let translation = qa - pb;
    let diameter = {
        let both = crate::curves::CurveSystem::new_unchecked(vec![a.clone(), b.clone()]);
        both.diameter()
    };
    let threshold = 1e-9 * diameter;
    let shift = translation.norm();
    let (balls_a, balls_b) = (bounding_balls(a), bounding_balls(b));
    for step in 0..SWEEP_STEPS {
        let f = step as f64 / SWEEP_STEPS as f64;
        if shift * (1.0 - f) <= 2.0 * threshold {
            break;
        }
        if let Some(d) = contact(a, &balls_a, b, &balls_b, translation * f, threshold) {
            return Err(Error::PathObstruction { step, distance: d });
        }
    }
    let mut verts: Vec<Point3> = b.vertices().iter().map(|&p| p + translation).collect();
    for k in 0..=s {
        verts[(site.edge_b + k) % m] = at(a, site.edge_a, s - k);
    }
    let aligned = PolygonalCurve::new(verts)?;
    let d = remainder_distance(a, &aligned, site);
    if d <= threshold {
        return Err(Error::PathObstruction {
            step: SWEEP_STEPS,
            distance: d,
        });
    }
    Ok(Alignment {
        b: aligned,
        translation,
    })
}
