use std::f64::consts::PI;

use crate::curves::{CurveSystem, PolygonalCurve};
use crate::error::{Error, Result};
use crate::geom::{Point3, Vec3};
use crate::reconnection::site::{align_for_reconnection, at, check_straight, ReconnectionSite};

/// Drop consecutive duplicate vertices (cyclically). Returns the number removed.
pub(crate) fn merge_duplicates(verts: &mut Vec<Point3>) -> usize {
    let before = verts.len();
    verts.dedup();
    while verts.len() > 1 && verts.first() == verts.last() {
        verts.pop();
    }
    before - verts.len()
}

/// Vertex list of A#B given B already aligned: A from the end of its common
/// segment round to its start, then B's arc strictly between the junctions.
pub(crate) fn splice(a: &PolygonalCurve, b_aligned: &PolygonalCurve, site: &ReconnectionSite) -> (Vec<Point3>, usize) {
    let (n, m, s) = (a.len(), b_aligned.len(), site.span);
    let mut verts: Vec<Point3> = (0..=n - s).map(|k| at(a, site.edge_a + s, k)).collect();
    verts.extend((1..m - s).map(|k| at(b_aligned, site.edge_b + s, k)));
    let merged = merge_duplicates(&mut verts);
    (verts, merged)
}

/// Reconnect A and B across the site: align B, delete the common segment
/// from both and join the remaining arcs into one closed polygon with
/// n + m - 2·span vertices.
pub fn reconnect(a: &PolygonalCurve, b: &PolygonalCurve, site: &ReconnectionSite) -> Result<PolygonalCurve> {
    let aligned = align_for_reconnection(a, b, site)?;
    let (verts, _) = splice(a, &aligned.b, site);
    PolygonalCurve::new(verts)
}

/// Positions of the two copies of the common segment in a self-juxtaposed
/// curve, after snapping the second copy onto the first.
pub(crate) fn snap_self(c: &PolygonalCurve, site: &ReconnectionSite) -> Result<Vec<Point3>> {
    let n = c.len();
    let (i, j, s) = (site.edge_a, site.edge_b, site.span);
    if i >= n || j >= n || s == 0 {
        return Err(Error::InvalidParameter(format!("site ({i}, {j}) out of range for {n} edges")));
    }
    let gap_ij = (j + n - i) % n;
    if gap_ij < s + 1 || n - gap_ij < s + 1 {
        return Err(Error::InvalidParameter(format!(
            "self-reconnection edges {i} and {j} overlap or are adjacent"
        )));
    }
    check_straight(c, i, s, site.snap_tolerance)?;
    let mut verts = c.vertices().to_vec();
    let mut gap: f64 = 0.0;
    for k in 0..=s {
        let target = at(c, i, s - k);
        gap = gap.max((at(c, j, k) - target).norm());
        verts[(j + k) % n] = target;
    }
    if gap > site.snap_tolerance {
        return Err(Error::NotJuxtaposed { edge_a: i, edge_b: j, gap });
    }
    Ok(verts)
}

/// Writhe of a self-juxtaposed curve after snapping its two common copies
/// together: the θ-configuration, with edges that meet at a vertex
/// contributing 0.
pub fn theta_writhe_self(c: &PolygonalCurve, site: &ReconnectionSite) -> Result<f64> {
    let verts = snap_self(c, site)?;
    let n = verts.len();
    let edges: Vec<_> = (0..n).map(|k| (verts[k], verts[(k + 1) % n])).collect();
    Ok(crate::invariants::pair_sum(&edges, crate::sum::Execution::Serial)? / (2.0 * PI))
}

/// Split a curve whose arcs touch anti-parallel along the site into two
/// closed polygons, deleting both copies of the common segment.
pub fn self_reconnect(c: &PolygonalCurve, site: &ReconnectionSite) -> Result<CurveSystem> {
    let verts = snap_self(c, site)?;
    let n = verts.len();
    let (i, j, s) = (site.edge_a, site.edge_b, site.span);
    let take = |from: usize, to: usize| -> Vec<Point3> {
        let len = (to + n - from) % n;
        (0..len).map(|k| verts[(from + k) % n]).collect()
    };
    let mut c1 = take(i + s, j);
    let mut c2 = take(j + s, i);
    merge_duplicates(&mut c1);
    merge_duplicates(&mut c2);
    for piece in [&c1, &c2] {
        if piece.len() < 3 {
            return Err(Error::DegenerateSplit { vertices: piece.len() });
        }
    }
    Ok(CurveSystem::new_unchecked(vec![
        PolygonalCurve::new(c1)?,
        PolygonalCurve::new(c2)?,
    ]))
}

/// Deform a curve so that two of its edges touch anti-parallel: the points
/// X, Y are inserted into `edge_a`, and Y + gap, X + gap into `edge_b`. With
/// `gap = 0` the new edges X→Y and Y→X coincide and the returned site
/// addresses them.
pub fn juxtapose(
    c: &PolygonalCurve,
    edge_a: usize,
    edge_b: usize,
    x: Point3,
    y: Point3,
    gap: Vec3,
) -> Result<(PolygonalCurve, ReconnectionSite)> {
    let n = c.len();
    if edge_a >= n || edge_b >= n || edge_a == edge_b {
        return Err(Error::InvalidParameter(format!("cannot juxtapose edges {edge_a} and {edge_b}")));
    }
    let mut verts = Vec::with_capacity(n + 4);
    let (mut new_a, mut new_b) = (0, 0);
    for k in 0..n {
        verts.push(c.vertex(k));
        if k == edge_a {
            new_a = verts.len();
            verts.push(x);
            verts.push(y);
        } else if k == edge_b {
            new_b = verts.len();
            verts.push(y + gap);
            verts.push(x + gap);
        }
    }
    let site = ReconnectionSite::new(new_a, new_b).with_snap_tolerance(gap.norm().max(crate::reconnection::DEFAULT_SNAP_TOLERANCE));
    Ok((PolygonalCurve::new(verts)?, site))
}
