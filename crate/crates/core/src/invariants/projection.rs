use serde::{Deserialize, Serialize};

use crate::curves::{CurveSystem, PolygonalCurve};
use crate::error::{Error, Result};
use crate::geom::{Point3, Vec3};

/// Relative tolerance of the genericity tests on a projection direction.
pub const GENERICITY_TOLERANCE: f64 = 1e-9;

/// Which strand of a crossing is nearer the viewer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Over {
    A,
    B,
}

/// A transversal crossing of two projected edges. Edge indices are local to
/// their components; `(component_a, edge_a)` precedes `(component_b, edge_b)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Crossing {
    pub component_a: usize,
    pub edge_a: usize,
    pub component_b: usize,
    pub edge_b: usize,
    pub sign: i8,
    pub param_a: f64,
    pub param_b: f64,
    pub over: Over,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectionReport {
    pub direction: Vec3,
    pub crossings: Vec<Crossing>,
    pub directional_writhe: i64,
    /// Set when the requested direction was degenerate and the report describes
    /// a perturbed direction instead.
    pub degenerate: bool,
}

impl ProjectionReport {
    /// Σ ε over crossings between two different components.
    pub fn inter_component_sum(&self) -> i64 {
        self.crossings
            .iter()
            .filter(|c| c.component_a != c.component_b)
            .map(|c| c.sign as i64)
            .sum()
    }
}

#[derive(Clone, Copy)]
struct Edge {
    comp: u32,
    idx: u32,
    len: u32,
    a: Point3,
    b: Point3,
}

#[derive(Clone, Copy)]
struct Flat {
    x0: f64,
    y0: f64,
    dx: f64,
    dy: f64,
    h0: f64,
    dh: f64,
    xmin: f64,
    xmax: f64,
    ymin: f64,
    ymax: f64,
}

#[derive(Clone, Copy)]
struct Hit {
    i: usize,
    j: usize,
    s: f64,
    t: f64,
    sign: i8,
    over_a: bool,
    x: f64,
    y: f64,
}

/// Reusable projection engine for repeated crossing counts over one system.
pub struct Projector {
    edges: Vec<Edge>,
    diameter: f64,
    flat: Vec<Flat>,
    order: Vec<(f64, u32)>,
    active: Vec<u32>,
    hits: Vec<Hit>,
}

fn degenerate(direction: Vec3, feature: String) -> Error {
    Error::DegenerateDirection { direction, feature }
}

/// Orthonormal (e1, e2) with e1 × e2 = ν.
fn screen_basis(nu: Vec3) -> (Vec3, Vec3) {
    let e1 = nu.any_orthogonal();
    (e1, nu.cross(e1))
}

impl Projector {
    pub fn new(system: &CurveSystem) -> Self {
        let mut edges = Vec::with_capacity(system.total_edges());
        for (c, curve) in system.components().iter().enumerate() {
            for (i, (a, b)) in curve.edges().enumerate() {
                edges.push(Edge {
                    comp: c as u32,
                    idx: i as u32,
                    len: curve.len() as u32,
                    a,
                    b,
                });
            }
        }
        Self {
            diameter: system.diameter(),
            flat: Vec::with_capacity(edges.len()),
            order: Vec::with_capacity(edges.len()),
            active: Vec::new(),
            hits: Vec::new(),
            edges,
        }
    }

    fn adjacent(&self, i: usize, j: usize) -> bool {
        let (a, b) = (&self.edges[i], &self.edges[j]);
        a.comp == b.comp && {
            let d = a.idx.abs_diff(b.idx);
            d == 1 || d == a.len - 1
        }
    }

    /// Project and collect all crossings into `self.hits`.
    fn project(&mut self, nu: Vec3) -> Result<()> {
        let tol = GENERICITY_TOLERANCE;
        let (e1, e2) = screen_basis(nu);
        let min_len = tol * self.diameter;
        self.flat.clear();
        for e in &self.edges {
            let (x0, y0, h0) = (e.a.dot(e1), e.a.dot(e2), e.a.dot(nu));
            let (x1, y1, h1) = (e.b.dot(e1), e.b.dot(e2), e.b.dot(nu));
            let (dx, dy) = (x1 - x0, y1 - y0);
            if dx * dx + dy * dy < min_len * min_len {
                return Err(degenerate(
                    nu,
                    format!("edge {} of component {} is parallel to the view", e.idx, e.comp),
                ));
            }
            self.flat.push(Flat {
                x0,
                y0,
                dx,
                dy,
                h0,
                dh: h1 - h0,
                xmin: x0.min(x1),
                xmax: x0.max(x1),
                ymin: y0.min(y1),
                ymax: y0.max(y1),
            });
        }
        // Sweep in x: edges sorted by the left end of their extent, tested
        // against every earlier edge whose extent still reaches them.
        self.order.clear();
        self.order.extend(self.flat.iter().enumerate().map(|(k, f)| (f.xmin, k as u32)));
        self.order.sort_unstable_by(|a, b| a.0.total_cmp(&b.0));
        self.active.clear();
        self.hits.clear();
        for oi in 0..self.order.len() {
            let j = self.order[oi].1 as usize;
            let fj = self.flat[j];
            let flat = &self.flat;
            self.active.retain(|&i| flat[i as usize].xmax >= fj.xmin);
            for ai in 0..self.active.len() {
                let i = self.active[ai] as usize;
                let fi = &self.flat[i];
                if fi.ymax < fj.ymin || fj.ymax < fi.ymin || self.adjacent(i, j) {
                    continue;
                }
                let (i, j) = if i < j { (i, j) } else { (j, i) };
                if let Some(hit) = intersect(&self.flat[i], &self.flat[j], i, j, nu, &self.edges)? {
                    self.hits.push(hit);
                }
            }
            self.active.push(j as u32);
        }
        // coincident crossings
        let close = tol * self.diameter;
        self.hits.sort_unstable_by(|a, b| a.x.total_cmp(&b.x));
        for k in 0..self.hits.len() {
            for l in k + 1..self.hits.len() {
                if self.hits[l].x - self.hits[k].x >= close {
                    break;
                }
                if (self.hits[l].y - self.hits[k].y).abs() < close {
                    return Err(degenerate(nu, "two crossings coincide".into()));
                }
            }
        }
        Ok(())
    }

    /// Sum of crossing signs for direction `nu`.
    pub fn count(&mut self, nu: Vec3) -> Result<i64> {
        self.project(nu)?;
        Ok(self.hits.iter().map(|h| h.sign as i64).sum())
    }

    pub fn report(&mut self, nu: Vec3) -> Result<ProjectionReport> {
        self.project(nu)?;
        let mut crossings: Vec<Crossing> = self
            .hits
            .iter()
            .map(|h| {
                let (a, b) = (&self.edges[h.i], &self.edges[h.j]);
                Crossing {
                    component_a: a.comp as usize,
                    edge_a: a.idx as usize,
                    component_b: b.comp as usize,
                    edge_b: b.idx as usize,
                    sign: h.sign,
                    param_a: h.s,
                    param_b: h.t,
                    over: if h.over_a { Over::A } else { Over::B },
                }
            })
            .collect();
        crossings.sort_by_key(|c| (c.component_a, c.edge_a, c.component_b, c.edge_b));
        let directional_writhe = crossings.iter().map(|c| c.sign as i64).sum();
        Ok(ProjectionReport {
            direction: nu,
            crossings,
            directional_writhe,
            degenerate: false,
        })
    }
}

fn intersect(a: &Flat, b: &Flat, i: usize, j: usize, nu: Vec3, edges: &[Edge]) -> Result<Option<Hit>> {
    let tol = GENERICITY_TOLERANCE;
    let denom = a.dx * b.dy - a.dy * b.dx;
    let (wx, wy) = (b.x0 - a.x0, b.y0 - a.y0);
    let la2 = a.dx * a.dx + a.dy * a.dy;
    let lb2 = b.dx * b.dx + b.dy * b.dy;
    if denom * denom <= 1e-28 * la2 * lb2 {
        let (la, lb) = (la2.sqrt(), lb2.sqrt());
        // parallel in projection: only a problem if collinear and overlapping
        let off = (wx * a.dy - wy * a.dx).abs() / la;
        if off < tol * la.max(lb) {
            let s0 = (wx * a.dx + wy * a.dy) / (la * la);
            let s1 = ((wx + b.dx) * a.dx + (wy + b.dy) * a.dy) / (la * la);
            if s0.max(s1) >= -tol && s0.min(s1) <= 1.0 + tol {
                return Err(degenerate(nu, format!("edges {} and {} overlap in projection", edges[i].idx, edges[j].idx)));
            }
        }
        return Ok(None);
    }
    let s = (wx * b.dy - wy * b.dx) / denom;
    let t = (wx * a.dy - wy * a.dx) / denom;
    if s < -tol || s > 1.0 + tol || t < -tol || t > 1.0 + tol {
        return Ok(None);
    }
    if s.abs() <= tol || (1.0 - s).abs() <= tol || t.abs() <= tol || (1.0 - t).abs() <= tol {
        let (ea, eb) = (&edges[i], &edges[j]);
        return Err(degenerate(
            nu,
            format!(
                "crossing at an endpoint of edge {} (component {}) or edge {} (component {})",
                ea.idx, ea.comp, eb.idx, eb.comp
            ),
        ));
    }
    let ha = a.h0 + s * a.dh;
    let hb = b.h0 + t * b.dh;
    if ha == hb {
        return Err(Error::GeometricDegeneracy(format!(
            "edges {} and {} intersect",
            edges[i].idx, edges[j].idx
        )));
    }
    let over_a = ha > hb;
    // right-handed: sign of (over × under) · ν
    let sign = if over_a { denom } else { -denom };
    Ok(Some(Hit {
        i,
        j,
        s,
        t,
        sign: if sign > 0.0 { 1 } else { -1 },
        over_a,
        x: a.x0 + s * a.dx,
        y: a.y0 + s * a.dy,
    }))
}

fn check_unit(nu: Vec3) -> Result<()> {
    if !((nu.norm() - 1.0).abs() <= 1e-9) {
        return Err(Error::InvalidParameter(format!("direction must be a unit vector, |ν| = {}", nu.norm())));
    }
    Ok(())
}

/// Signed crossing count of the projection of `system` along `nu`, covering
/// self-crossings and crossings between components.
pub fn directional_writhe(system: &CurveSystem, nu: Vec3) -> Result<ProjectionReport> {
    check_unit(nu)?;
    Projector::new(system).report(nu)
}

/// As [`directional_writhe`], but a degenerate `nu` is replaced by
/// deterministic perturbations of size `1e-6` until a generic one is found.
pub fn directional_writhe_generic(system: &CurveSystem, nu: Vec3, seed: u64) -> Result<ProjectionReport> {
    use rand::SeedableRng;
    check_unit(nu)?;
    let mut projector = Projector::new(system);
    match projector.report(nu) {
        Err(Error::DegenerateDirection { .. }) => {}
        other => return other,
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for attempt in 0..64 {
        let trial = perturb(nu, &mut rng, attempt);
        match projector.report(trial) {
            Ok(mut r) => {
                r.degenerate = true;
                return Ok(r);
            }
            Err(Error::DegenerateDirection { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(degenerate(nu, "no generic direction found near the requested one".into()))
}

/// Random tilt of `nu`: 1e-6 on the first attempt, doubling with every
/// further attempt (close approaches of two strands need more than 1e-6).
pub(crate) fn perturb<R: rand::Rng>(nu: Vec3, rng: &mut R, attempt: u32) -> Vec3 {
    let size = 1e-6 * f64::powi(2.0, attempt.min(20) as i32);
    let d = crate::curves::random_direction(rng) * size;
    let v = nu + d;
    v / v.norm()
}

/// Linking number as half the signed count of crossings between `a` and `b`.
pub fn linking_number_projection(a: &PolygonalCurve, b: &PolygonalCurve, nu: Vec3) -> Result<i64> {
    check_unit(nu)?;
    let system = CurveSystem::new(vec![a.clone(), b.clone()])?;
    let sum = Projector::new(&system).report(nu)?.inter_component_sum();
    if sum % 2 != 0 {
        return Err(Error::InvalidState(format!("odd inter-component crossing sum {sum}")));
    }
    Ok(sum / 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{make_circle, make_hopf_link, make_torus_knot};

    #[test]
    fn circle_along_normal_has_no_crossings() {
        let c = make_circle(Point3::ZERO, Vec3::Z, 1.0, 32).unwrap();
        let r = directional_writhe(&CurveSystem::single(c), Vec3::Z).unwrap();
        assert!(r.crossings.is_empty());
        assert_eq!(r.directional_writhe, 0);
    }

    #[test]
    fn trefoil_along_axis() {
        let c = make_torus_knot(2, 3, 2.0, 0.5, 512).unwrap();
        let s = CurveSystem::single(c);
        // vertex 128 sits exactly on a crossing, so the axis itself is degenerate
        assert!(directional_writhe(&s, Vec3::Z).is_err());
        let r = directional_writhe_generic(&s, Vec3::Z, 0).unwrap();
        assert!(r.degenerate);
        assert_eq!(r.crossings.len(), 3);
        assert_eq!(r.directional_writhe.abs(), 3);
    }

    #[test]
    fn hopf_projection_matches_gauss() {
        let s = make_hopf_link(1.0, 1.0, 64).unwrap();
        let (a, b) = (&s.components()[0], &s.components()[1]);
        let nu = Vec3::new(0.3, 0.5, 0.8);
        let nu = nu / nu.norm();
        assert_eq!(linking_number_projection(a, b, nu).unwrap(), 1);
        assert_eq!(linking_number_projection(a, b, -nu).unwrap(), 1);
    }

    #[test]
    fn edge_on_view_is_degenerate() {
        let c = make_circle(Point3::ZERO, Vec3::Z, 1.0, 4).unwrap();
        let r = directional_writhe(&CurveSystem::single(c.clone()), Vec3::X);
        assert!(matches!(r, Err(Error::DegenerateDirection { .. })));
        let g = directional_writhe_generic(&CurveSystem::single(c), Vec3::X, 1).unwrap();
        assert!(g.degenerate);
    }
}
