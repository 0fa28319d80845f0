use std::f64::consts::PI;

use crate::curves::{CurveSystem, PolygonalCurve};
use crate::error::{Error, Result};
use crate::geom::Point3;
use crate::invariants::edge_pair_solid_angle;
use crate::sum::{reduce_rows, Execution};

type Segment = (Point3, Point3);

/// Σ over unordered pairs i < j of ω(e_i, e_j). Pairs sharing an endpoint
/// contribute exactly 0.
pub(crate) fn pair_sum(edges: &[Segment], exec: Execution) -> Result<f64> {
    reduce_rows(edges.len(), exec, |i| {
        let (p1, p2) = edges[i];
        let mut row = crate::sum::KahanSum::new();
        for &(p3, p4) in &edges[i + 1..] {
            row.add(edge_pair_solid_angle(p1, p2, p3, p4)?);
        }
        Ok(row.value())
    })
}

/// Σ_i Σ_j ω(a_i, b_j).
pub(crate) fn cross_sum(a: &[Segment], b: &[Segment], exec: Execution) -> Result<f64> {
    reduce_rows(a.len(), exec, |i| {
        let (p1, p2) = a[i];
        let mut row = crate::sum::KahanSum::new();
        for &(p3, p4) in b {
            row.add(edge_pair_solid_angle(p1, p2, p3, p4)?);
        }
        Ok(row.value())
    })
}

pub(crate) fn segments(curve: &PolygonalCurve) -> Vec<Segment> {
    curve.edges().collect()
}

/// Writhe of a closed polygon, (1/2π) Σ_{i<j} ω(a_i, a_j).
pub fn writhe(curve: &PolygonalCurve) -> Result<f64> {
    writhe_with(curve, Execution::Serial)
}

pub fn writhe_with(curve: &PolygonalCurve, exec: Execution) -> Result<f64> {
    Ok(pair_sum(&segments(curve), exec)? / (2.0 * PI))
}

/// Writhe of the union of all components: the full double sum over every edge
/// of every component.
pub fn writhe_system(system: &CurveSystem) -> Result<f64> {
    writhe_system_with(system, Execution::Serial)
}

pub fn writhe_system_with(system: &CurveSystem, exec: Execution) -> Result<f64> {
    let edges: Vec<Segment> = system.components().iter().flat_map(|c| c.edges()).collect();
    match pair_sum(&edges, exec) {
        Ok(s) => Ok(s / (2.0 * PI)),
        Err(e) => {
            system.check_disjoint()?;
            Err(e)
        }
    }
}

/// Gauss linking number (1/4π) Σ_i Σ_j ω(a_i, b_j). Not rounded.
pub fn linking_number_gauss(a: &PolygonalCurve, b: &PolygonalCurve) -> Result<f64> {
    linking_number_gauss_with(a, b, Execution::Serial)
}

pub fn linking_number_gauss_with(a: &PolygonalCurve, b: &PolygonalCurve, exec: Execution) -> Result<f64> {
    match cross_sum(&segments(a), &segments(b), exec) {
        Ok(s) => Ok(s / (4.0 * PI)),
        Err(Error::GeometricDegeneracy(_)) => Err(Error::DisjointnessViolation {
            a: 0,
            b: 1,
            distance: 0.0,
        }),
        Err(e) => Err(e),
    }
}

/// Nearest integer to a Gauss linking number.
pub fn round_linking_number(lk: f64) -> i64 {
    lk.round() as i64
}
