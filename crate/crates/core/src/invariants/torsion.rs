use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::{Deserialize, Serialize};

use crate::curves::PolygonalCurve;
use crate::error::Result;
use crate::geom::signed_angle;

/// Total torsion together with the vertices whose binormal vanished.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TorsionReport {
    pub total_torsion: f64,
    /// Vertices where the two incident edges are collinear; they contribute 0.
    pub degenerate_vertices: Vec<usize>,
}

/// Dihedral angle between two planes with normals `a` and `b`, about `axis`,
/// in (-π/2, π/2].
fn plane_angle(a: crate::geom::Vec3, b: crate::geom::Vec3, axis: crate::geom::Vec3) -> f64 {
    let mut phi = signed_angle(a, b, axis);
    if phi > FRAC_PI_2 {
        phi -= PI;
    } else if phi <= -FRAC_PI_2 {
        phi += PI;
    }
    phi
}

/// Normalized discrete total torsion: (1/2π) Σ of the signed dihedral angles
/// between consecutive osculating planes, each about the edge joining them.
/// Runs of collinear vertices are bridged by the dihedral between the nearest
/// well-defined binormals.
pub fn total_torsion_report(curve: &PolygonalCurve) -> TorsionReport {
    let n = curve.len();
    let edges: Vec<_> = (0..n).map(|i| curve.edge_vector(i)).collect();
    let mut binormals = Vec::with_capacity(n);
    let mut degenerate_vertices = Vec::new();
    for i in 0..n {
        let (e0, e1) = (edges[(i + n - 1) % n], edges[i]);
        let b = e0.cross(e1);
        if b.norm() <= 1e-12 * e0.norm() * e1.norm() {
            degenerate_vertices.push(i);
        } else {
            binormals.push((i, b));
        }
    }
    let mut sum = crate::sum::KahanSum::new();
    let m = binormals.len();
    if m >= 2 {
        for k in 0..m {
            let (i, b0) = binormals[k];
            let (_, b1) = binormals[(k + 1) % m];
            sum.add(plane_angle(b0, b1, edges[i] / edges[i].norm()));
        }
    }
    TorsionReport {
        total_torsion: sum.value() / TAU,
        degenerate_vertices,
    }
}

pub fn total_torsion(curve: &PolygonalCurve) -> Result<f64> {
    Ok(total_torsion_report(curve).total_torsion)
}
