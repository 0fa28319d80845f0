use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::curves::{ribbon::transport, PolygonalCurve, Ribbon};
use crate::error::{Error, Result};
use crate::geom::signed_angle;
use crate::invariants::{linking_number_gauss, total_torsion, writhe};

/// Increments closer than this to ±π are rejected as ambiguous half-turns.
pub const HALF_TURN_TOLERANCE: f64 = 1e-9;

/// Rotation of the framing across each edge, relative to parallel transport,
/// in (-π, π]. Entry `i` belongs to the edge from vertex `i` to `i + 1`.
pub fn twist_increments(ribbon: &Ribbon) -> Result<Vec<f64>> {
    let curve = ribbon.curve();
    let tangents = curve.vertex_tangents()?;
    let framing = ribbon.framing();
    let n = curve.len();
    (0..n)
        .map(|i| {
            let j = (i + 1) % n;
            let e = curve.edge_vector(i);
            let carried = transport(framing[i], tangents[i], e / e.norm(), tangents[j])
                .ok_or(Error::IllDefinedTransport { vertex: j })?;
            let phi = signed_angle(carried, framing[j], tangents[j]);
            if PI - phi.abs() < HALF_TURN_TOLERANCE {
                return Err(Error::AmbiguousTwist { edge: i });
            }
            Ok(phi)
        })
        .collect()
}

/// Discrete total twist: (1/2π) Σ of the framing increments over parallel
/// transport. For a parallel-transport ribbon only the closing edge
/// contributes, so its twist is its holonomy over 2π.
pub fn twist(ribbon: &Ribbon) -> Result<f64> {
    Ok(crate::sum::kahan_sum(twist_increments(ribbon)?) / TAU)
}

/// N = Tw - T.
pub fn intrinsic_twist(ribbon: &Ribbon) -> Result<f64> {
    Ok(twist(ribbon)? - total_torsion(ribbon.curve())?)
}

/// SL = Wr + Tw.
pub fn self_linking(ribbon: &Ribbon) -> Result<f64> {
    Ok(writhe(ribbon.curve())? + twist(ribbon)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PushoffCheck {
    pub self_linking: f64,
    /// Gauss linking number of the centerline with its pushoff.
    pub pushoff_linking: f64,
    /// Pushoff distance actually used.
    pub epsilon: f64,
}

/// Compare SL with Lk(C, C + εV). A pushoff that touches the centerline is
/// retried at ε/2 down to `1e-12` times the curve diameter.
pub fn self_linking_check(ribbon: &Ribbon, epsilon: f64) -> Result<PushoffCheck> {
    if !(epsilon > 0.0) {
        return Err(Error::InvalidParameter(format!("pushoff epsilon must be positive, got {epsilon}")));
    }
    let sl = self_linking(ribbon)?;
    let floor = 1e-12 * ribbon.curve().diameter();
    let mut eps = epsilon;
    while eps >= floor {
        let attempt = ribbon
            .pushoff(eps)
            .and_then(|p| pushoff_linking(ribbon.curve(), &p));
        match attempt {
            Ok(lk) => {
                return Ok(PushoffCheck {
                    self_linking: sl,
                    pushoff_linking: lk,
                    epsilon: eps,
                })
            }
            Err(Error::DisjointnessViolation { .. }) | Err(Error::DegenerateEdge { .. }) => eps /= 2.0,
            Err(e) => return Err(e),
        }
    }
    Err(Error::PushoffDegenerate { epsilon: eps })
}

fn pushoff_linking(curve: &PolygonalCurve, pushoff: &PolygonalCurve) -> Result<f64> {
    linking_number_gauss(curve, pushoff)
}

/// Default pushoff distance: 1e-3 of the shortest edge.
pub fn default_pushoff(ribbon: &Ribbon) -> f64 {
    1e-3 * ribbon.curve().min_edge_length()
}
