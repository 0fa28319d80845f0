use serde::{Deserialize, Serialize};

use crate::curves::{CurveSystem, FluxTube, PolygonalCurve, Ribbon};
use crate::error::{Error, Result};
use crate::geom::Point3;
use crate::invariants::{linking_number_gauss, total_torsion, twist, writhe, writhe_system};
use crate::reconnection::site::{align_for_reconnection, ReconnectionSite};
use crate::reconnection::surgery::{self_reconnect, snap_self, splice};

/// Before/after bookkeeping of one reconnection.
///
/// `delta_tw` and `delta_n` are before minus after; `delta_h` is after minus
/// before. With ΔWr = 0 this makes `delta_h = -Φ² delta_tw`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReconnectionLedger {
    pub wr_before: f64,
    pub wr_after: f64,
    pub lk_before: f64,
    pub tw_before_a: f64,
    pub tw_before_b: f64,
    pub tw_after: f64,
    pub t_before: f64,
    pub t_after: f64,
    pub n_before: f64,
    pub n_after: f64,
    pub delta_tw: f64,
    pub delta_n: f64,
    pub delta_h: f64,
    pub h_before: f64,
    pub h_after: f64,
}

impl ReconnectionLedger {
    pub fn delta_wr(&self) -> f64 {
        self.wr_after - self.wr_before
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        flux: f64,
        wr_before: f64,
        lk_before: f64,
        tw_before: (f64, f64),
        t_before: f64,
        wr_after: f64,
        tw_after: f64,
        t_after: f64,
    ) -> Self {
        let phi2 = flux * flux;
        let n_before = tw_before.0 + tw_before.1 - t_before;
        let n_after = tw_after - t_after;
        let h_before = phi2 * (wr_before + tw_before.0 + tw_before.1);
        let h_after = phi2 * (wr_after + tw_after);
        Self {
            wr_before,
            wr_after,
            lk_before,
            tw_before_a: tw_before.0,
            tw_before_b: tw_before.1,
            tw_after,
            t_before,
            t_after,
            n_before,
            n_after,
            delta_tw: tw_before.0 + tw_before.1 - tw_after,
            delta_n: n_before - n_after,
            delta_h: h_after - h_before,
            h_before,
            h_after,
        }
    }
}

/// Framing vector carried over to a junction vertex: the old vector projected
/// onto the normal plane of the new tangent.
fn junction_vector(v: Point3, tangent: Point3, vertex: usize) -> Result<Point3> {
    (v - tangent * v.dot(tangent))
        .try_normalize(1e-9)
        .ok_or_else(|| Error::InvalidFraming(format!("framing at junction vertex {vertex} is tangent to the spliced curve")))
}

/// Reframe `curve` from per-vertex vectors, projecting each onto the normal
/// plane of the new tangent (only junctions actually move).
fn reframe(curve: PolygonalCurve, raw: Vec<Point3>) -> Result<Ribbon> {
    let tangents = curve.vertex_tangents()?;
    let framing = raw
        .iter()
        .zip(&tangents)
        .enumerate()
        .map(|(k, (&v, &t))| junction_vector(v, t, k))
        .collect::<Result<Vec<_>>>()?;
    Ribbon::new(curve, framing)
}

fn same_flux(a: f64, b: f64) -> Result<f64> {
    if (a - b).abs() > 1e-12 * a.abs().max(b.abs()) {
        return Err(Error::UnequalFlux { a, b });
    }
    Ok(a)
}

/// Reconnect two equal-flux tubes. The new framing keeps A's vectors on A's
/// retained arc (including both junctions) and B's on B's.
pub fn reconnect_tubes(a: &FluxTube, b: &FluxTube, site: &ReconnectionSite) -> Result<(FluxTube, ReconnectionLedger)> {
    let flux = same_flux(a.flux(), b.flux())?;
    let (ca, cb) = (a.ribbon().curve(), b.ribbon().curve());
    let aligned = align_for_reconnection(ca, cb, site)?;
    let (verts, merged) = splice(ca, &aligned.b, site);
    if merged > 0 {
        return Err(Error::InvalidState(format!("splice merged {merged} coincident vertices; framing is ambiguous")));
    }
    let (n, m, s) = (ca.len(), cb.len(), site.span);
    let (fa, fb) = (a.ribbon().framing(), b.ribbon().framing());
    let mut raw: Vec<Point3> = (0..=n - s).map(|k| fa[(site.edge_a + s + k) % n]).collect();
    raw.extend((1..m - s).map(|k| fb[(site.edge_b + s + k) % m]));
    let joined = PolygonalCurve::new(verts)?;
    let ribbon = reframe(joined, raw)?;

    let before = CurveSystem::new(vec![ca.clone(), cb.clone()])?;
    let ledger = ReconnectionLedger::assemble(
        flux,
        writhe_system(&before)?,
        linking_number_gauss(ca, cb)?,
        (twist(a.ribbon())?, twist(b.ribbon())?),
        total_torsion(ca)? + total_torsion(cb)?,
        writhe(ribbon.curve())?,
        twist(&ribbon)?,
        total_torsion(ribbon.curve())?,
    );
    Ok((FluxTube::new(ribbon, flux)?, ledger))
}

/// Split a self-juxtaposed tube. The "before" writhe is that of the tube as
/// given (gap included); `lk_before` and `tw_before_b` are 0.
pub fn self_reconnect_tube(tube: &FluxTube, site: &ReconnectionSite) -> Result<(Vec<FluxTube>, ReconnectionLedger)> {
    let c = tube.ribbon().curve();
    let n = c.len();
    let pieces = self_reconnect(c, site)?;
    let snapped = snap_self(c, site)?;
    let framing = tube.ribbon().framing();
    let (i, j, s) = (site.edge_a, site.edge_b, site.span);
    let mut tubes = Vec::with_capacity(2);
    for (piece, start) in pieces.components().iter().zip([i + s, j + s]) {
        let raw: Vec<Point3> = (0..piece.len()).map(|k| framing[(start + k) % n]).collect();
        debug_assert_eq!(piece.vertex(0), snapped[start % n]);
        tubes.push(FluxTube::new(reframe(piece.clone(), raw)?, tube.flux())?);
    }
    let tw_after = twist(tubes[0].ribbon())? + twist(tubes[1].ribbon())?;
    let t_after = total_torsion(&pieces.components()[0])? + total_torsion(&pieces.components()[1])?;
    let ledger = ReconnectionLedger::assemble(
        tube.flux(),
        writhe(c)?,
        0.0,
        (twist(tube.ribbon())?, 0.0),
        total_torsion(c)?,
        writhe_system(&pieces)?,
        tw_after,
        t_after,
    );
    Ok((tubes, ledger))
}
