//! Trefoil → Hopf link → unknot → two unlinked circles.

use serde::Serialize;

use crate::curves::{parallel_transport_frame, CurveSystem, FluxTube, PolygonalCurve};
use crate::error::Result;
use crate::geom::Point3;
use crate::invariants::{linking_number_gauss, writhe_system};
use crate::reconnection::{
    juxtapose, reconnect_tubes, self_reconnect_tube, trefoil_theta, ReconnectionLedger, ReconnectionSite,
    PATHWAY_FINGER,
};

/// Pairwise linking number of two components after a step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LinkEntry {
    pub a: usize,
    pub b: usize,
    pub lk: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PathwayStep {
    /// The curves handed to the reconnection, already juxtaposed.
    pub input: CurveSystem,
    pub output: CurveSystem,
    pub site: ReconnectionSite,
    pub ledger: ReconnectionLedger,
    pub writhe_after: f64,
    pub links: Vec<LinkEntry>,
}

impl PathwayStep {
    pub fn delta_wr(&self) -> f64 {
        self.ledger.delta_wr()
    }
}

fn tube(curve: &PolygonalCurve) -> Result<FluxTube> {
    let v0 = curve.vertex_tangent(0)?.any_orthogonal();
    FluxTube::new(parallel_transport_frame(curve, v0)?, 1.0)
}

fn finish(input: CurveSystem, site: ReconnectionSite, tubes: &[FluxTube], ledger: ReconnectionLedger) -> Result<PathwayStep> {
    let output = CurveSystem::new(tubes.iter().map(|t| t.ribbon().curve().clone()).collect())?;
    let c = output.components();
    let mut links = Vec::new();
    for a in 0..c.len() {
        for b in a + 1..c.len() {
            links.push(LinkEntry {
                a,
                b,
                lk: linking_number_gauss(&c[a], &c[b])?,
            });
        }
    }
    Ok(PathwayStep {
        writhe_after: writhe_system(&output)?,
        input,
        output,
        site,
        ledger,
        links,
    })
}

/// Run the three reconnections. Every tube carries unit flux and a
/// parallel-transport framing of its input curve.
pub fn run_pathway() -> Result<Vec<PathwayStep>> {
    let (trefoil, site) = trefoil_theta(0.0);
    let (hopf, ledger) = self_reconnect_tube(&tube(&trefoil)?, &site)?;
    let first = finish(CurveSystem::single(trefoil), site, &hopf, ledger)?;

    // A's edge 0 sits at index 4 of the first Hopf component
    let site = ReconnectionSite::new(4, 0);
    let (unknot, ledger) = reconnect_tubes(&hopf[0], &hopf[1], &site)?;
    let pair = CurveSystem::new_unchecked(hopf.iter().map(|t| t.ribbon().curve().clone()).collect());
    let second = finish(pair, site, std::slice::from_ref(&unknot), ledger)?;

    let [x, y] = PATHWAY_FINGER.map(|(x, y, z)| Point3::new(x, y, z));
    let u = unknot.ribbon().curve();
    // edges 1 and 3 of the unknot are the two vertical sides of A
    let (pinched, site) = juxtapose(u, 1, 3, x, y, Point3::ZERO)?;
    let (circles, ledger) = self_reconnect_tube(&tube(&pinched)?, &site)?;
    let third = finish(CurveSystem::single(pinched), site, &circles, ledger)?;
    Ok(vec![first, second, third])
}
