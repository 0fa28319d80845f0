use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::curves::PolygonalCurve;
use crate::error::{Error, Result};
use crate::invariants::edge_pair_solid_angle;
use crate::reconnection::site::{at, ReconnectionSite};
use crate::sum::{Execution, KahanSum};

/// Two polygons glued along a common segment that each traverses in the
/// opposite direction. The segment is stored in both curves; the writhe sum
/// counts it twice, once per orientation.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaCurve {
    a: PolygonalCurve,
    b: PolygonalCurve,
    site: ReconnectionSite,
}

/// Term-by-term check that the two copies of the common segment cancel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CancellationAudit {
    /// Number of (common sub-edge, other edge) terms checked.
    pub terms: usize,
    /// Largest |ω(a_k, e) + ω(b_k', e)| over all terms.
    pub max_residual: f64,
    /// Σ over all terms, compensated.
    pub total: f64,
}

/// Form the θ-curve from A and an aligned B. The common vertices must
/// coincide exactly.
pub fn theta_intermediate(a: &PolygonalCurve, b_aligned: &PolygonalCurve, site: &ReconnectionSite) -> Result<ThetaCurve> {
    site.validate(a.len(), b_aligned.len())?;
    let s = site.span;
    for k in 0..=s {
        if at(b_aligned, site.edge_b, k) != at(a, site.edge_a, s - k) {
            return Err(Error::InvalidState(format!(
                "common vertex {k} of A and B does not coincide; align first"
            )));
        }
    }
    Ok(ThetaCurve {
        a: a.clone(),
        b: b_aligned.clone(),
        site: *site,
    })
}

impl ThetaCurve {
    pub fn a(&self) -> &PolygonalCurve {
        &self.a
    }

    pub fn b(&self) -> &PolygonalCurve {
        &self.b
    }

    pub fn site(&self) -> &ReconnectionSite {
        &self.site
    }

    /// Writhe over every edge of A and B, with both copies of the common
    /// segment. Edges meeting at a vertex contribute 0.
    pub fn writhe(&self) -> Result<f64> {
        self.writhe_with(Execution::Serial)
    }

    pub fn writhe_with(&self, exec: Execution) -> Result<f64> {
        let edges: Vec<_> = self.a.edges().chain(self.b.edges()).collect();
        Ok(crate::invariants::pair_sum(&edges, exec)? / (2.0 * PI))
    }

    /// For every edge e off the common segment, ω(a_k, e) + ω(b_k', e) where
    /// b_k' is the copy of a_k in B.
    pub fn cancellation_audit(&self) -> Result<CancellationAudit> {
        let (n, m, s) = (self.a.len(), self.b.len(), self.site.span);
        let in_a = |i: usize| (i + n - self.site.edge_a) % n < s;
        let in_b = |j: usize| (j + m - self.site.edge_b) % m < s;
        let others: Vec<_> = (0..n)
            .filter(|&i| !in_a(i))
            .map(|i| self.a.edge(i))
            .chain((0..m).filter(|&j| !in_b(j)).map(|j| self.b.edge(j)))
            .collect();
        let mut total = KahanSum::new();
        let mut max_residual: f64 = 0.0;
        let mut terms = 0;
        for k in 0..s {
            let (p1, p2) = self.a.edge((self.site.edge_a + k) % n);
            let (q1, q2) = self.b.edge((self.site.edge_b + s - 1 - k) % m);
            for &(e1, e2) in &others {
                let r = edge_pair_solid_angle(p1, p2, e1, e2)? + edge_pair_solid_angle(q1, q2, e1, e2)?;
                max_residual = max_residual.max(r.abs());
                total.add(r);
                terms += 1;
            }
        }
        Ok(CancellationAudit {
            terms,
            max_residual,
            total: total.value(),
        })
    }
}
