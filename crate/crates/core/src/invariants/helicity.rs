use serde::{Deserialize, Serialize};

use crate::curves::FluxTube;
use crate::error::Result;
use crate::invariants::{linking_number_gauss, total_torsion, twist, writhe};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HelicityReport {
    pub writhe: f64,
    pub total_torsion: f64,
    pub intrinsic_twist: f64,
    pub twist: f64,
    pub self_linking: f64,
    pub flux: f64,
    pub centerline_helicity: f64,
    pub intrinsic_twist_helicity: f64,
    pub helicity: f64,
}

/// Helicity of a single tube, H = Φ²(Wr + Tw), split into the centerline part
/// Φ²(Wr + T) and the intrinsic part Φ²N.
pub fn helicity_single(tube: &FluxTube) -> Result<HelicityReport> {
    let ribbon = tube.ribbon();
    let wr = writhe(ribbon.curve())?;
    let t = total_torsion(ribbon.curve())?;
    let tw = twist(ribbon)?;
    let n = tw - t;
    let phi2 = tube.flux() * tube.flux();
    Ok(HelicityReport {
        writhe: wr,
        total_torsion: t,
        intrinsic_twist: n,
        twist: tw,
        self_linking: wr + tw,
        flux: tube.flux(),
        centerline_helicity: phi2 * (wr + t),
        intrinsic_twist_helicity: phi2 * n,
        helicity: phi2 * (wr + tw),
    })
}

/// H(α, β) = Φ_α² SL(α) + Φ_β² SL(β) + 2 Φ_α Φ_β Lk(C_α, C_β).
pub fn helicity_pair(a: &FluxTube, b: &FluxTube) -> Result<f64> {
    let ha = helicity_single(a)?;
    let hb = helicity_single(b)?;
    let lk = linking_number_gauss(a.ribbon().curve(), b.ribbon().curve())?;
    Ok(ha.helicity + hb.helicity + 2.0 * a.flux() * b.flux() * lk)
}
