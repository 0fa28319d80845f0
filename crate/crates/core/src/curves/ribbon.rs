use crate::curves::PolygonalCurve;
use crate::error::{Error, Result};
use crate::geom::{minimal_rotation, rotate_about, signed_angle, Vec3};

/// Tolerance on |V| - 1 accepted when validating a framing.
pub const UNIT_TOLERANCE: f64 = 1e-12;
/// Tolerance on V . t accepted when validating a framing.
pub const ORTHOGONALITY_TOLERANCE: f64 = 1e-9;

/// A closed polygon with one unit framing vector per vertex, each normal to the
/// vertex tangent.
#[derive(Debug, Clone, PartialEq)]
pub struct Ribbon {
    curve: PolygonalCurve,
    framing: Vec<Vec3>,
    holonomy: Option<f64>,
}

impl Ribbon {
    /// Validate and adopt `framing`. Vectors are renormalised to unit length after
    /// the tolerance check.
    pub fn new(curve: PolygonalCurve, framing: Vec<Vec3>) -> Result<Self> {
        if framing.len() != curve.len() {
            return Err(Error::InvalidFraming(format!(
                "{} framing vectors for {} vertices",
                framing.len(),
                curve.len()
            )));
        }
        let tangents = curve.vertex_tangents()?;
        let mut out = Vec::with_capacity(framing.len());
        for (i, (v, t)) in framing.iter().zip(&tangents).enumerate() {
            let n = v.norm();
            if !n.is_finite() || (n - 1.0).abs() > UNIT_TOLERANCE {
                return Err(Error::InvalidFraming(format!("vector {i} has length {n}")));
            }
            let u = *v / n;
            if u.dot(*t).abs() > ORTHOGONALITY_TOLERANCE {
                return Err(Error::InvalidFraming(format!(
                    "vector {i} is not normal to the tangent (dot {:e})",
                    u.dot(*t)
                )));
            }
            out.push(u);
        }
        Ok(Self {
            curve,
            framing: out,
            holonomy: None,
        })
    }

    /// Project arbitrary vectors into the normal planes and normalise them.
    pub fn from_projected(curve: PolygonalCurve, raw: &[Vec3]) -> Result<Self> {
        let tangents = curve.vertex_tangents()?;
        if raw.len() != tangents.len() {
            return Err(Error::InvalidFraming(format!(
                "{} framing vectors for {} vertices",
                raw.len(),
                tangents.len()
            )));
        }
        let framing = raw
            .iter()
            .zip(&tangents)
            .enumerate()
            .map(|(i, (v, t))| {
                (*v - *t * v.dot(*t))
                    .try_normalize(1e-12)
                    .ok_or_else(|| Error::InvalidFraming(format!("vector {i} is parallel to the tangent")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(curve, framing)
    }

    pub fn curve(&self) -> &PolygonalCurve {
        &self.curve
    }

    pub fn framing(&self) -> &[Vec3] {
        &self.framing
    }

    /// Closure defect of a parallel-transport framing, in (-pi, pi].
    pub fn holonomy(&self) -> Option<f64> {
        self.holonomy
    }

    pub fn len(&self) -> usize {
        self.framing.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn translate(&self, v: Vec3) -> Self {
        Self {
            curve: self.curve.translate(v),
            framing: self.framing.clone(),
            holonomy: self.holonomy,
        }
    }

    pub fn rotate(&self, center: crate::geom::Point3, axis: Vec3, angle: f64) -> Self {
        Self {
            curve: self.curve.rotate(center, axis, angle),
            framing: self
                .framing
                .iter()
                .map(|&v| rotate_about(v, axis, angle))
                .collect(),
            holonomy: self.holonomy,
        }
    }

    /// Centerline displaced by `epsilon` along the framing.
    pub fn pushoff(&self, epsilon: f64) -> Result<PolygonalCurve> {
        PolygonalCurve::new(
            self.curve
                .vertices()
                .iter()
                .zip(&self.framing)
                .map(|(&p, &v)| p + v * epsilon)
                .collect(),
        )
    }

    /// Rotate every framing vector about its tangent by `angles[i]`.
    pub fn rotated_by(&self, angles: &[f64]) -> Result<Self> {
        let tangents = self.curve.vertex_tangents()?;
        let framing = self
            .framing
            .iter()
            .zip(&tangents)
            .zip(angles)
            .map(|((&v, &t), &a)| rotate_about(v, t, a))
            .collect();
        Self::new(self.curve.clone(), framing)
    }
}

/// A ribbon carrying a positive scalar flux.
#[derive(Debug, Clone, PartialEq)]
pub struct FluxTube {
    ribbon: Ribbon,
    flux: f64,
}

impl FluxTube {
    pub fn new(ribbon: Ribbon, flux: f64) -> Result<Self> {
        if !(flux.is_finite() && flux > 0.0) {
            return Err(Error::InvalidParameter(format!("flux must be finite and positive, got {flux}")));
        }
        Ok(Self { ribbon, flux })
    }

    pub fn ribbon(&self) -> &Ribbon {
        &self.ribbon
    }

    pub fn flux(&self) -> f64 {
        self.flux
    }
}

/// Carry `v` (normal to `t_from`) across an edge with unit direction `edge`
/// onto the normal plane of `t_to`: minimal rotation `t_from -> edge`, then
/// `edge -> t_to`.
pub(crate) fn transport(v: Vec3, t_from: Vec3, edge: Vec3, t_to: Vec3) -> Option<Vec3> {
    let w = minimal_rotation(v, t_from, edge)?;
    let w = minimal_rotation(w, edge, t_to)?;
    // re-project to suppress drift
    (w - t_to * w.dot(t_to)).try_normalize(1e-12)
}

/// Zero-twist reference framing: `v0` carried along the polygon by parallel
/// transport. The transported vector generally fails to close up; the angle
/// from the returning vector to `v0` is stored as the ribbon's holonomy.
pub fn parallel_transport_frame(curve: &PolygonalCurve, v0: Vec3) -> Result<Ribbon> {
    let tangents = curve.vertex_tangents()?;
    let n = curve.len();
    if (v0.norm() - 1.0).abs() > UNIT_TOLERANCE {
        return Err(Error::InvalidParameter("initial framing vector must be unit".into()));
    }
    if v0.dot(tangents[0]).abs() > ORTHOGONALITY_TOLERANCE {
        return Err(Error::InvalidParameter(
            "initial framing vector must be normal to the tangent at vertex 0".into(),
        ));
    }
    let mut framing = Vec::with_capacity(n);
    let mut v = (v0 - tangents[0] * v0.dot(tangents[0])) / v0.norm();
    framing.push(v);
    for i in 0..n {
        let e = curve.edge_vector(i);
        let e = e / e.norm();
        let j = (i + 1) % n;
        v = transport(v, tangents[i], e, tangents[j])
            .ok_or(Error::IllDefinedTransport { vertex: j })?;
        if j != 0 {
            framing.push(v);
        }
    }
    let holonomy = signed_angle(v, framing[0], tangents[0]);
    let mut ribbon = Ribbon::new(curve.clone(), framing)?;
    ribbon.holonomy = Some(holonomy);
    Ok(ribbon)
}

/// Frenet-style framing: the unit principal normal `b x t` at every vertex,
/// where `b` is the discrete binormal `e_{i-1} x e_i`.
pub fn frenet_frame(curve: &PolygonalCurve) -> Result<Ribbon> {
    let tangents = curve.vertex_tangents()?;
    let n = curve.len();
    let framing = (0..n)
        .map(|i| {
            let b = curve.edge_vector((i + n - 1) % n).cross(curve.edge_vector(i));
            let b = b.try_normalize(1e-14).ok_or_else(|| {
                Error::GeometricDegeneracy(format!("collinear vertex {i} has no principal normal"))
            })?;
            Ok(b.cross(tangents[i]))
        })
        .collect::<Result<Vec<_>>>()?;
    Ribbon::new(curve.clone(), framing)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::make_circle;
    use crate::geom::Point3;

    #[test]
    fn planar_circle_transport_is_constant() {
        let c = make_circle(Point3::ZERO, Vec3::Z, 1.0, 32).unwrap();
        let r = parallel_transport_frame(&c, Vec3::Z).unwrap();
        for v in r.framing() {
            assert!((*v - Vec3::Z).norm() < 1e-14);
        }
        assert!(r.holonomy().unwrap().abs() < 1e-14);
    }

    #[test]
    fn rejects_non_normal_framing() {
        let c = make_circle(Point3::ZERO, Vec3::Z, 1.0, 8).unwrap();
        let bad = vec![Vec3::X; 8];
        assert!(matches!(Ribbon::new(c.clone(), bad), Err(Error::InvalidFraming(_))));
        assert!(matches!(
            parallel_transport_frame(&c, Vec3::Y),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn hairpin_transport_is_ill_defined() {
        // the tangent at vertex 1 is undefined: the polygon doubles straight back
        let c = PolygonalCurve::new(vec![
            Point3::ZERO,
            Point3::new(2.0, 0.0, 0.0),
            Point3::new(1.0, 0.0, 0.0),
            Point3::new(1.0, 1.0, 0.0),
        ])
        .unwrap();
        assert!(matches!(
            parallel_transport_frame(&c, Vec3::Z),
            Err(Error::IllDefinedTransport { .. })
        ));
    }

    #[test]
    fn flux_must_be_positive() {
        let c = make_circle(Point3::ZERO, Vec3::Z, 1.0, 8).unwrap();
        let r = parallel_transport_frame(&c, Vec3::Z).unwrap();
        assert!(FluxTube::new(r.clone(), 0.0).is_err());
        assert!(FluxTube::new(r, 2.0).is_ok());
    }
}
