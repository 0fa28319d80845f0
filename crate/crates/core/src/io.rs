//! The `writhe-lab-curves` JSON file format.

use std::fmt::Write as _;
use std::path::Path;

use serde::Deserialize;

use crate::curves::{CurveSystem, FluxTube, PolygonalCurve, Ribbon};
use crate::error::{Error, Result};
use crate::geom::Point3;

pub const FORMAT_NAME: &str = "writhe-lab-curves";
pub const FORMAT_VERSION: u32 = 1;

/// One closed component as stored on disk.
#[derive(Debug, Clone, PartialEq)]
pub struct Component {
    pub curve: PolygonalCurve,
    pub framing: Option<Vec<Point3>>,
    pub flux: Option<f64>,
}

impl Component {
    pub fn bare(curve: PolygonalCurve) -> Self {
        Self {
            curve,
            framing: None,
            flux: None,
        }
    }

    pub fn from_ribbon(ribbon: &Ribbon) -> Self {
        Self {
            curve: ribbon.curve().clone(),
            framing: Some(ribbon.framing().to_vec()),
            flux: None,
        }
    }

    pub fn from_tube(tube: &FluxTube) -> Self {
        Self {
            flux: Some(tube.flux()),
            ..Self::from_ribbon(tube.ribbon())
        }
    }

    /// The framed ribbon, if the component carries a framing.
    pub fn ribbon(&self) -> Option<Result<Ribbon>> {
        self.framing.as_ref().map(|f| Ribbon::new(self.curve.clone(), f.clone()))
    }

    /// The flux tube, if the component carries both a framing and a flux.
    pub fn tube(&self) -> Option<Result<FluxTube>> {
        match (self.ribbon(), self.flux) {
            (Some(r), Some(flux)) => Some(r.and_then(|r| FluxTube::new(r, flux))),
            _ => None,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    format: String,
    version: u32,
    components: Vec<RawComponent>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComponent {
    closed: bool,
    #[serde(default)]
    flux: Option<f64>,
    vertices: Vec<[f64; 3]>,
    #[serde(default)]
    framing: Option<Vec<[f64; 3]>>,
}

fn points(raw: Vec<[f64; 3]>) -> Vec<Point3> {
    raw.into_iter().map(Point3::from_array).collect()
}

/// Parse a curve document. Syntax errors carry line and column.
pub fn parse_curves(text: &str) -> Result<Vec<Component>> {
    let raw: RawFile = serde_json::from_str(text)
        .map_err(|e| Error::Format(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    if raw.format != FORMAT_NAME {
        return Err(Error::Format(format!("unknown format {:?}", raw.format)));
    }
    if raw.version != FORMAT_VERSION {
        return Err(Error::Format(format!("unsupported version {}", raw.version)));
    }
    raw.components
        .into_iter()
        .enumerate()
        .map(|(k, c)| {
            if !c.closed {
                return Err(Error::Format(format!("component {k}: open curves are not supported")));
            }
            let curve = PolygonalCurve::new(points(c.vertices))
                .map_err(|e| Error::Format(format!("component {k}: {e}")))?;
            let framing = c.framing.map(points);
            if let Some(f) = &framing {
                if f.len() != curve.len() {
                    return Err(Error::Format(format!(
                        "component {k}: {} framing vectors for {} vertices",
                        f.len(),
                        curve.len()
                    )));
                }
            }
            Ok(Component {
                curve,
                framing,
                flux: c.flux,
            })
        })
        .collect()
}

pub fn read_curves(path: &Path) -> Result<Vec<Component>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    parse_curves(&text)
}

/// Components as a disjointness-checked system.
pub fn system_of(components: &[Component]) -> Result<CurveSystem> {
    CurveSystem::new(components.iter().map(|c| c.curve.clone()).collect())
}

fn number(out: &mut String, v: f64) {
    // 17 significant digits round-trip every double exactly
    let _ = write!(out, "{v:.16e}");
}

fn triples(out: &mut String, name: &str, pts: &[Point3]) {
    let _ = write!(out, "      \"{name}\": [\n");
    for (i, p) in pts.iter().enumerate() {
        out.push_str("        [");
        number(out, p.x);
        out.push_str(", ");
        number(out, p.y);
        out.push_str(", ");
        number(out, p.z);
        out.push(']');
        out.push_str(if i + 1 < pts.len() { ",\n" } else { "\n" });
    }
    out.push_str("      ]");
}

/// Serialize components, one vertex per line.
pub fn write_curves(components: &[Component]) -> String {
    let mut out = String::new();
    let _ = write!(
        out,
        "{{\n  \"format\": \"{FORMAT_NAME}\",\n  \"version\": {FORMAT_VERSION},\n  \"components\": [\n"
    );
    for (k, c) in components.iter().enumerate() {
        out.push_str("    {\n      \"closed\": true,\n");
        if let Some(flux) = c.flux {
            out.push_str("      \"flux\": ");
            number(&mut out, flux);
            out.push_str(",\n");
        }
        triples(&mut out, "vertices", c.curve.vertices());
        if let Some(f) = &c.framing {
            out.push_str(",\n");
            triples(&mut out, "framing", f);
        }
        out.push_str(if k + 1 < components.len() { "\n    },\n" } else { "\n    }\n" });
    }
    out.push_str("  ]\n}\n");
    out
}

pub fn write_curves_to(path: &Path, components: &[Component]) -> Result<()> {
    std::fs::write(path, write_curves(components)).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}
