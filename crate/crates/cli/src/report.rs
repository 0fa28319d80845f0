use serde::Serialize;
use writhe_lab::io::Component;
use writhe_lab::{
    directional_writhe_generic, helicity_single, linking_number_gauss, total_torsion_report, twist, writhe,
    writhe_system, CurveSystem, ProjectionReport, Result, Vec3,
};

#[derive(Debug, Serialize)]
pub struct ComponentReport {
    pub index: usize,
    pub vertices: usize,
    pub length: f64,
    pub writhe: f64,
    pub total_torsion: f64,
    /// Vertices with collinear incident edges, skipped by the torsion sum.
    pub torsion_degenerate_vertices: Vec<usize>,
    pub twist: Option<f64>,
    pub intrinsic_twist: Option<f64>,
    pub self_linking: Option<f64>,
    pub flux: Option<f64>,
    pub helicity: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct PairReport {
    pub a: usize,
    pub b: usize,
    pub linking_number: f64,
}

#[derive(Debug, Serialize)]
pub struct InvariantReport {
    pub components: Vec<ComponentReport>,
    pub pairs: Vec<PairReport>,
    pub system_writhe: f64,
    /// Present when every component carries a framing and a flux.
    pub system_helicity: Option<f64>,
    pub projection: Option<ProjectionReport>,
}

pub fn build(components: &[Component], system: &CurveSystem, nu: Option<Vec3>, seed: u64) -> Result<InvariantReport> {
    let mut out = Vec::with_capacity(components.len());
    for (index, c) in components.iter().enumerate() {
        let torsion = total_torsion_report(&c.curve);
        let wr = writhe(&c.curve)?;
        let ribbon = c.ribbon().transpose()?;
        let tw = ribbon.as_ref().map(twist).transpose()?;
        let helicity = c.tube().transpose()?.map(|t| helicity_single(&t)).transpose()?;
        out.push(ComponentReport {
            index,
            vertices: c.curve.len(),
            length: c.curve.length(),
            writhe: wr,
            total_torsion: torsion.total_torsion,
            torsion_degenerate_vertices: torsion.degenerate_vertices,
            twist: tw,
            intrinsic_twist: tw.map(|t| t - torsion.total_torsion),
            self_linking: tw.map(|t| wr + t),
            flux: c.flux,
            helicity: helicity.map(|h| h.helicity),
        });
    }
    let curves = system.components();
    let mut pairs = Vec::new();
    for a in 0..curves.len() {
        for b in a + 1..curves.len() {
            pairs.push(PairReport {
                a,
                b,
                linking_number: linking_number_gauss(&curves[a], &curves[b])?,
            });
        }
    }
    let system_helicity = out.iter().map(|c| c.helicity.zip(c.flux)).collect::<Option<Vec<_>>>().map(|h| {
        let own: f64 = h.iter().map(|(h, _)| h).sum();
        let mutual: f64 = pairs.iter().map(|p| 2.0 * h[p.a].1 * h[p.b].1 * p.linking_number).sum();
        own + mutual
    });
    let projection = nu.map(|nu| directional_writhe_generic(system, nu, seed)).transpose()?;
    Ok(InvariantReport {
        components: out,
        pairs,
        system_writhe: writhe_system(system)?,
        system_helicity,
        projection,
    })
}

/// One row per quantity: `scope,a,b,quantity,value`.
pub fn to_csv(report: &InvariantReport) -> std::result::Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["scope", "a", "b", "quantity", "value"])?;
    let mut row = |scope: &str, a: Option<usize>, b: Option<usize>, q: &str, v: f64| {
        let idx = |i: Option<usize>| i.map(|i| i.to_string()).unwrap_or_default();
        w.write_record([scope, &idx(a), &idx(b), q, &v.to_string()])
    };
    for c in &report.components {
        let i = Some(c.index);
        row("component", i, None, "vertices", c.vertices as f64)?;
        row("component", i, None, "length", c.length)?;
        row("component", i, None, "writhe", c.writhe)?;
        row("component", i, None, "total_torsion", c.total_torsion)?;
        for (name, v) in [
            ("twist", c.twist),
            ("intrinsic_twist", c.intrinsic_twist),
            ("self_linking", c.self_linking),
            ("flux", c.flux),
            ("helicity", c.helicity),
        ] {
            if let Some(v) = v {
                row("component", i, None, name, v)?;
            }
        }
    }
    for p in &report.pairs {
        row("pair", Some(p.a), Some(p.b), "linking_number", p.linking_number)?;
    }
    row("system", None, None, "writhe", report.system_writhe)?;
    if let Some(h) = report.system_helicity {
        row("system", None, None, "helicity", h)?;
    }
    if let Some(p) = &report.projection {
        row("system", None, None, "directional_writhe", p.directional_writhe as f64)?;
        row("system", None, None, "crossings", p.crossings.len() as f64)?;
    }
    drop(row);
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}
