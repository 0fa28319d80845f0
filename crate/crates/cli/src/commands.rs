use std::error::Error;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use writhe_lab::io::{self, Component};
use writhe_lab::{
    directional_writhe, make_circle, make_hopf_link, make_random_closed_polygon, make_torus_knot,
    parallel_transport_frame, reconnect_tubes, run_pathway, self_reconnect_tube, tracing_frames, writhe,
    writhe_monte_carlo_trace, CurveSystem, FluxTube, Point3, ReconnectionLedger, Vec3,
};
use writhe_lab::{
    cut_construction, hopf_pair, k_turn_tubes, trefoil_theta, untwisted_tubes, PolygonalCurve, ReconnectionSite,
};

use crate::args::{Format, GenArgs, InvariantsArgs, Kind, PathwayArgs, ReconnectArgs, SweepArgs, Tolerances};
use crate::report;

pub type CmdResult = Result<bool, Box<dyn Error>>;

fn emit(out: Option<&Path>, text: &str) -> Result<(), Box<dyn Error>> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display()))?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn json<T: serde::Serialize>(value: &T) -> Result<String, Box<dyn Error>> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn site_text(s: &ReconnectionSite) -> String {
    if s.span == 1 {
        format!("{},{}", s.edge_a, s.edge_b)
    } else {
        format!("{},{},{}", s.edge_a, s.edge_b, s.span)
    }
}

/// Built-in reconnection fixtures; the site is printed on standard output.
fn gen_fixture(a: &GenArgs) -> Result<Option<(Vec<Component>, ReconnectionSite)>, Box<dyn Error>> {
    let bare = |v: Vec<&PolygonalCurve>| v.into_iter().cloned().map(Component::bare).collect::<Vec<_>>();
    Ok(Some(match a.kind {
        Kind::Squares => {
            let (x, y, site) = untwisted_tubes();
            (vec![Component::from_tube(&x), Component::from_tube(&y)], site)
        }
        Kind::KTurn => {
            let (x, y, site) = k_turn_tubes(a.turns);
            (vec![Component::from_tube(&x), Component::from_tube(&y)], site)
        }
        Kind::HopfPair => {
            let h = hopf_pair();
            (bare(vec![&h.a, &h.b]), h.site)
        }
        Kind::TrefoilTheta => {
            let (t, site) = trefoil_theta(0.0);
            (bare(vec![&t]), site)
        }
        Kind::CutPair => {
            let c = cut_construction(a.n, a.n, a.seed)?;
            (bare(vec![&c.pair.a, &c.pair.b]), c.pair.site)
        }
        _ => return Ok(None),
    }))
}

pub fn gen(a: &GenArgs) -> CmdResult {
    if let Some((comps, site)) = gen_fixture(a)? {
        io::write_curves_to(&a.out, &comps)?;
        println!("site {}", site_text(&site));
        return Ok(true);
    }
    let system = match a.kind {
        Kind::Circle => CurveSystem::single(make_circle(Point3::ZERO, Vec3::Z, a.radius.unwrap_or(1.0), a.n)?),
        Kind::TorusKnot => CurveSystem::single(make_torus_knot(a.p, a.q, a.radius.unwrap_or(2.0), a.minor, a.n)?),
        Kind::Hopf => make_hopf_link(a.separation, a.radius.unwrap_or(1.0), a.n)?,
        Kind::Random => CurveSystem::single(make_random_closed_polygon(a.n, a.seed)?),
        _ => unreachable!("fixtures handled above"),
    };
    let comps: Vec<_> = system.into_components().into_iter().map(Component::bare).collect();
    io::write_curves_to(&a.out, &comps)?;
    Ok(true)
}

fn read(path: &Path) -> Result<Vec<Component>, Box<dyn Error>> {
    io::read_curves(path).map_err(|e| format!("{}: {e}", path.display()).into())
}

pub fn invariants(a: &InvariantsArgs) -> CmdResult {
    let comps = read(&a.input)?;
    let system = io::system_of(&comps)?;
    let r = report::build(&comps, &system, a.nu, a.seed)?;
    let text = match a.format {
        Format::Json => json(&r)?,
        Format::Csv => report::to_csv(&r)?,
    };
    emit(a.out.as_deref(), &text)?;
    Ok(true)
}

/// The component's own tube; otherwise its framing, or a parallel-transport
/// framing, with unit flux.
fn tube_of(c: &Component) -> Result<FluxTube, Box<dyn Error>> {
    if let Some(t) = c.tube() {
        return Ok(t?);
    }
    let ribbon = match c.ribbon() {
        Some(r) => r?,
        None => parallel_transport_frame(&c.curve, c.curve.vertex_tangent(0)?.any_orthogonal())?,
    };
    Ok(FluxTube::new(ribbon, 1.0)?)
}

fn ledger_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{stem}.ledger.json"))
}

pub fn reconnect(a: &ReconnectArgs) -> CmdResult {
    let tol = Tolerances::resolve(&a.tol)?;
    let comps = read(&a.input)?;
    let site = a.site.clone().with_snap_tolerance(tol.snap);
    let context = |e: writhe_lab::Error| format!("site {},{}: {e}", site.edge_a, site.edge_b);
    let (tubes, ledger): (Vec<FluxTube>, ReconnectionLedger) = match &comps[..] {
        [c] => self_reconnect_tube(&tube_of(c)?, &site).map_err(context)?,
        [c, d] => {
            io::system_of(&comps)?;
            let (t, l) = reconnect_tubes(&tube_of(c)?, &tube_of(d)?, &site).map_err(context)?;
            (vec![t], l)
        }
        _ => return Err(format!("expected 1 or 2 components, found {}", comps.len()).into()),
    };
    let framed = comps.iter().any(|c| c.framing.is_some());
    let out: Vec<_> = tubes
        .iter()
        .map(|t| {
            if framed {
                Component::from_tube(t)
            } else {
                Component::bare(t.ribbon().curve().clone())
            }
        })
        .collect();
    io::write_curves_to(&a.out, &out)?;
    let lp = a.ledger.clone().unwrap_or_else(|| ledger_path(&a.out));
    emit(Some(&lp), &json(&ledger)?)?;
    Ok(ledger.delta_wr().abs() <= tol.conservation)
}

fn links_cell(links: &[writhe_lab::LinkEntry]) -> String {
    links
        .iter()
        .map(|l| format!("{}-{}:{}", l.a, l.b, l.lk))
        .collect::<Vec<_>>()
        .join(";")
}

pub fn pathway(a: &PathwayArgs) -> CmdResult {
    let tol = Tolerances::resolve(&a.tol)?;
    fs::create_dir_all(&a.out).map_err(|e| format!("{}: {e}", a.out.display()))?;
    let steps = run_pathway()?;
    let bare = |s: &CurveSystem| s.components().iter().cloned().map(Component::bare).collect::<Vec<_>>();
    let mut summary = csv::Writer::from_writer(Vec::new());
    summary.write_record([
        "step",
        "components_before",
        "components_after",
        "wr_before",
        "wr_after",
        "delta_wr",
        "linking_numbers",
        "delta_tw",
        "delta_h",
        "conserved",
    ])?;
    let mut all = true;
    for (k, s) in steps.iter().enumerate() {
        let k = k + 1;
        io::write_curves_to(&a.out.join(format!("step{k}_input.json")), &bare(&s.input))?;
        io::write_curves_to(&a.out.join(format!("step{k}_output.json")), &bare(&s.output))?;
        fs::write(a.out.join(format!("step{k}_ledger.json")), json(&s.ledger)?)?;
        let ok = s.delta_wr().abs() <= tol.conservation;
        all &= ok;
        summary.write_record([
            k.to_string(),
            s.input.len().to_string(),
            s.output.len().to_string(),
            s.ledger.wr_before.to_string(),
            s.ledger.wr_after.to_string(),
            s.delta_wr().to_string(),
            links_cell(&s.links),
            s.ledger.delta_tw.to_string(),
            s.ledger.delta_h.to_string(),
            ok.to_string(),
        ])?;
    }
    let summary = String::from_utf8(summary.into_inner().map_err(|e| e.into_error())?)?;
    fs::write(a.out.join("summary.csv"), &summary)?;

    let mut frames = csv::Writer::from_writer(Vec::new());
    frames.write_record(["frame", "components", "directional_writhe"])?;
    for (t, f) in tracing_frames().iter().enumerate() {
        let r = directional_writhe(f, Vec3::Z)?;
        frames.write_record([format!("t{t}"), f.len().to_string(), r.directional_writhe.to_string()])?;
    }
    fs::write(a.out.join("frames.csv"), frames.into_inner().map_err(|e| e.into_error())?)?;
    emit(None, &summary)?;
    Ok(all)
}

pub fn sweep(a: &SweepArgs) -> CmdResult {
    let comps = read(&a.input)?;
    let [c] = &comps[..] else {
        return Err(format!("sweep needs a single component, found {}", comps.len()).into());
    };
    let reference = writhe(&c.curve)?;
    let trace = writhe_monte_carlo_trace(&c.curve, a.samples, a.seed)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["samples", "estimate", "stderr", "reference"])?;
    for p in trace {
        w.write_record([
            p.samples.to_string(),
            p.estimate.to_string(),
            p.stderr.to_string(),
            reference.to_string(),
        ])?;
    }
    let text = String::from_utf8(w.into_inner().map_err(|e| e.into_error())?)?;
    emit(a.out.as_deref(), &text)?;
    Ok(true)
}
