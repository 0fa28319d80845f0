//! Acceptance criteria 1-10. Each prints one PASS/FAIL line; the test fails
//! if any criterion fails or exceeds its time budget. Runs without the libtest
//! harness so the lines show under plain `cargo test`.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use writhe_lab::*;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e(err: writhe_lab::Error) -> String {
    err.to_string()
}

fn c1_writhe_conservation() -> Check {
    let mut worst = 0.0f64;
    for seed in 0..200u64 {
        let n = 8 + (seed as usize * 37) % 249;
        let m = 8 + (seed as usize * 91 + 17) % 249;
        let cut = cut_construction(n, m, seed).map_err(e)?;
        let ReconnectablePair { a, b, site } = &cut.pair;
        let before = writhe_system(&CurveSystem::new(vec![a.clone(), b.clone()]).map_err(e)?).map_err(e)?;
        let after = writhe(&reconnect(a, b, site).map_err(e)?).map_err(e)?;
        let d = (before - after).abs();
        worst = worst.max(d);
        ensure(d < 1e-9, || format!("seed {seed} (n={n}, m={m}): |ΔWr| = {d:e}"))?;
    }
    Ok(format!("200/200 pairs, max |ΔWr| = {worst:.2e}"))
}

fn c2_decomposition() -> Check {
    let (mut done, mut seed, mut worst, mut linked) = (0, 0u64, 0.0f64, 0);
    while done < 100 {
        seed += 1;
        let a = make_random_closed_polygon(10 + (seed as usize % 30), seed).map_err(e)?;
        let b = make_random_closed_polygon(10 + (seed as usize % 23), seed + 10_000)
            .map_err(e)?
            .translate(Vec3::new(0.5, 0.3, -0.2));
        let Ok(sys) = CurveSystem::new(vec![a.clone(), b.clone()]) else { continue };
        let lk = linking_number_gauss(&a, &b).map_err(e)?;
        let d = (writhe_system(&sys).map_err(e)? - writhe(&a).map_err(e)? - writhe(&b).map_err(e)? - 2.0 * lk).abs();
        worst = worst.max(d);
        linked += (lk.round() != 0.0) as usize;
        ensure(d < 1e-9, || format!("seed {seed}: residual {d:e}"))?;
        done += 1;
    }
    Ok(format!("100/100 pairs ({linked} linked), max residual {worst:.2e}"))
}

fn agree(a: &PolygonalCurve, b: &PolygonalCurve) -> Result<i64, String> {
    let gauss = round_linking_number(linking_number_gauss(a, b).map_err(e)?);
    let dirs = [Vec3::new(0.13, -0.21, 0.97), Vec3::new(0.6, 0.7, -0.38), Vec3::new(-0.9, 0.1, 0.42)];
    for nu in dirs {
        match linking_number_projection(a, b, nu / nu.norm()) {
            Ok(p) => {
                ensure(p == gauss, || format!("Gauss {gauss} vs projection {p}"))?;
                return Ok(p);
            }
            Err(Error::DegenerateDirection { .. }) => continue,
            Err(err) => return Err(e(err)),
        }
    }
    Err("no generic direction found".into())
}

fn c3_linking() -> Check {
    let pair = |s: &CurveSystem| (s.components()[0].clone(), s.components()[1].clone());
    let (a, b) = pair(&make_hopf_link(1.0, 1.0, 64).map_err(e)?);
    let hopf = agree(&a, &b)?;
    ensure(hopf.abs() == 1, || format!("Hopf Lk {hopf}"))?;
    let (a, b) = pair(&make_torus_link(2, 4, 2.0, 0.5, 128).map_err(e)?);
    let torus = agree(&a, &b)?;
    ensure(torus.abs() == 2, || format!("(2,4) Lk {torus}"))?;
    let (a, b) = pair(&make_hopf_link(3.0, 1.0, 64).map_err(e)?);
    let unlink = agree(&a, &b)?;
    ensure(unlink == 0, || format!("unlink Lk {unlink}"))?;
    let (mut done, mut seed, mut nonzero) = (0, 0u64, 0);
    while done < 50 {
        seed += 1;
        let a = make_random_closed_polygon(12 + (seed as usize % 20), 500 + seed).map_err(e)?;
        let b = make_random_closed_polygon(12 + (seed as usize % 17), 900 + seed)
            .map_err(e)?
            .translate(Vec3::new(0.3, 0.2, 0.1));
        if CurveSystem::new(vec![a.clone(), b.clone()]).is_err() {
            continue;
        }
        nonzero += (agree(&a, &b).map_err(|m| format!("random seed {seed}: {m}"))? != 0) as usize;
        done += 1;
    }
    Ok(format!("Hopf {hopf}, (2,4) {torus}, unlink {unlink}, 50/50 random pairs agree ({nonzero} linked)"))
}

const MC_SAMPLES: usize = 1_000_000;

fn mc_case(name: &str, c: &PolygonalCurve, seed: u64) -> Result<(f64, MonteCarloEstimate), String> {
    let reference = writhe(c).map_err(e)?;
    let est = writhe_monte_carlo(c, MC_SAMPLES, seed).map_err(e)?;
    let z = (est.estimate - reference).abs() / est.stderr.max(f64::MIN_POSITIVE);
    ensure(est.samples == MC_SAMPLES, || format!("{name}: {} samples", est.samples))?;
    ensure(
        (est.estimate - reference).abs() <= 3.0 * est.stderr,
        || format!("{name}: estimate {} vs {reference}, stderr {} ({z:.2}σ)", est.estimate, est.stderr),
    )?;
    Ok((reference, est))
}

fn c4_monte_carlo() -> Check {
    let circle = make_circle(Point3::ZERO, Vec3::Z, 1.0, 64).map_err(e)?;
    let (_, est) = mc_case("circle", &circle, 1)?;
    ensure(est.estimate == 0.0, || format!("circle estimate {}", est.estimate))?;
    let trefoil = make_torus_knot(2, 3, 2.0, 0.5, 512).map_err(e)?;
    let (_, t) = mc_case("trefoil", &trefoil, 1)?;
    // pinned on first computation
    ensure(t.estimate == TREFOIL_MC_SEED_1, || format!("trefoil estimate {} moved", t.estimate))?;
    for k in 0..10u64 {
        let c = make_random_closed_polygon(12 + k as usize % 5, 100 + k).map_err(e)?;
        mc_case(&format!("random polygon {k}"), &c, 7 + k)?;
    }
    Ok(format!("circle, trefoil and 10 random polygons within 3σ at 10^6 samples (trefoil {} ± {:.1e})", t.estimate, t.stderr))
}

const TREFOIL_MC_SEED_1: f64 = -3.126814;

fn cw_error(n: usize, seed: u64) -> Result<f64, String> {
    let c = make_random_smooth_curve(n, seed).map_err(e)?;
    let r = make_random_smooth_framing(&c, (seed % 5) as i64 - 2, seed).map_err(e)?;
    let check = self_linking_check(&r, default_pushoff(&r)).map_err(e)?;
    Ok((check.self_linking - check.pushoff_linking).abs())
}

/// Residuals below this are floating-point noise; a decrease between two of
/// them carries no information.
const ROUND_OFF: f64 = 1e-12;

fn c5_calugareanu() -> Check {
    let (mut worst, mut at_floor) = (0.0f64, 0);
    for seed in 0..20u64 {
        let coarse = cw_error(120, seed)?;
        let fine = cw_error(240, seed)?;
        worst = worst.max(coarse).max(fine);
        ensure(coarse <= 1e-2, || format!("seed {seed}: |SL - Lk| = {coarse:e}"))?;
        if coarse < ROUND_OFF && fine < ROUND_OFF {
            at_floor += 1;
            continue;
        }
        ensure(fine < coarse, || format!("seed {seed}: refinement {coarse:e} -> {fine:e}"))?;
    }
    Ok(format!(
        "20/20 ribbons, max |SL - Lk(C, pushoff)| = {worst:.2e}; {at_floor} already at round-off on both meshes, the rest decrease"
    ))
}

fn c6_ledger() -> Check {
    let (a, b, site) = untwisted_tubes();
    let (_, l) = reconnect_tubes(&a, &b, &site).map_err(e)?;
    ensure(l.delta_tw == 0.0 && l.delta_h.abs() < 1e-9, || format!("untwisted: {l:?}"))?;
    for k in [1, 2, 5] {
        let (a, b, site) = k_turn_tubes(k);
        let (_, l) = reconnect_tubes(&a, &b, &site).map_err(e)?;
        ensure((l.delta_tw - k as f64).abs() < 1e-9, || format!("k={k}: ΔTw = {}", l.delta_tw))?;
        ensure((l.delta_h + k as f64).abs() < 1e-9, || format!("k={k}: ΔH = {}", l.delta_h))?;
    }
    Ok("untwisted ΔTw = 0, ΔH = 0; k = 1, 2, 5 give ΔTw = k, ΔH = -k".into())
}

fn c7_pathway() -> Check {
    let steps = run_pathway().map_err(e)?;
    let counts: Vec<usize> = std::iter::once(steps[0].input.len()).chain(steps.iter().map(|s| s.output.len())).collect();
    ensure(counts == [1, 2, 1, 2], || format!("component counts {counts:?}"))?;
    let mut worst = 0.0f64;
    for (k, s) in steps.iter().enumerate() {
        worst = worst.max(s.delta_wr().abs());
        ensure(s.delta_wr().abs() < 1e-9, || format!("step {}: ΔWr = {:e}", k + 1, s.delta_wr()))?;
    }
    for (t, f) in tracing_frames().iter().enumerate() {
        let w = directional_writhe(f, Vec3::Z).map_err(e)?.directional_writhe;
        ensure(w == 1, || format!("frame t{t}: directional writhe {w}"))?;
    }
    Ok(format!("counts 1→2→1→2, max |ΔWr| = {worst:.2e}, frames t0-t3 all +1"))
}

fn c8_torsion() -> Check {
    let mut gaps = vec![];
    for k in 1..=7 {
        let f = torsion_family(10f64.powi(-k)).map_err(e)?;
        let c = reconnect(&f.a, &f.b, &f.site).map_err(e)?;
        let gap = (total_torsion(&f.a).map_err(e)? + total_torsion(&f.b).map_err(e)? - total_torsion(&c).map_err(e)?).abs();
        gaps.push(gap);
    }
    ensure(gaps.windows(2).all(|w| w[1] < w[0]), || format!("not decreasing: {gaps:?}"))?;
    let last = *gaps.last().unwrap();
    ensure(last < 1e-6, || format!("smallest fixture gap {last:e}"))?;
    Ok(format!("gap {:.2e} at edge 1e-1 down to {last:.2e} at edge 1e-7", gaps[0]))
}

fn c9_planar_mirror() -> Check {
    let mut worst = 0.0f64;
    for seed in 0..20u64 {
        let n = 8 + 6 * seed as usize;
        let bound = 1e-12 * (n * n) as f64;
        let p = make_random_planar_polygon(n, seed).map_err(e)?;
        let w = writhe(&p).map_err(e)?;
        ensure(w.abs() < bound, || format!("planar seed {seed}: {w:e}"))?;
        let c = make_random_closed_polygon(n, seed).map_err(e)?;
        let d = (writhe(&c.mirror()).map_err(e)? + writhe(&c).map_err(e)?).abs();
        ensure(d < bound, || format!("mirror seed {seed}: {d:e}"))?;
        worst = worst.max(w.abs()).max(d);
    }
    Ok(format!("20 planar polygons and 20 mirror pairs, max deviation {worst:.2e}"))
}

fn cli(dir: &Path, args: &[&str]) -> Result<(), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_writhe-lab"))
        .current_dir(dir)
        .args(args)
        .output()
        .map_err(|err| err.to_string())?;
    ensure(out.status.success(), || format!("{args:?}: {}", String::from_utf8_lossy(&out.stderr)))
}

fn snapshot(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = walk(dir).into_iter().map(|p| {
        let bytes = std::fs::read(&p).unwrap();
        (p.strip_prefix(dir).unwrap().display().to_string(), bytes)
    }).collect();
    files.sort();
    files
}

fn walk(dir: &Path) -> Vec<std::path::PathBuf> {
    let mut out = vec![];
    for entry in std::fs::read_dir(dir).unwrap() {
        let p = entry.unwrap().path();
        if p.is_dir() {
            out.extend(walk(&p));
        } else {
            out.push(p);
        }
    }
    out
}

fn run_all_commands(dir: &Path) -> Result<(), String> {
    let script: &[&[&str]] = &[
        &["gen", "circle", "--out", "circle.json"],
        &["gen", "torus_knot", "--n", "256", "--out", "trefoil.json"],
        &["gen", "hopf", "--out", "hopf.json"],
        &["gen", "random", "--n", "40", "--seed", "9", "--out", "random.json"],
        &["gen", "squares", "--out", "squares.json"],
        &["gen", "k_turn", "--turns", "2", "--out", "kturn.json"],
        &["gen", "hopf_pair", "--out", "hopf_pair.json"],
        &["gen", "trefoil_theta", "--out", "theta.json"],
        &["gen", "cut_pair", "--n", "30", "--seed", "4", "--out", "cut.json"],
        &["invariants", "--in", "trefoil.json", "--nu", "0,0,1", "--seed", "3", "--out", "trefoil.report.json"],
        &["invariants", "--in", "hopf.json", "--format", "csv", "--out", "hopf.report.csv"],
        &["invariants", "--in", "kturn.json", "--out", "kturn.report.json"],
        &["reconnect", "--in", "squares.json", "--site", "0,0", "--out", "squares.out.json"],
        &["reconnect", "--in", "kturn.json", "--site", "0,0,24", "--out", "kturn.out.json"],
        &["reconnect", "--in", "hopf_pair.json", "--site", "0,0", "--out", "hopf_pair.out.json"],
        &["reconnect", "--in", "theta.json", "--site", "0,7", "--out", "theta.out.json"],
        &["pathway", "--out", "pathway"],
        &["sweep", "--in", "random.json", "--samples", "50000", "--seed", "5", "--out", "sweep.csv"],
    ];
    for args in script {
        cli(dir, args)?;
    }
    let printed = Command::new(env!("CARGO_BIN_EXE_writhe-lab"))
        .current_dir(dir)
        .args(["gen", "cut_pair", "--n", "30", "--seed", "4", "--out", "cut.json"])
        .output()
        .map_err(|err| err.to_string())?;
    let site = String::from_utf8_lossy(&printed.stdout).trim().trim_start_matches("site ").to_string();
    cli(dir, &["reconnect", "--in", "cut.json", "--site", &site, "--out", "cut.out.json"])
}

fn c10_determinism() -> Check {
    let (d1, d2) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    run_all_commands(d1.path())?;
    run_all_commands(d2.path())?;
    let (s1, s2) = (snapshot(d1.path()), snapshot(d2.path()));
    ensure(s1.len() == s2.len(), || "different file sets".into())?;
    for ((n1, b1), (_, b2)) in s1.iter().zip(&s2) {
        ensure(b1 == b2, || format!("{n1} differs between runs"))?;
    }
    let mut curves = vec![make_torus_knot(2, 3, 2.0, 0.5, 512).map_err(e)?];
    for seed in 0..5 {
        curves.push(make_random_closed_polygon(300, seed).map_err(e)?);
    }
    for c in &curves {
        let s = writhe_with(c, Execution::Serial).map_err(e)?;
        let p = writhe_with(c, Execution::Parallel).map_err(e)?;
        ensure(s.to_bits() == p.to_bits(), || format!("serial {s} vs parallel {p}"))?;
    }
    let sys = make_hopf_link(1.0, 1.0, 200).map_err(e)?;
    let s = writhe_system_with(&sys, Execution::Serial).map_err(e)?;
    let p = writhe_system_with(&sys, Execution::Parallel).map_err(e)?;
    ensure(s.to_bits() == p.to_bits(), || "system writhe differs".into())?;
    Ok(format!("{} output files byte-identical across runs; serial and parallel kernels bit-equal", s1.len()))
}

fn main() -> std::process::ExitCode {
    let criteria: [(&str, fn() -> Check, u64); 10] = [
        ("1 writhe conservation", c1_writhe_conservation, 60),
        ("2 decomposition identity", c2_decomposition, 30),
        ("3 Gauss vs projection linking", c3_linking, 30),
        ("4 Monte Carlo writhe", c4_monte_carlo, 120),
        ("5 self-linking vs pushoff linking", c5_calugareanu, 60),
        ("6 ledger identities", c6_ledger, 10),
        ("7 pathway", c7_pathway, 10),
        ("8 torsion additivity", c8_torsion, 10),
        ("9 planar zero and mirror", c9_planar_mirror, 5),
        ("10 determinism", c10_determinism, 60),
    ];
    let mut failed = vec![];
    for (name, check, budget) in criteria {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let verdict = match result {
            Ok(msg) if took <= Duration::from_secs(budget) => format!("PASS  criterion {name}: {msg} [{took:.1?}]"),
            Ok(msg) => format!("FAIL  criterion {name}: over {budget} s budget: {msg} [{took:.1?}]"),
            Err(msg) => format!("FAIL  criterion {name}: {msg} [{took:.1?}]"),
        };
        println!("{verdict}");
        if verdict.starts_with("FAIL") {
            failed.push(name);
        }
    }
    if failed.is_empty() {
        println!("acceptance: 10/10 criteria passed");
        std::process::ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::ExitCode::FAILURE
    }
}
