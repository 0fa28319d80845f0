use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use writhe_lab::{ReconnectionSite, Vec3, DEFAULT_SNAP_TOLERANCE};

#[derive(Debug, Parser)]
#[command(name = "writhe-lab", version, about = "Writhe, twist and helicity of closed polygonal curves")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a generated curve file.
    Gen(GenArgs),
    /// Report every invariant of a curve file.
    Invariants(InvariantsArgs),
    /// Reconnect two components, or one component with itself.
    Reconnect(ReconnectArgs),
    /// Run the trefoil → Hopf link → unknot → two circles pathway.
    Pathway(PathwayArgs),
    /// Monte Carlo writhe convergence as CSV.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Kind {
    Circle,
    TorusKnot,
    Hopf,
    Random,
    /// Two framed coplanar squares ready for reconnection.
    Squares,
    /// Like `squares`, with `--turns` full turns of framing on the deleted edge.
    KTurn,
    /// The Hopf-linked hexagon and octagon of the pathway.
    HopfPair,
    /// The pathway's trefoil with its two band edges juxtaposed.
    TrefoilTheta,
    /// A random reconnectable pair with `--n` vertices per component.
    CutPair,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    pub kind: Kind,
    #[arg(long)]
    pub out: PathBuf,
    /// Vertices per component.
    #[arg(long, default_value_t = 64)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub p: i64,
    #[arg(long, default_value_t = 3)]
    pub q: i64,
    /// Circle radius, or torus major radius.
    #[arg(long)]
    pub radius: Option<f64>,
    /// Torus minor radius.
    #[arg(long, default_value_t = 0.5)]
    pub minor: f64,
    /// Distance between the centres of the Hopf circles.
    #[arg(long, default_value_t = 1.0)]
    pub separation: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Framing turns for `k_turn`.
    #[arg(long, default_value_t = 1)]
    pub turns: i64,
}

#[derive(Debug, Args)]
pub struct InvariantsArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Report file; standard output if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value = "json")]
    pub format: Format,
    /// Projection direction for the directional writhe.
    #[arg(long, value_parser = parse_vec3)]
    pub nu: Option<Vec3>,
    /// Seed for perturbing a degenerate projection direction.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct ReconnectArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Reconnected curve file.
    #[arg(long)]
    pub out: PathBuf,
    /// Ledger file; defaults to the output path with extension `.ledger.json`.
    #[arg(long)]
    pub ledger: Option<PathBuf>,
    /// Site edges `I,J`, optionally followed by the number of collinear
    /// sub-edges: `I,J,S`.
    #[arg(long, value_parser = parse_site)]
    pub site: ReconnectionSite,
    /// Tolerance overrides: `conservation=1e-9`, `snap=1e-9`.
    #[arg(long = "tol", value_parser = parse_tol)]
    pub tol: Vec<(String, f64)>,
}

#[derive(Debug, Args)]
pub struct PathwayArgs {
    /// Output directory, created if missing.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long = "tol", value_parser = parse_tol)]
    pub tol: Vec<(String, f64)>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// CSV file; standard output if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 1 << 20)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

pub const CONSERVATION_TOLERANCE: f64 = 1e-9;

/// Named tolerances after applying `--tol` overrides.
#[derive(Debug, Clone, PartialEq)]
pub struct Tolerances {
    pub conservation: f64,
    pub snap: f64,
}

impl Tolerances {
    pub fn resolve(overrides: &[(String, f64)]) -> Result<Self, String> {
        let mut t = Tolerances {
            conservation: CONSERVATION_TOLERANCE,
            snap: DEFAULT_SNAP_TOLERANCE,
        };
        let map: BTreeMap<_, _> = overrides.iter().cloned().collect();
        for (name, v) in map {
            match name.as_str() {
                "conservation" => t.conservation = v,
                "snap" => t.snap = v,
                _ => return Err(format!("unknown tolerance {name:?} (expected conservation or snap)")),
            }
        }
        Ok(t)
    }
}

fn parse_vec3(s: &str) -> Result<Vec3, String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<_, _>>()?;
    let [x, y, z] = parts[..] else {
        return Err("expected X,Y,Z".into());
    };
    let v = Vec3::new(x, y, z);
    let norm = v.norm();
    if !(norm > 0.0) || !norm.is_finite() {
        return Err("direction must be a finite non-zero vector".into());
    }
    Ok(v / norm)
}

fn parse_site(s: &str) -> Result<ReconnectionSite, String> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [i, j] => Ok(ReconnectionSite::new(i, j)),
        [i, j, span] if span > 0 => Ok(ReconnectionSite::new(i, j).with_span(span)),
        _ => Err("expected I,J or I,J,S with S > 0".into()),
    }
}

fn parse_tol(s: &str) -> Result<(String, f64), String> {
    let (name, value) = s.split_once('=').ok_or("expected NAME=VALUE")?;
    let v: f64 = value.parse().map_err(|e| format!("{value:?}: {e}"))?;
    if !(v > 0.0) || !v.is_finite() {
        return Err(format!("tolerance {name} must be positive"));
    }
    Ok((name.to_string(), v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_site_and_direction() {
        assert_eq!(parse_site("3,7").unwrap(), ReconnectionSite::new(3, 7));
        assert_eq!(parse_site("0,0,16").unwrap().span, 16);
        assert!(parse_site("1").is_err());
        assert!(parse_site("1,2,0").is_err());
        assert_eq!(parse_vec3("0,0,2").unwrap(), Vec3::Z);
        assert!(parse_vec3("0,0,0").is_err());
    }

    #[test]
    fn tolerance_overrides() {
        assert!(parse_tol("snap=-1").is_err());
        let t = Tolerances::resolve(&[("conservation".into(), 1e-6)]).unwrap();
        assert_eq!(t.conservation, 1e-6);
        assert_eq!(t.snap, DEFAULT_SNAP_TOLERANCE);
        assert!(Tolerances::resolve(&[("bogus".into(), 1.0)]).is_err());
    }
}
