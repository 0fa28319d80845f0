use crate::error::{Error, Result};
use crate::geom::{segment_distance, Point3, Vec3};

/// Relative size of the triple product below which a pair counts as nearly
/// coplanar.
pub const COPLANAR_TOLERANCE: f64 = 1e-13;

const GL_NODES: [f64; 4] = [
    0.183_434_642_495_649_8,
    0.525_532_409_916_329_0,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_3,
];
const GL_WEIGHTS: [f64; 4] = [
    0.362_683_783_378_362_0,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_5,
    0.101_228_536_290_376_3,
];

/// Signed solid angle of the segment pair (p1 -> p2, p3 -> p4): the Gauss
/// double integral
///
/// ```text
/// ∫∫ (x - y) · (dx × dy) / |x - y|³
/// ```
///
/// with `x` on the first segment and `y` on the second. Summed over all ordered
/// edge pairs of a closed curve and divided by 4π this is the writhe.
///
/// Segments that share an endpoint give exactly 0, as do disjoint coplanar
/// segments. Segments that cross give [`Error::GeometricDegeneracy`].
pub fn edge_pair_solid_angle(p1: Point3, p2: Point3, p3: Point3, p4: Point3) -> Result<f64> {
    if p1 == p3 || p1 == p4 || p2 == p3 || p2 == p4 {
        return Ok(0.0);
    }
    // Canonical order makes the antisymmetry and the pair symmetry exact.
    let mut sign = 1.0;
    let (mut a, mut b) = ((p1, p2), (p3, p4));
    if a.0.lex_gt(a.1) {
        a = (a.1, a.0);
        sign = -sign;
    }
    if b.0.lex_gt(b.1) {
        b = (b.1, b.0);
        sign = -sign;
    }
    if lex_pair_gt(a, b) {
        std::mem::swap(&mut a, &mut b);
    }
    Ok(sign * canonical(a.0, a.1, b.0, b.1)?)
}

fn lex_pair_gt(a: (Point3, Point3), b: (Point3, Point3)) -> bool {
    if a.0 != b.0 {
        a.0.lex_gt(b.0)
    } else {
        a.1.lex_gt(b.1)
    }
}

fn canonical(p1: Point3, p2: Point3, p3: Point3, p4: Point3) -> Result<f64> {
    let r12 = p2 - p1;
    let r34 = p4 - p3;
    let r13 = p3 - p1;
    let r14 = p4 - p1;
    let r23 = p3 - p2;
    let r24 = p4 - p2;
    let triple = r34.cross(r12).dot(r13);
    if triple == 0.0 {
        return coplanar(p1, p2, p3, p4);
    }
    let scale = [r12, r34, r13, r14, r23, r24]
        .iter()
        .map(|v| v.norm())
        .fold(0.0, f64::max);
    let n = [r13.cross(r14), r14.cross(r24), r24.cross(r23), r23.cross(r13)];
    let tiny = 1e-10 * scale * scale;
    if n.iter().any(|v| v.norm() < tiny) {
        return Ok(quadrature(p1, p2, p3, p4));
    }
    // asin(n_i · n_j) for unit normals, written as an atan2 so that values
    // near ±π/2 keep full precision.
    let mut omega = 0.0;
    for k in 0..4 {
        let (u, v) = (n[k], n[(k + 1) % 4]);
        omega += u.dot(v).atan2(u.cross(v).norm());
    }
    if triple.abs() < COPLANAR_TOLERANCE * scale.powi(3) && omega.abs() > 1.0 {
        // nearly touching: the sign of the triple product is noise
        if segment_distance(p1, p2, p3, p4) < 1e-12 * scale {
            return Err(intersecting(p1, p2, p3, p4));
        }
        return Ok(quadrature(p1, p2, p3, p4));
    }
    Ok(omega.abs() * triple.signum())
}

fn intersecting(p1: Point3, p2: Point3, p3: Point3, p4: Point3) -> Error {
    Error::GeometricDegeneracy(format!(
        "segments {:?}->{:?} and {:?}->{:?} intersect",
        p1.to_array(),
        p2.to_array(),
        p3.to_array(),
        p4.to_array()
    ))
}

fn coplanar(p1: Point3, p2: Point3, p3: Point3, p4: Point3) -> Result<f64> {
    if segment_distance(p1, p2, p3, p4) == 0.0 {
        Err(intersecting(p1, p2, p3, p4))
    } else {
        Ok(0.0)
    }
}

fn integrand(p1: Point3, d12: Vec3, p3: Point3, d34: Vec3, cross: Vec3, s: f64, t: f64) -> f64 {
    let r = (p1 + d12 * s) - (p3 + d34 * t);
    let r2 = r.norm_squared();
    r.dot(cross) / (r2 * r2.sqrt())
}

fn gauss_cell(p1: Point3, d12: Vec3, p3: Point3, d34: Vec3, s: (f64, f64), t: (f64, f64)) -> f64 {
    let cross = d12.cross(d34);
    let (sm, sh) = ((s.0 + s.1) / 2.0, (s.1 - s.0) / 2.0);
    let (tm, th) = ((t.0 + t.1) / 2.0, (t.1 - t.0) / 2.0);
    let mut total = 0.0;
    for (i, &xi) in GL_NODES.iter().enumerate() {
        for si in [-1.0, 1.0] {
            let ss = sm + si * sh * xi;
            for (j, &xj) in GL_NODES.iter().enumerate() {
                for sj in [-1.0, 1.0] {
                    let tt = tm + sj * th * xj;
                    total += GL_WEIGHTS[i] * GL_WEIGHTS[j] * integrand(p1, d12, p3, d34, cross, ss, tt);
                }
            }
        }
    }
    total * sh * th
}

#[allow(clippy::too_many_arguments)]
fn adaptive(
    p1: Point3,
    d12: Vec3,
    p3: Point3,
    d34: Vec3,
    s: (f64, f64),
    t: (f64, f64),
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let smid = (s.0 + s.1) / 2.0;
    let tmid = (t.0 + t.1) / 2.0;
    let cells = [
        ((s.0, smid), (t.0, tmid)),
        ((smid, s.1), (t.0, tmid)),
        ((s.0, smid), (tmid, t.1)),
        ((smid, s.1), (tmid, t.1)),
    ];
    let parts = cells.map(|(cs, ct)| gauss_cell(p1, d12, p3, d34, cs, ct));
    let sum: f64 = parts.iter().sum();
    if depth == 0 || (sum - whole).abs() <= tol {
        return sum;
    }
    cells
        .iter()
        .zip(parts)
        .map(|(&(cs, ct), w)| adaptive(p1, d12, p3, d34, cs, ct, w, tol / 4.0, depth - 1))
        .sum()
}

/// Adaptive tensor Gauss-Legendre evaluation of the Gauss double integral;
/// used where the closed form is ill-conditioned.
pub fn quadrature(p1: Point3, p2: Point3, p3: Point3, p4: Point3) -> f64 {
    let (d12, d34) = (p2 - p1, p4 - p3);
    let whole = gauss_cell(p1, d12, p3, d34, (0.0, 1.0), (0.0, 1.0));
    adaptive(p1, d12, p3, d34, (0.0, 1.0), (0.0, 1.0), whole, 1e-15, 12)
}
