use crate::error::{Error, Result};
use crate::geom::{rotate_about, segment_distance, Point3, Vec3};

/// A closed, oriented polygon. Edge `i` runs from vertex `i` to vertex `i + 1 (mod n)`;
/// the closing vertex is not repeated.
#[derive(Debug, Clone, PartialEq)]
pub struct PolygonalCurve {
    vertices: Vec<Point3>,
}

impl PolygonalCurve {
    pub fn new(vertices: Vec<Point3>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::InvalidParameter(format!(
                "a closed polygon needs at least 3 vertices, got {n}"
            )));
        }
        if let Some(i) = vertices.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(format!("vertex {i} is not finite")));
        }
        for i in 0..n {
            if vertices[i] == vertices[(i + 1) % n] {
                return Err(Error::DegenerateEdge { edge: i });
            }
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[Point3] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Point3> {
        self.vertices
    }

    /// Number of vertices, which equals the number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn vertex(&self, i: usize) -> Point3 {
        self.vertices[i % self.vertices.len()]
    }

    #[inline]
    pub fn edge(&self, i: usize) -> (Point3, Point3) {
        let n = self.vertices.len();
        (self.vertices[i % n], self.vertices[(i + 1) % n])
    }

    #[inline]
    pub fn edge_vector(&self, i: usize) -> Vec3 {
        let (a, b) = self.edge(i);
        b - a
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point3, Point3)> + '_ {
        (0..self.len()).map(move |i| self.edge(i))
    }

    pub fn length(&self) -> f64 {
        crate::sum::kahan_sum((0..self.len()).map(|i| self.edge_vector(i).norm()))
    }

    pub fn min_edge_length(&self) -> f64 {
        (0..self.len())
            .map(|i| self.edge_vector(i).norm())
            .fold(f64::INFINITY, f64::min)
    }

    /// Diagonal of the axis-aligned bounding box; the length scale used by tolerances.
    pub fn diameter(&self) -> f64 {
        bounding_diagonal(&self.vertices)
    }

    /// Unit bisector of the two edge directions meeting at vertex `i`.
    pub fn vertex_tangent(&self, i: usize) -> Result<Vec3> {
        let n = self.len();
        let i = i % n;
        let prev = self.edge_vector((i + n - 1) % n);
        let next = self.edge_vector(i);
        let b = prev / prev.norm() + next / next.norm();
        b.try_normalize(1e-12)
            .ok_or(Error::IllDefinedTransport { vertex: i })
    }

    pub fn vertex_tangents(&self) -> Result<Vec<Vec3>> {
        (0..self.len()).map(|i| self.vertex_tangent(i)).collect()
    }

    pub fn translate(&self, v: Vec3) -> Self {
        Self {
            vertices: self.vertices.iter().map(|&p| p + v).collect(),
        }
    }

    /// Rotate about the line through `center` with unit direction `axis`.
    pub fn rotate(&self, center: Point3, axis: Vec3, angle: f64) -> Self {
        Self {
            vertices: self
                .vertices
                .iter()
                .map(|&p| center + rotate_about(p - center, axis, angle))
                .collect(),
        }
    }

    /// Reflection through the plane x = 0.
    pub fn mirror(&self) -> Self {
        Self {
            vertices: self
                .vertices
                .iter()
                .map(|p| Point3::new(-p.x, p.y, p.z))
                .collect(),
        }
    }

    /// Same point set traversed in the opposite direction.
    pub fn reversed(&self) -> Self {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        Self { vertices }
    }

    /// Relabel so that vertex `k` becomes vertex 0.
    pub fn rotate_start(&self, k: usize) -> Self {
        let n = self.len();
        Self {
            vertices: (0..n).map(|i| self.vertices[(i + k) % n]).collect(),
        }
    }

    /// Arc-length uniform resampling with `m` vertices, starting at vertex 0.
    pub fn resample(&self, m: usize) -> Result<Self> {
        if m < 3 {
            return Err(Error::InvalidParameter(format!(
                "resample needs at least 3 vertices, got {m}"
            )));
        }
        let n = self.len();
        let lengths: Vec<f64> = (0..n).map(|i| self.edge_vector(i).norm()).collect();
        let total = crate::sum::kahan_sum(lengths.iter().copied());
        let mut out = Vec::with_capacity(m);
        let mut edge = 0;
        let mut start = 0.0;
        for k in 0..m {
            let s = total * k as f64 / m as f64;
            while edge + 1 < n && start + lengths[edge] <= s {
                start += lengths[edge];
                edge += 1;
            }
            let (a, b) = self.edge(edge);
            let t = ((s - start) / lengths[edge]).clamp(0.0, 1.0);
            out.push(if t == 0.0 { a } else { a + (b - a) * t });
        }
        Self::new(out)
    }

    /// Smallest distance between two non-adjacent edges, with the pair that attains it.
    pub fn min_nonadjacent_distance(&self) -> (f64, usize, usize) {
        let n = self.len();
        let mut best = (f64::INFINITY, 0, 0);
        for i in 0..n {
            let (a, b) = self.edge(i);
            for j in i + 2..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                let (c, d) = self.edge(j);
                let dist = segment_distance(a, b, c, d);
                if dist < best.0 {
                    best = (dist, i, j);
                }
            }
        }
        best
    }
}

/// A set of oriented closed curves, pairwise disjoint.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSystem {
    components: Vec<PolygonalCurve>,
}

impl CurveSystem {
    pub fn new(components: Vec<PolygonalCurve>) -> Result<Self> {
        let system = Self { components };
        system.check_disjoint()?;
        Ok(system)
    }

    /// Build without the disjointness check (used for touching intermediate configurations).
    pub fn new_unchecked(components: Vec<PolygonalCurve>) -> Self {
        Self { components }
    }

    pub fn single(curve: PolygonalCurve) -> Self {
        Self {
            components: vec![curve],
        }
    }

    pub fn components(&self) -> &[PolygonalCurve] {
        &self.components
    }

    pub fn into_components(self) -> Vec<PolygonalCurve> {
        self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn total_edges(&self) -> usize {
        self.components.iter().map(PolygonalCurve::len).sum()
    }

    pub fn diameter(&self) -> f64 {
        let all: Vec<Point3> = self
            .components
            .iter()
            .flat_map(|c| c.vertices().iter().copied())
            .collect();
        bounding_diagonal(&all)
    }

    pub fn check_disjoint(&self) -> Result<()> {
        for a in 0..self.components.len() {
            for b in a + 1..self.components.len() {
                let d = min_distance(&self.components[a], &self.components[b]);
                if d <= 0.0 {
                    return Err(Error::DisjointnessViolation { a, b, distance: d });
                }
            }
        }
        Ok(())
    }

    pub fn translate(&self, v: Vec3) -> Self {
        Self {
            components: self.components.iter().map(|c| c.translate(v)).collect(),
        }
    }
}

/// Minimum distance between any edge of `a` and any edge of `b`.
pub fn min_distance(a: &PolygonalCurve, b: &PolygonalCurve) -> f64 {
    let mut best = f64::INFINITY;
    for (p1, p2) in a.edges() {
        for (p3, p4) in b.edges() {
            best = best.min(segment_distance(p1, p2, p3, p4));
        }
    }
    best
}

fn bounding_diagonal(points: &[Point3]) -> f64 {
    let mut lo = Point3::new(f64::INFINITY, f64::INFINITY, f64::INFINITY);
    let mut hi = -lo;
    for p in points {
        lo = Point3::new(lo.x.min(p.x), lo.y.min(p.y), lo.z.min(p.z));
        hi = Point3::new(hi.x.max(p.x), hi.y.max(p.y), hi.z.max(p.z));
    }
    (hi - lo).norm()
}
