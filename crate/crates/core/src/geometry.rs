//! Planar primitives: points, marked quadrangles, canonical pose and shape class.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    pub fn from_complex(z: Complex64) -> Self {
        Self::new(z.re, z.im)
    }

    pub fn distance(self, other: Point2) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl From<(f64, f64)> for Point2 {
    fn from((x, y): (f64, f64)) -> Self {
        Self::new(x, y)
    }
}

/// Relative tolerance used by collinearity, parallelism and tangency tests.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance(f64);

impl Tolerance {
    pub const DEFAULT_EPS: f64 = 1e-9;

    pub fn new(eps: f64) -> Result<Self> {
        if eps > 0.0 && eps < 1e-3 {
            Ok(Self(eps))
        } else {
            Err(Error::InvalidTolerance(eps))
        }
    }

    pub fn eps(self) -> f64 {
        self.0
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self(Self::DEFAULT_EPS)
    }
}

/// 2D cross product `Im(conj(p) q)`.
#[inline]
pub(crate) fn cross(p: Complex64, q: Complex64) -> f64 {
    p.re * q.im - p.im * q.re
}

/// Edge vectors `z_k = v_{k+1} - v_k` of a marked quadrangle.
///
/// The last edge is stored as `-((z_1 + z_2) + z_3)` so that [`EdgeVectors::sum`]
/// is exactly zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeVectors {
    z: [Complex64; 4],
}

impl EdgeVectors {
    fn from_vertices(v: &[Point2; 4]) -> Self {
        let c = v.map(Point2::to_complex);
        let z1 = c[1] - c[0];
        let z2 = c[2] - c[1];
        let z3 = c[3] - c[2];
        let z4 = -((z1 + z2) + z3);
        Self {
            z: [z1, z2, z3, z4],
        }
    }

    pub fn z(&self) -> [Complex64; 4] {
        self.z
    }

    /// Left-to-right sum; zero bit-for-bit by construction.
    pub fn sum(&self) -> Complex64 {
        ((self.z[0] + self.z[1]) + self.z[2]) + self.z[3]
    }

    pub fn lengths(&self) -> [f64; 4] {
        self.z.map(|z| z.norm())
    }

    pub fn perimeter(&self) -> f64 {
        self.lengths().iter().sum()
    }

    /// Cross products `z_k × z_{k+1}`; entry `k` is the turn at vertex `k + 1`.
    pub fn turns(&self) -> [f64; 4] {
        std::array::from_fn(|k| cross(self.z[k], self.z[(k + 1) % 4]))
    }
}

fn edge_margins(z: &[Complex64; 4]) -> [f64; 4] {
    std::array::from_fn(|k| {
        let (p, q) = (z[k], z[(k + 1) % 4]);
        let scale = p.norm() * q.norm();
        if scale == 0.0 {
            0.0
        } else {
            (cross(p, q) / scale).abs()
        }
    })
}

/// Scale-free collinearity margin of four points taken as a closed quadrangle.
///
/// Returns `(vertex, margin)` where `margin = min_k |z_k × z_{k+1}| / (|z_k| |z_{k+1}|)`
/// and `vertex` is the index of the vertex where the minimum occurs. A zero-length
/// edge gives margin 0.
pub fn collinearity_margin(vertices: &[Point2; 4]) -> (usize, f64) {
    let z = EdgeVectors::from_vertices(vertices).z;
    let margins = edge_margins(&z);
    let (k, m) = margins
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::INFINITY), |best, (k, m)| if m < best.1 { (k, m) } else { best });
    ((k + 1) % 4, m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ShapeClass {
    Convex,
    NonConvexSimple,
    SelfIntersecting,
}

impl ShapeClass {
    pub const ALL: [ShapeClass; 3] = [
        ShapeClass::Convex,
        ShapeClass::NonConvexSimple,
        ShapeClass::SelfIntersecting,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ShapeClass::Convex => "convex",
            ShapeClass::NonConvexSimple => "non-convex-simple",
            ShapeClass::SelfIntersecting => "self-intersecting",
        }
    }
}

impl fmt::Display for ShapeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ShapeClass {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        ShapeClass::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| format!("unknown shape class `{s}`"))
    }
}

/// Which pair of opposite edges is parallel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParallelPair {
    /// `AB ∥ CD`
    FirstThird,
    /// `BC ∥ DA`
    SecondFourth,
    Both,
}

/// Four vertices in traversal order; the first one is the marked vertex.
///
/// Construction rejects non-finite coordinates, zero perimeter and collinear
/// successive edges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarkedQuadrangle {
    vertices: [Point2; 4],
}

impl MarkedQuadrangle {
    pub fn new(vertices: [Point2; 4]) -> Result<Self> {
        Self::with_tolerance(vertices, Tolerance::default())
    }

    pub fn with_tolerance(vertices: [Point2; 4], tol: Tolerance) -> Result<Self> {
        if let Some(index) = vertices.iter().position(|p| !p.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        let (vertex, margin) = collinearity_margin(&vertices);
        if !(margin > tol.eps()) {
            return Err(Error::DegenerateInput { vertex, margin });
        }
        Ok(Self { vertices })
    }

    /// Skips validation; callers guarantee the vertices come from a valid quadrangle.
    pub(crate) fn new_unchecked(vertices: [Point2; 4]) -> Self {
        Self { vertices }
    }

    pub fn from_coords(coords: [(f64, f64); 4]) -> Result<Self> {
        Self::new(coords.map(Point2::from))
    }

    pub fn vertices(&self) -> [Point2; 4] {
        self.vertices
    }

    pub fn edge_vectors(&self) -> EdgeVectors {
        EdgeVectors::from_vertices(&self.vertices)
    }

    pub fn edge_lengths(&self) -> [f64; 4] {
        self.edge_vectors().lengths()
    }

    /// `(|AC|, |BD|)`, computed as `|z_1 + z_2|` and `|z_2 + z_3|`.
    pub fn diagonal_lengths(&self) -> [f64; 2] {
        let z = self.edge_vectors().z;
        [(z[0] + z[1]).norm(), (z[1] + z[2]).norm()]
    }

    pub fn perimeter(&self) -> f64 {
        self.edge_vectors().perimeter()
    }

    pub fn margin(&self) -> (usize, f64) {
        collinearity_margin(&self.vertices)
    }

    /// Similar copy in canonical pose: first vertex at the origin, second on the
    /// positive x-axis, third in the upper half-plane, perimeter 2.
    pub fn normalize(&self) -> MarkedQuadrangle {
        let c = self.vertices.map(Point2::to_complex);
        let z1 = c[1] - c[0];
        let scale = 2.0 / self.perimeter();
        let rot = z1.conj() / z1.norm() * scale;
        let mut w = c.map(|p| (p - c[0]) * rot);
        w[0] = Complex64::new(0.0, 0.0);
        w[1] = Complex64::new(z1.norm() * scale, 0.0);
        if w[2].im < 0.0 {
            w = w.map(|p| p.conj());
        }
        Self::new_unchecked(w.map(Point2::from_complex))
    }

    /// Re-marks the same quadrangle: start at vertex `shift` and walk forwards,
    /// or backwards when `reversed`.
    pub fn relabeled(&self, shift: usize, reversed: bool) -> MarkedQuadrangle {
        let v = &self.vertices;
        let vertices = std::array::from_fn(|k| {
            if reversed {
                v[(shift + 4 - k) % 4]
            } else {
                v[(shift + k) % 4]
            }
        });
        Self::new_unchecked(vertices)
    }

    /// All eight markings of the underlying cyclic quadrangle, forward shifts first.
    pub fn markings(&self) -> [MarkedQuadrangle; 8] {
        std::array::from_fn(|i| self.relabeled(i % 4, i >= 4))
    }

    pub fn classify(&self, tol: Tolerance) -> Result<ShapeClass> {
        classify(self, tol)
    }

    pub fn is_trapezoid(&self, tol: Tolerance) -> Option<ParallelPair> {
        let z = self.edge_vectors().z;
        let parallel = |p: Complex64, q: Complex64| cross(p, q).abs() <= tol.eps() * p.norm() * q.norm();
        match (parallel(z[0], z[2]), parallel(z[1], z[3])) {
            (true, true) => Some(ParallelPair::Both),
            (true, false) => Some(ParallelPair::FirstThird),
            (false, true) => Some(ParallelPair::SecondFourth),
            (false, false) => None,
        }
    }

    pub fn is_parallelogram(&self, tol: Tolerance) -> bool {
        self.is_trapezoid(tol) == Some(ParallelPair::Both)
    }
}

fn orient(a: Point2, b: Point2, c: Point2) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

/// Open segments `pq` and `rs` cross at a single interior point.
fn proper_crossing(p: Point2, q: Point2, r: Point2, s: Point2) -> bool {
    orient(p, q, r) * orient(p, q, s) < 0.0 && orient(r, s, p) * orient(r, s, q) < 0.0
}

/// Degeneracy check, then convexity (all turns of one sign), then the crossing
/// test on the two pairs of opposite edges.
pub fn classify(q: &MarkedQuadrangle, tol: Tolerance) -> Result<ShapeClass> {
    let (vertex, margin) = q.margin();
    if !(margin > tol.eps()) {
        return Err(Error::DegenerateInput { vertex, margin });
    }
    let turns = q.edge_vectors().turns();
    if turns.iter().all(|&t| t > 0.0) || turns.iter().all(|&t| t < 0.0) {
        return Ok(ShapeClass::Convex);
    }
    let [a, b, c, d] = q.vertices;
    if proper_crossing(a, b, c, d) || proper_crossing(b, c, d, a) {
        Ok(ShapeClass::SelfIntersecting)
    } else {
        Ok(ShapeClass::NonConvexSimple)
    }
}
