//! The square-root lift of a quadrangle to R⁴, the complement plane and the dual.
//!
//! For a quadrangle of perimeter 2 in canonical pose the edge vectors `z_k` have
//! square roots `u_k = a_k + i b_k`. Closure `Σ z_k = 0` and `Σ |z_k| = 2` make
//! `a` and `b` orthonormal in R⁴. Any orthonormal basis `(c, d)` of the orthogonal
//! complement of `span(a, b)` gives edges `w_k = (c_k + i d_k)²` of a closed
//! quadrangle of perimeter 2. Changing the basis rotates or reflects that
//! quadrangle, so the dual is well defined up to congruence.
//!
//! Two routes to the complement are provided: the quaternion products `a·v` and
//! `b·v` with `v = (0, a_2, a_3, a_4)` ([`quaternion_pair`]), and a plain
//! projection plus Gram-Schmidt ([`generic_complement`]). The first is the
//! production path; the second exists to check it.
//!
//! Note that for `h = b·v` the last component is `b_2 a_3 - b_3 a_2`, as given by
//! the quaternion product. The look-alike `b_2 a_3 - b_3 a_4` is a common slip
//! and does not give a vector orthogonal to `a` and `b`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::{cross, EdgeVectors, MarkedQuadrangle, Point2, Tolerance};

/// Default threshold for [`congruent`], relative to the perimeter.
pub const CONGRUENCE_TOL: f64 = 1e-8;

pub type Vec4 = [f64; 4];

fn dot(p: &Vec4, q: &Vec4) -> f64 {
    p.iter().zip(q).map(|(x, y)| x * y).sum()
}

fn norm(p: &Vec4) -> f64 {
    dot(p, p).sqrt()
}

fn scaled(p: &Vec4, s: f64) -> Vec4 {
    p.map(|x| x * s)
}

/// Hamilton product; index 0 is the real part.
fn quat_mul(p: &Vec4, q: &Vec4) -> Vec4 {
    [
        p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
        p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
        p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1],
        p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0],
    ]
}

/// Square roots `u_k` of the edges, with `a = Re u` and `b = Im u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqrtLift {
    u: [Complex64; 4],
    a: Vec4,
    b: Vec4,
}

impl SqrtLift {
    pub fn u(&self) -> [Complex64; 4] {
        self.u
    }

    pub fn a(&self) -> Vec4 {
        self.a
    }

    pub fn b(&self) -> Vec4 {
        self.b
    }

    /// The plane `span(a, b)`. Orthonormal only when the edges have perimeter 2.
    pub fn plane(&self) -> PlaneBasis {
        PlaneBasis {
            first: self.a,
            second: self.b,
        }
    }
}

/// Branch-consistent square roots of the edge vectors.
///
/// `u_1` is the principal root of `z_1` (the positive real root in canonical
/// pose). Each following root turns from its predecessor by half the principal
/// angle from `z_k` to `z_{k+1}`, so consecutive roots rotate in the same
/// direction as consecutive edges.
pub fn sqrt_lift(z: &EdgeVectors, tol: Tolerance) -> Result<SqrtLift> {
    let z = z.z();
    let mut u = [Complex64::new(0.0, 0.0); 4];
    u[0] = z[0].sqrt();
    for k in 0..3 {
        let (cur, next) = (z[k], z[k + 1]);
        let scale = cur.norm() * next.norm();
        if !(cross(cur, next).abs() > tol.eps() * scale) {
            let margin = if scale == 0.0 { 0.0 } else { (cross(cur, next) / scale).abs() };
            return Err(Error::DegenerateInput {
                vertex: k + 1,
                margin,
            });
        }
        let theta = (next * cur.conj()).arg();
        u[k + 1] = u[k] * (next.norm() / cur.norm()).sqrt() * Complex64::from_polar(1.0, theta / 2.0);
    }
    Ok(SqrtLift {
        u,
        a: u.map(|x| x.re),
        b: u.map(|x| x.im),
    })
}

/// An ordered pair of 4-vectors spanning a 2-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneBasis {
    first: Vec4,
    second: Vec4,
}

impl PlaneBasis {
    /// Accepts a pair that is orthonormal to within `1e-10`.
    pub fn new(first: Vec4, second: Vec4) -> Result<Self> {
        let basis = Self { first, second };
        let defect = basis.orthonormality_defect();
        if defect <= 1e-10 {
            Ok(basis)
        } else {
            Err(Error::Precondition(format!("basis is not orthonormal (defect {defect:e})")))
        }
    }

    pub fn first(&self) -> Vec4 {
        self.first
    }

    pub fn second(&self) -> Vec4 {
        self.second
    }

    /// `max(||f|-1|, ||s|-1|, |f·s|)`
    pub fn orthonormality_defect(&self) -> f64 {
        (norm(&self.first) - 1.0)
            .abs()
            .max((norm(&self.second) - 1.0).abs())
            .max(dot(&self.first, &self.second).abs())
    }

    /// Orthogonal projector `f fᵀ + s sᵀ` onto the plane.
    pub fn projector(&self) -> [[f64; 4]; 4] {
        std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                self.first[i] * self.first[j] + self.second[i] * self.second[j]
            })
        })
    }

    /// Frobenius distance between the two planes' projectors.
    pub fn projector_distance(&self, other: &PlaneBasis) -> f64 {
        let (p, q) = (self.projector(), other.projector());
        p.iter()
            .flatten()
            .zip(q.iter().flatten())
            .map(|(x, y)| (x - y).powi(2))
            .sum::<f64>()
            .sqrt()
    }

    /// Largest absolute dot product between a vector of `self` and one of `other`.
    pub fn max_cross_dot(&self, other: &PlaneBasis) -> f64 {
        [self.first, self.second]
            .iter()
            .flat_map(|p| [other.first, other.second].map(|q| dot(p, &q).abs()))
            .fold(0.0, f64::max)
    }

    /// Vertices `0, w_1, w_1 + w_2, w_1 + w_2 + w_3` with `w_k = (first_k + i second_k)²`.
    pub fn squared_quadrangle(&self) -> [Point2; 4] {
        let w: [Complex64; 4] =
            std::array::from_fn(|k| Complex64::new(self.first[k], self.second[k]).powi(2));
        let mut acc = Complex64::new(0.0, 0.0);
        let mut vertices = [Point2::ORIGIN; 4];
        for k in 1..4 {
            acc += w[k - 1];
            vertices[k] = Point2::from_complex(acc);
        }
        vertices
    }
}

/// Orthogonal but not normalized pair `(g, h)` spanning the complement plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpanningPair {
    pub g: Vec4,
    pub h: Vec4,
}

impl SpanningPair {
    /// Each vector divided by its own length.
    pub fn normalized(&self) -> PlaneBasis {
        PlaneBasis {
            first: scaled(&self.g, 1.0 / norm(&self.g)),
            second: scaled(&self.h, 1.0 / norm(&self.h)),
        }
    }

    pub fn norms(&self) -> [f64; 2] {
        [norm(&self.g), norm(&self.h)]
    }
}

/// Quaternion products `g = a·v` and `h = b·v` with `v = (0, a_2, a_3, a_4)`.
///
/// Requires the lift of a canonical-pose quadrangle (`b_1 = 0`, `a_1 > 0`).
/// Both vectors have length `√(1 - s_1)` where `s_1 = a_1²`.
pub fn quaternion_pair(lift: &SqrtLift) -> Result<SpanningPair> {
    let (a, b) = (lift.a, lift.b);
    if !(a[0] > 0.0) || b[0].abs() > 1e-12 {
        return Err(Error::NotCanonical(format!(
            "u_1 = {} must be real positive",
            lift.u[0]
        )));
    }
    let v = [0.0, a[1], a[2], a[3]];
    Ok(SpanningPair {
        g: quat_mul(&a, &v),
        h: quat_mul(&b, &v),
    })
}

/// Orthonormal basis of the complement: the quaternion pair divided by `√(1 - s_1)`.
pub fn quaternion_complement(lift: &SqrtLift) -> Result<PlaneBasis> {
    let pair = quaternion_pair(lift)?;
    let s1 = lift.a[0] * lift.a[0];
    let scale = 1.0 / (1.0 - s1).sqrt();
    Ok(PlaneBasis {
        first: scaled(&pair.g, scale),
        second: scaled(&pair.h, scale),
    })
}

/// Orthocomplement by projection and Gram-Schmidt.
///
/// Each standard basis vector `e_i` is projected onto the complement. The first
/// output direction is the residual of largest norm; the second is the residual,
/// after removing its component along the first, of largest remaining norm.
/// Ties go to the lower index, and the chosen pair is emitted in index order.
pub fn generic_complement(basis: &PlaneBasis) -> PlaneBasis {
    let (f, s) = (basis.first, basis.second);
    let residuals: [Vec4; 4] = std::array::from_fn(|i| {
        std::array::from_fn(|j| f64::from(u8::from(i == j)) - f[i] * f[j] - s[i] * s[j])
    });
    let argmax = |values: &[f64; 4], skip: Option<usize>| {
        (0..4)
            .filter(|&i| Some(i) != skip)
            .fold(None::<usize>, |best, i| match best {
                Some(b) if values[b] >= values[i] => Some(b),
                _ => Some(i),
            })
            .expect("at least one candidate")
    };
    let first = argmax(&residuals.map(|r| norm(&r)), None);
    let unit = scaled(&residuals[first], 1.0 / norm(&residuals[first]));
    let remaining = residuals.map(|r| {
        let along = dot(&r, &unit);
        norm(&std::array::from_fn(|j| r[j] - along * unit[j]))
    });
    let second = argmax(&remaining, Some(first));
    let (lo, hi) = if first < second { (first, second) } else { (second, first) };

    // Gram-Schmidt in index order, re-orthogonalised against the input plane
    let project_out = |mut v: Vec4, against: &[Vec4]| {
        for _ in 0..2 {
            for w in against {
                let c = dot(&v, w);
                for j in 0..4 {
                    v[j] -= c * w[j];
                }
            }
        }
        scaled(&v, 1.0 / norm(&v))
    };
    let c = project_out(residuals[lo], &[f, s]);
    let d = project_out(residuals[hi], &[f, s, c]);
    PlaneBasis {
        first: c,
        second: d,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ComplementMethod {
    #[default]
    Quaternion,
    Generic,
}

/// The dual in canonical pose, built through the quaternion complement.
pub fn dual_quadrangle(q: &MarkedQuadrangle) -> Result<MarkedQuadrangle> {
    dual_quadrangle_with(q, Tolerance::default(), ComplementMethod::Quaternion)
}

pub fn dual_quadrangle_with(
    q: &MarkedQuadrangle,
    tol: Tolerance,
    method: ComplementMethod,
) -> Result<MarkedQuadrangle> {
    let canonical = q.normalize();
    let lift = sqrt_lift(&canonical.edge_vectors(), tol)?;
    let basis = match method {
        ComplementMethod::Quaternion => quaternion_complement(&lift)?,
        ComplementMethod::Generic => generic_complement(&lift.plane()),
    };
    let vertices = basis.squared_quadrangle();
    let dual = MarkedQuadrangle::with_tolerance(vertices, tol).map_err(|e| match e {
        Error::DegenerateInput { vertex, margin } => Error::DegenerateDual { vertex, margin },
        other => other,
    })?;
    Ok(dual.normalize())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CongruenceReport {
    pub congruent: bool,
    pub max_vertex_distance: f64,
    pub reflected: bool,
    /// Index of the vertex of `q2` that matched the first vertex of `q1`;
    /// `None` when relabeling was not allowed.
    pub relabel_shift: Option<usize>,
    pub direction_reversed: bool,
}

/// Translates the first vertex to the origin and rotates the first edge onto
/// the positive x-axis, without scaling or reflecting.
fn rigid_pose(q: &MarkedQuadrangle) -> [Complex64; 4] {
    let v = q.vertices().map(Point2::to_complex);
    let z1 = v[1] - v[0];
    let rot = z1.conj() / z1.norm();
    v.map(|p| (p - v[0]) * rot)
}

/// Compares two quadrangles up to rotation, translation and reflection.
///
/// Both are put in rigid pose and compared vertex by vertex, with and without a
/// mirror in the x-axis. With `allow_relabel`, the eight markings of `q2` are
/// tried too. The first candidate within `tol · perimeter(q1)` is reported, in the
/// order forward before reversed, shift 0..3, unreflected before reflected;
/// otherwise the closest candidate is reported.
pub fn congruent(
    q1: &MarkedQuadrangle,
    q2: &MarkedQuadrangle,
    tol: f64,
    allow_relabel: bool,
) -> CongruenceReport {
    let threshold = tol * q1.perimeter();
    let target = rigid_pose(q1);
    let relabelings: Vec<(usize, bool)> = if allow_relabel {
        [false, true]
            .into_iter()
            .flat_map(|rev| (0..4).map(move |shift| (shift, rev)))
            .collect()
    } else {
        vec![(0, false)]
    };
    let mut best: Option<CongruenceReport> = None;
    for (shift, reversed) in relabelings {
        let pose = rigid_pose(&q2.relabeled(shift, reversed));
        for reflected in [false, true] {
            let distance = target
                .iter()
                .zip(&pose)
                .map(|(p, w)| (p - if reflected { w.conj() } else { *w }).norm())
                .fold(0.0, f64::max);
            let report = CongruenceReport {
                congruent: distance <= threshold,
                max_vertex_distance: distance,
                reflected,
                relabel_shift: allow_relabel.then_some(shift),
                direction_reversed: reversed,
            };
            if report.congruent {
                return report;
            }
            if best.is_none_or(|b| distance < b.max_vertex_distance) {
                best = Some(report);
            }
        }
    }
    best.expect("at least one candidate")
}
