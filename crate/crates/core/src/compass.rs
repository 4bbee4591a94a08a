//! Ruler-and-compass construction of the dual of a convex quadrangle.
//!
//! The dual of a convex `ABCD` (perimeter 2) shares the diagonal `AC` with it.
//! Its other two vertices are found by intersecting circles about `A` and `C`:
//! `B₁` with radii `1 - s_1` and `1 - s_2` on the side of `B`, and `D₁` with radii
//! `1 - s_4` and `1 - s_3` on the side of `D`. The radii are written below as half
//! sums of three sides minus the fourth, which is what one measures off with the
//! compass.

use crate::duality::{congruent, dual_quadrangle, CONGRUENCE_TOL};
use crate::error::{Error, Result};
use crate::geometry::{MarkedQuadrangle, Point2, ShapeClass, Tolerance};
use crate::theorems::TheoremReport;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    center: Point2,
    radius: f64,
}

impl Circle {
    pub fn new(center: Point2, radius: f64) -> Result<Self> {
        if radius > 0.0 && radius.is_finite() && center.is_finite() {
            Ok(Self { center, radius })
        } else {
            Err(Error::InvalidRadius(radius))
        }
    }

    pub fn center(&self) -> Point2 {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CircleIntersection {
    Tangent(Point2),
    /// Left of the directed line from the first center to the second comes first.
    Two(Point2, Point2),
}

/// Intersection of two circles with distinct centers.
///
/// Tangency is declared when `d` is within `eps · (r1 + r2)` of `r1 + r2` or of
/// `|r1 - r2|`; anything further apart (or further nested) is `NoIntersection`.
pub fn circle_circle_intersection(c1: &Circle, c2: &Circle, tol: Tolerance) -> Result<CircleIntersection> {
    let (p, q) = (c1.center, c2.center);
    let (r1, r2) = (c1.radius, c2.radius);
    let (dx, dy) = (q.x - p.x, q.y - p.y);
    let d = dx.hypot(dy);
    let slack = tol.eps() * (r1 + r2);
    if d <= slack {
        return Err(Error::CoincidentCenters);
    }
    let (ex, ey) = (dx / d, dy / d);
    let along = (r1 * r1 - r2 * r2 + d * d) / (2.0 * d);
    let foot = Point2::new(p.x + along * ex, p.y + along * ey);
    if (d - (r1 + r2)).abs() <= slack || (d - (r1 - r2).abs()).abs() <= slack {
        return Ok(CircleIntersection::Tangent(foot));
    }
    if d > r1 + r2 || d < (r1 - r2).abs() {
        return Err(Error::NoIntersection);
    }
    let h = (r1 * r1 - along * along).max(0.0).sqrt();
    // (-ey, ex) points to the left of p -> q
    Ok(CircleIntersection::Two(
        Point2::new(foot.x - h * ey, foot.y + h * ex),
        Point2::new(foot.x + h * ey, foot.y - h * ex),
    ))
}

/// Output of the construction, kept with its intermediate radii.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompassConstruction {
    /// `A B₁ C D₁`
    pub quadrangle: MarkedQuadrangle,
    pub b1: Point2,
    pub d1: Point2,
    /// `|B₁A|, |B₁C|, |D₁A|, |D₁C|`
    pub radii: [f64; 4],
}

fn side(a: Point2, c: Point2, p: Point2) -> f64 {
    (c.x - a.x) * (p.y - a.y) - (c.y - a.y) * (p.x - a.x)
}

fn pick_on_side(a: Point2, c: Point2, reference: Point2, hit: CircleIntersection, name: &str) -> Result<Point2> {
    match hit {
        CircleIntersection::Two(left, right) => {
            let want = side(a, c, reference).signum();
            if side(a, c, left).signum() == want {
                Ok(left)
            } else {
                Ok(right)
            }
        }
        CircleIntersection::Tangent(_) => Err(Error::ConstructionFailure(format!(
            "circles for {name} are tangent; {name} falls on the diagonal"
        ))),
    }
}

/// Builds `A B₁ C D₁` on the canonical pose of a convex quadrangle.
pub fn construct(q: &MarkedQuadrangle, tol: Tolerance) -> Result<CompassConstruction> {
    let class = q.classify(tol)?;
    if class != ShapeClass::Convex {
        return Err(Error::NotConvex(class));
    }
    let q = q.normalize();
    let [a, b, c, d] = q.vertices();
    let [s1, s2, s3, s4] = q.edge_lengths();
    let radii = [
        (s2 + s3 + s4 - s1) / 2.0,
        (s1 + s3 + s4 - s2) / 2.0,
        (s1 + s2 + s3 - s4) / 2.0,
        (s1 + s2 + s4 - s3) / 2.0,
    ];
    let circles = |ra: f64, rc: f64| -> Result<(Circle, Circle)> {
        Ok((Circle::new(a, ra)?, Circle::new(c, rc)?))
    };
    let failure = |name: &'static str| {
        move |e: Error| match e {
            Error::NoIntersection => {
                Error::ConstructionFailure(format!("circles for {name} do not intersect"))
            }
            other => other,
        }
    };
    let (ca, cc) = circles(radii[0], radii[1])?;
    let hit = circle_circle_intersection(&ca, &cc, tol).map_err(failure("B1"))?;
    let b1 = pick_on_side(a, c, b, hit, "B1")?;
    let (ca, cc) = circles(radii[2], radii[3])?;
    let hit = circle_circle_intersection(&ca, &cc, tol).map_err(failure("D1"))?;
    let d1 = pick_on_side(a, c, d, hit, "D1")?;
    let quadrangle = MarkedQuadrangle::with_tolerance([a, b1, c, d1], tol)
        .map_err(|e| Error::ConstructionFailure(e.to_string()))?;
    Ok(CompassConstruction {
        quadrangle,
        b1,
        d1,
        radii,
    })
}

pub fn compass_dual(q: &MarkedQuadrangle, tol: Tolerance) -> Result<MarkedQuadrangle> {
    construct(q, tol).map(|c| c.quadrangle)
}

/// Compass construction against the algebraic dual (relabeling allowed), plus
/// the radius identities `1 - s_1, 1 - s_2, 1 - s_4, 1 - s_3`.
pub fn verify_compass(q: &MarkedQuadrangle, tol: f64) -> Result<TheoremReport> {
    let construction = construct(q, Tolerance::default())?;
    let s = q.normalize().edge_lengths();
    let expected = [1.0 - s[0], 1.0 - s[1], 1.0 - s[3], 1.0 - s[2]];
    let report = congruent(&construction.quadrangle, &dual_quadrangle(q)?, CONGRUENCE_TOL, true);
    let mut residuals = vec![report.max_vertex_distance];
    residuals.extend(construction.radii.iter().zip(expected).map(|(r, e)| (r - e).abs()));
    Ok(TheoremReport::new(
        "compass",
        residuals,
        tol,
        format!(
            "relabel shift {}, reflected {}",
            report.relabel_shift.map_or("none".into(), |k| k.to_string()),
            report.reflected
        ),
    ))
}
