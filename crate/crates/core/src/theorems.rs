//! Closed-form complement bases and numeric checks of the duality's properties.
//!
//! Every `verify_*` function returns a [`TheoremReport`] whose residuals are
//! compared against the given tolerance. Precondition failures (a trapezoid
//! check on a non-trapezoid, say) are errors, not failed reports.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::compass;
use crate::duality::{
    congruent, dual_quadrangle, quaternion_pair, sqrt_lift, SpanningPair, CONGRUENCE_TOL,
};
use crate::error::{Error, Result};
use crate::geometry::{cross, MarkedQuadrangle, ParallelPair, ShapeClass, Tolerance};

/// Default tolerance for theorem residuals.
pub const THEOREM_TOL: f64 = 1e-8;
/// Default tolerance for algebraic identities on well-conditioned inputs.
pub const IDENTITY_TOL: f64 = 1e-10;

/// Slack on the angle relations checked by [`closed_form_basis`].
const ANGLE_CONSISTENCY_TOL: f64 = 1e-9;

/// Interior angles `β_k` at `A, B, C, D` and half-angles `γ_k = β_k / 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleData {
    pub beta: [f64; 4],
    pub gamma: [f64; 4],
}

impl AngleData {
    pub fn from_beta(beta: [f64; 4]) -> Self {
        Self {
            beta,
            gamma: beta.map(|b| b / 2.0),
        }
    }
}

/// Unsigned angle at each vertex between its two incident edges, in `(0, π)`.
pub fn interior_angles(q: &MarkedQuadrangle) -> Result<AngleData> {
    let (vertex, margin) = q.margin();
    if !(margin > Tolerance::default().eps()) {
        return Err(Error::DegenerateInput { vertex, margin });
    }
    let z = q.edge_vectors().z();
    let beta = std::array::from_fn(|k| {
        let back = -z[(k + 3) % 4];
        let out = z[k];
        cross(back, out).abs().atan2(back.re * out.re + back.im * out.im)
    });
    Ok(AngleData::from_beta(beta))
}

/// Turn signs at `B, C, D, A` that define the reference pose of each class:
/// convex counter-clockwise; non-convex with the reflex vertex at `C`;
/// self-intersecting with `BC` crossing `DA`.
fn pose_turn_signs(class: ShapeClass) -> [bool; 4] {
    match class {
        ShapeClass::Convex => [true, true, true, true],
        ShapeClass::NonConvexSimple => [true, false, true, true],
        ShapeClass::SelfIntersecting => [true, false, false, true],
    }
}

/// Re-marks `q` so that, in canonical pose, it sits in the reference pose of its
/// class. Such a marking always exists.
pub fn reference_pose(q: &MarkedQuadrangle, tol: Tolerance) -> Result<(MarkedQuadrangle, ShapeClass)> {
    let class = q.classify(tol)?;
    let want = pose_turn_signs(class);
    q.markings()
        .iter()
        .map(MarkedQuadrangle::normalize)
        .find(|m| m.edge_vectors().turns().map(|t| t > 0.0) == want)
        .map(|m| (m, class))
        .ok_or_else(|| Error::Precondition(format!("no reference pose for {class} quadrangle")))
}

/// Edge vectors of the quadrangle with sides `s` and angles `β` in the reference
/// pose of `class`.
pub fn pose_edge_vectors(s: [f64; 4], angles: &AngleData, class: ShapeClass) -> [Complex64; 4] {
    let [b1, b2, b3, _] = angles.beta;
    let args = match class {
        ShapeClass::Convex => [0.0, PI - b2, 2.0 * PI - b2 - b3, PI + b1],
        ShapeClass::NonConvexSimple => [0.0, PI - b2, b3 - b2, PI + b1],
        ShapeClass::SelfIntersecting => [0.0, PI - b2, b3 - b2, b1 - PI],
    };
    std::array::from_fn(|k| Complex64::from_polar(s[k], args[k]))
}

fn check_consistency(s: &[f64; 4], angles: &AngleData, class: ShapeClass) -> Result<()> {
    let invalid = |reason: String| Err(Error::InvalidClass { class, reason });
    if s.iter().any(|&x| !(x > 0.0)) {
        return invalid(format!("side lengths must be positive: {s:?}"));
    }
    let perimeter: f64 = s.iter().sum();
    if (perimeter - 2.0).abs() > ANGLE_CONSISTENCY_TOL {
        return invalid(format!("perimeter {perimeter} is not 2"));
    }
    if angles.beta.iter().any(|&b| !(b > 0.0 && b < PI)) {
        return invalid(format!("angles must lie in (0, π): {:?}", angles.beta));
    }
    let [b1, b2, b3, b4] = angles.beta;
    let (relation, defect) = match class {
        ShapeClass::Convex => ("β1 + β2 + β3 + β4 = 2π", b1 + b2 + b3 + b4 - 2.0 * PI),
        ShapeClass::NonConvexSimple => ("β3 = β1 + β2 + β4", b3 - b1 - b2 - b4),
        ShapeClass::SelfIntersecting => ("β1 + β2 = β3 + β4", b1 + b2 - b3 - b4),
    };
    if defect.abs() > ANGLE_CONSISTENCY_TOL {
        return invalid(format!("{relation} violated by {defect:e}"));
    }
    Ok(())
}

/// The complement pair `(g, h)` written in terms of side lengths and half-angles,
/// for a quadrangle of perimeter 2 in the reference pose of `class`.
pub fn closed_form_basis(s: [f64; 4], angles: &AngleData, class: ShapeClass) -> Result<SpanningPair> {
    check_consistency(&s, angles, class)?;
    let [s1, s2, s3, s4] = s;
    let [g1, g2, g3, g4] = angles.gamma;
    let r = |x: f64| x.sqrt();
    let (g, h) = match class {
        ShapeClass::Convex => (
            [
                s1 - 1.0,
                r(s1 * s2) * g2.sin(),
                -r(s1 * s3) * (g2 + g3).cos(),
                -r(s1 * s4) * g1.sin(),
            ],
            [
                0.0,
                -r(s3 * s4) * g4.cos(),
                r(s2 * s4) * (g1 + g2).sin(),
                -r(s2 * s3) * g3.cos(),
            ],
        ),
        ShapeClass::NonConvexSimple => (
            [
                s1 - 1.0,
                r(s1 * s2) * g2.sin(),
                r(s1 * s3) * (g3 - g2).cos(),
                -r(s1 * s4) * g1.sin(),
            ],
            [
                0.0,
                -r(s3 * s4) * g4.cos(),
                r(s2 * s4) * (g1 + g2).sin(),
                r(s2 * s3) * g3.cos(),
            ],
        ),
        ShapeClass::SelfIntersecting => (
            [
                s1 - 1.0,
                r(s1 * s2) * g2.sin(),
                r(s1 * s3) * (g3 - g2).cos(),
                r(s1 * s4) * g1.sin(),
            ],
            [
                0.0,
                r(s3 * s4) * g4.cos(),
                -r(s2 * s4) * (g1 + g2).sin(),
                r(s2 * s3) * g3.cos(),
            ],
        ),
    };
    Ok(SpanningPair { g, h })
}

#[derive(Debug, Clone, PartialEq)]
pub struct TheoremReport {
    pub name: String,
    pub residuals: Vec<f64>,
    pub passed: bool,
    pub tolerance: f64,
    pub detail: String,
}

impl TheoremReport {
    pub fn new(name: &str, residuals: Vec<f64>, tolerance: f64, detail: impl Into<String>) -> Self {
        let passed = residuals.iter().all(|&r| r <= tolerance);
        Self {
            name: name.to_owned(),
            residuals,
            passed,
            tolerance,
            detail: detail.into(),
        }
    }

    /// Largest residual; NaN propagates.
    pub fn max_residual(&self) -> f64 {
        self.residuals
            .iter()
            .copied()
            .fold(0.0, |m, r| if r.is_nan() || m.is_nan() { f64::NAN } else { m.max(r) })
    }
}

fn fmt_list(values: &[f64]) -> String {
    let items: Vec<String> = values.iter().map(|v| format!("{v:.6}")).collect();
    format!("({})", items.join(", "))
}

/// `|s_k + s°_k - 1|` for each edge, in marked order.
pub fn verify_edge_sums(q: &MarkedQuadrangle, tol: f64) -> Result<TheoremReport> {
    let q = q.normalize();
    let dual = dual_quadrangle(&q)?;
    let (s, d) = (q.edge_lengths(), dual.edge_lengths());
    let residuals = (0..4).map(|k| (s[k] + d[k] - 1.0).abs()).collect();
    Ok(TheoremReport::new(
        "edge-sums",
        residuals,
        tol,
        format!("sides {} dual sides {}", fmt_list(&s), fmt_list(&d)),
    ))
}

/// `||AC| - |KM||` and `||BD| - |LN||`.
pub fn verify_diagonals(q: &MarkedQuadrangle, tol: f64) -> Result<TheoremReport> {
    let q = q.normalize();
    let dual = dual_quadrangle(&q)?;
    let (e, f) = (q.diagonal_lengths(), dual.diagonal_lengths());
    let residuals = vec![(e[0] - f[0]).abs(), (e[1] - f[1]).abs()];
    Ok(TheoremReport::new(
        "diagonals",
        residuals,
        tol,
        format!("diagonals {} dual diagonals {}", fmt_list(&e), fmt_list(&f)),
    ))
}

/// Residual 0 when the dual has the same shape class, 1 otherwise.
pub fn verify_class_preservation(q: &MarkedQuadrangle, tol: f64) -> Result<TheoremReport> {
    let eps = Tolerance::default();
    let class = q.classify(eps)?;
    let dual_class = dual_quadrangle(q)?.classify(eps)?;
    let residual = if class == dual_class { 0.0 } else { 1.0 };
    Ok(TheoremReport::new(
        "class-preservation",
        vec![residual],
        tol,
        format!("{class} -> {dual_class}"),
    ))
}

/// Duals of all eight markings, compared pairwise with relabeling allowed.
pub fn verify_marking_invariance(q: &MarkedQuadrangle, tol: f64) -> Result<TheoremReport> {
    let duals = q
        .markings()
        .iter()
        .map(dual_quadrangle)
        .collect::<Result<Vec<_>>>()?;
    let mut residuals = Vec::with_capacity(28);
    for i in 0..duals.len() {
        for j in i + 1..duals.len() {
            residuals.push(congruent(&duals[i], &duals[j], CONGRUENCE_TOL, true).max_vertex_distance);
        }
    }
    Ok(TheoremReport::new(
        "marking-invariance",
        residuals,
        tol,
        "8 markings, 28 pairs",
    ))
}

/// The dual of the dual against the normalized input, without relabeling.
pub fn verify_involution(q: &MarkedQuadrangle, tol: f64) -> Result<TheoremReport> {
    let q = q.normalize();
    let double = dual_quadrangle(&dual_quadrangle(&q)?)?;
    let report = congruent(&double, &q, CONGRUENCE_TOL, false);
    Ok(TheoremReport::new(
        "involution",
        vec![report.max_vertex_distance],
        tol,
        format!("reflected: {}", report.reflected),
    ))
}

fn sine_between(p: Complex64, q: Complex64) -> f64 {
    (cross(p, q) / (p.norm() * q.norm())).abs()
}

/// The dual of a trapezoid has the same pair(s) of parallel opposite edges.
/// Residuals are `|sin|` of the angle between the corresponding dual edges.
pub fn verify_trapezoid(q: &MarkedQuadrangle, tol: f64) -> Result<TheoremReport> {
    let pair = q
        .is_trapezoid(Tolerance::default())
        .ok_or_else(|| Error::Precondition("quadrangle is not a trapezoid".into()))?;
    let w = dual_quadrangle(q)?.edge_vectors().z();
    let residuals = match pair {
        ParallelPair::FirstThird => vec![sine_between(w[0], w[2])],
        ParallelPair::SecondFourth => vec![sine_between(w[1], w[3])],
        ParallelPair::Both => vec![sine_between(w[0], w[2]), sine_between(w[1], w[3])],
    };
    Ok(TheoremReport::new(
        "trapezoid",
        residuals,
        tol,
        match pair {
            ParallelPair::FirstThird => "AB parallel to CD",
            ParallelPair::SecondFourth => "BC parallel to DA",
            ParallelPair::Both => "both pairs parallel",
        },
    ))
}

/// The dual of a parallelogram is congruent to it, with sides shifted by one:
/// `s°_k = s_{k+1}`.
pub fn verify_parallelogram(q: &MarkedQuadrangle, tol: f64) -> Result<TheoremReport> {
    if !q.is_parallelogram(Tolerance::default()) {
        return Err(Error::Precondition("quadrangle is not a parallelogram".into()));
    }
    let q = q.normalize();
    let dual = dual_quadrangle(&q)?;
    let report = congruent(&dual, &q, CONGRUENCE_TOL, true);
    let (s, d) = (q.edge_lengths(), dual.edge_lengths());
    let mut residuals = vec![report.max_vertex_distance];
    residuals.extend((0..4).map(|k| (d[k] - s[(k + 1) % 4]).abs()));
    Ok(TheoremReport::new(
        "parallelogram",
        residuals,
        tol,
        format!(
            "relabel shift {}, reversed {}, reflected {}",
            report.relabel_shift.map_or("none".into(), |k| k.to_string()),
            report.direction_reversed,
            report.reflected
        ),
    ))
}

/// Quaternion pair against the closed form for the class, in reference pose.
/// Residuals: projector distance of the two planes, then the componentwise
/// distance with one global sign allowed on `h`.
pub fn verify_closed_form(q: &MarkedQuadrangle, tol: f64) -> Result<TheoremReport> {
    let eps = Tolerance::default();
    let (posed, class) = reference_pose(q, eps)?;
    let lift = sqrt_lift(&posed.edge_vectors(), eps)?;
    let pair = quaternion_pair(&lift)?;
    let closed = closed_form_basis(posed.edge_lengths(), &interior_angles(&posed)?, class)?;
    let plane = pair.normalized().projector_distance(&closed.normalized());
    let max_diff = |p: &[f64; 4], q: &[f64; 4], sign: f64| {
        p.iter().zip(q).map(|(x, y)| (x - sign * y).abs()).fold(0.0, f64::max)
    };
    let g_diff = max_diff(&pair.g, &closed.g, 1.0);
    let h_diff = max_diff(&pair.h, &closed.h, 1.0).min(max_diff(&pair.h, &closed.h, -1.0));
    Ok(TheoremReport::new(
        "closed-form",
        vec![plane, g_diff.max(h_diff)],
        tol,
        format!("{class} reference pose"),
    ))
}

/// Identities behind the edge and diagonal results, on the unnormalized
/// quaternion pair of the canonical pose:
/// `g_2² + h_2² = (1 - s_1)(1 - s_2)`,
/// `|g_1² + (g_2 + i h_2)²| = (1 - s_1)|AC|` and
/// `|g_1² + (g_4 + i h_4)²| = (1 - s_1)|BD|`.
pub fn proof_identity_residuals(q: &MarkedQuadrangle) -> Result<[f64; 3]> {
    let q = q.normalize();
    let lift = sqrt_lift(&q.edge_vectors(), Tolerance::default())?;
    let SpanningPair { g, h } = quaternion_pair(&lift)?;
    let s = q.edge_lengths();
    let [ac, bd] = q.diagonal_lengths();
    let w1 = Complex64::new(g[0] * g[0], 0.0);
    let w = |k: usize| Complex64::new(g[k], h[k]).powi(2);
    Ok([
        (g[1] * g[1] + h[1] * h[1] - (1.0 - s[0]) * (1.0 - s[1])).abs(),
        ((w1 + w(1)).norm() - (1.0 - s[0]) * ac).abs(),
        ((w1 + w(3)).norm() - (1.0 - s[0]) * bd).abs(),
    ])
}

pub fn verify_proof_identities(q: &MarkedQuadrangle, tol: f64) -> Result<TheoremReport> {
    Ok(TheoremReport::new(
        "proof-identities",
        proof_identity_residuals(q)?.to_vec(),
        tol,
        "edge and diagonal identities",
    ))
}

/// Every check that applies to `q`: the general ones always, the trapezoid and
/// parallelogram checks when the shape qualifies, the compass check when convex.
pub fn verify_all(q: &MarkedQuadrangle, tol: f64) -> Result<Vec<TheoremReport>> {
    let eps = Tolerance::default();
    let mut reports = vec![
        verify_edge_sums(q, tol)?,
        verify_diagonals(q, tol)?,
        verify_class_preservation(q, tol)?,
        verify_marking_invariance(q, tol)?,
        verify_involution(q, tol)?,
        verify_closed_form(q, tol)?,
        verify_proof_identities(q, tol)?,
    ];
    if q.is_trapezoid(eps).is_some() {
        reports.push(verify_trapezoid(q, tol)?);
    }
    if q.is_parallelogram(eps) {
        reports.push(verify_parallelogram(q, tol)?);
    }
    if q.classify(eps)? == ShapeClass::Convex {
        reports.push(compass::verify_compass(q, tol)?);
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn quad(c: [(f64, f64); 4]) -> MarkedQuadrangle {
        MarkedQuadrangle::from_coords(c).unwrap()
    }

    fn square() -> MarkedQuadrangle {
        quad([(0.0, 0.0), (0.5, 0.0), (0.5, 0.5), (0.0, 0.5)])
    }

    fn rect() -> MarkedQuadrangle {
        quad([(0.0, 0.0), (0.4, 0.0), (0.4, 0.6), (0.0, 0.6)])
    }

    fn crossed_equiangular() -> MarkedQuadrangle {
        let h = 1.0 / 3f64.sqrt();
        quad([(0.0, 0.0), (1.0 / 3.0, 0.0), (0.0, h), (1.0 / 3.0, h)])
    }

    #[test]
    fn square_angles() {
        let a = interior_angles(&square()).unwrap();
        for b in a.beta {
            assert!((b - FRAC_PI_2).abs() < 1e-15);
        }
    }

    #[test]
    fn crossed_angles_are_all_pi_over_three() {
        let a = interior_angles(&crossed_equiangular()).unwrap();
        for b in a.beta {
            assert!((b - PI / 3.0).abs() < 1e-15, "{:?}", a.beta);
        }
    }

    #[test]
    fn square_closed_form_matches_quaternion() {
        let sq = square();
        let lift = sqrt_lift(&sq.edge_vectors(), Tolerance::default()).unwrap();
        let pair = quaternion_pair(&lift).unwrap();
        let closed = closed_form_basis(
            sq.edge_lengths(),
            &interior_angles(&sq).unwrap(),
            ShapeClass::Convex,
        )
        .unwrap();
        for k in 0..4 {
            assert!((pair.g[k] - closed.g[k]).abs() < 1e-15);
            assert!((pair.h[k] - closed.h[k]).abs() < 1e-15);
        }
        assert_eq!(closed.g[0], -0.5);
    }

    #[test]
    fn closed_form_rejects_inconsistent_angles() {
        let angles = AngleData::from_beta([1.0, 1.0, 1.0, 1.0]);
        let err = closed_form_basis([0.5; 4], &angles, ShapeClass::Convex).unwrap_err();
        assert!(matches!(err, Error::InvalidClass { class: ShapeClass::Convex, .. }));
        let err = closed_form_basis([0.5; 4], &angles, ShapeClass::NonConvexSimple).unwrap_err();
        assert!(matches!(err, Error::InvalidClass { .. }));
        // equal angles satisfy the crossed relation β1 + β2 = β3 + β4
        assert!(closed_form_basis([0.5; 4], &angles, ShapeClass::SelfIntersecting).is_ok());
        let err = closed_form_basis([0.5, 0.5, 0.5, 0.6], &angles, ShapeClass::SelfIntersecting)
            .unwrap_err();
        assert!(matches!(err, Error::InvalidClass { .. }));
    }

    #[test]
    fn reference_pose_rebuilds_from_sides_and_angles() {
        let cases = [
            quad([(0.0, 0.0), (1.0, 0.1), (0.8, 0.9), (0.1, 0.6)]),
            quad([(0.0, 0.0), (1.0, 0.0), (0.5, 0.2), (0.5, 1.0)]),
            quad([(0.0, 0.0), (1.0, 0.0), (0.2, 1.0), (1.2, 0.5)]),
        ];
        for q in cases {
            let (posed, class) = reference_pose(&q, Tolerance::default()).unwrap();
            let angles = interior_angles(&posed).unwrap();
            let z = pose_edge_vectors(posed.edge_lengths(), &angles, class);
            for (a, b) in z.iter().zip(posed.edge_vectors().z()) {
                assert!((a - b).norm() < 1e-12, "{class}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn closed_forms_for_each_class() {
        let cases = [
            (quad([(0.0, 0.0), (1.0, 0.1), (0.8, 0.9), (0.1, 0.6)]), ShapeClass::Convex),
            (quad([(0.0, 0.0), (1.0, 0.0), (0.5, 0.2), (0.5, 1.0)]), ShapeClass::NonConvexSimple),
            (quad([(0.0, 0.0), (1.0, 0.0), (0.2, 1.0), (1.2, 0.5)]), ShapeClass::SelfIntersecting),
        ];
        for (q, class) in cases {
            let r = verify_closed_form(&q, 1e-12).unwrap();
            assert!(r.passed, "{class}: {r:?}");
            assert_eq!(r.detail, format!("{class} reference pose"));
        }
    }

    #[test]
    fn rectangle_reports() {
        let r = verify_edge_sums(&rect(), 1e-10).unwrap();
        assert!(r.passed && r.max_residual() < 1e-12, "{r:?}");
        let r = verify_diagonals(&rect(), 1e-10).unwrap();
        assert!(r.passed, "{r:?}");
        let r = verify_involution(&rect(), 1e-10).unwrap();
        assert!(r.passed, "{r:?}");
        let r = verify_parallelogram(&rect(), 1e-10).unwrap();
        assert!(r.passed, "{r:?}");
        let r = verify_trapezoid(&rect(), 1e-10).unwrap();
        assert!(r.passed && r.residuals.len() == 2, "{r:?}");
    }

    #[test]
    fn class_preservation_examples() {
        let dart = quad([(0.0, 0.0), (1.0, 0.0), (0.5, 0.2), (0.5, 1.0)]);
        for (q, detail) in [
            (square(), "convex -> convex"),
            (dart, "non-convex-simple -> non-convex-simple"),
            (crossed_equiangular(), "self-intersecting -> self-intersecting"),
        ] {
            let r = verify_class_preservation(&q, THEOREM_TOL).unwrap();
            assert!(r.passed);
            assert_eq!(r.detail, detail);
        }
    }

    #[test]
    fn trapezoid_example() {
        let trap = quad([(0.0, 0.0), (0.7, 0.0), (0.55, 0.3), (0.2, 0.3)]);
        let r = verify_trapezoid(&trap, 1e-9).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.residuals.len(), 1);
        assert!(verify_trapezoid(&crossed_equiangular(), 1e-9).is_ok());
        let kite = quad([(0.0, 0.0), (1.0, 0.1), (0.8, 0.9), (0.1, 0.6)]);
        assert!(matches!(verify_trapezoid(&kite, 1e-9), Err(Error::Precondition(_))));
        assert!(matches!(verify_parallelogram(&trap, 1e-9), Err(Error::Precondition(_))));
    }

    #[test]
    fn proof_identities_on_square() {
        for r in proof_identity_residuals(&square()).unwrap() {
            assert!(r < 1e-15);
        }
    }

    #[test]
    fn verify_all_on_square_passes() {
        let reports = verify_all(&square(), THEOREM_TOL).unwrap();
        let names: Vec<&str> = reports.iter().map(|r| r.name.as_str()).collect();
        assert!(names.contains(&"trapezoid"));
        assert!(names.contains(&"parallelogram"));
        assert!(names.contains(&"compass"));
        assert!(reports.iter().all(|r| r.passed), "{reports:#?}");
    }

    #[test]
    fn report_pass_logic() {
        assert!(TheoremReport::new("x", vec![0.0, 1e-9], 1e-8, "").passed);
        assert!(!TheoremReport::new("x", vec![1e-7], 1e-8, "").passed);
        let nan = TheoremReport::new("x", vec![f64::NAN], 1e-8, "");
        assert!(!nan.passed && nan.max_residual().is_nan());
    }
}
