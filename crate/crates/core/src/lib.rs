//! Dual quadrangles in the plane.
//!
//! A plane quadrangle `ABCD` with a marked first vertex and traversal direction
//! is encoded by its edge vectors `z_1..z_4` as complex numbers. Scaled to
//! perimeter 2, the square roots `u_k = a_k + i b_k` of the edges give a pair of
//! orthonormal vectors `a, b` in R⁴. The orthogonal complement of their span is
//! again a 2-plane, and an orthonormal basis `(c, d)` of it squares back into a
//! closed quadrangle of perimeter 2: the dual.
//!
//! The crate is organised as:
//!
//! - [`geometry`]: points, marked quadrangles, canonical pose, shape classes.
//! - [`duality`]: the square-root lift, the quaternion construction of the
//!   complement, an independent linear-algebra complement, the dual itself and
//!   congruence testing up to rotation and reflection.
//! - [`theorems`]: closed-form complement bases and numeric verifiers for the
//!   properties of the duality (edge sums, diagonals, shape class, markings,
//!   involution, trapezoids, parallelograms).
//! - [`compass`]: the ruler-and-compass construction of the dual of a convex
//!   quadrangle.
//! - [`family`]: continuous vertex-moving families and class sweeps along them.
//! - [`sample`]: seeded random generators for quadrangles of each class.
//!
//! ```
//! use quadual::{dual_quadrangle, MarkedQuadrangle, Point2};
//!
//! let rect = MarkedQuadrangle::new([
//!     Point2::new(0.0, 0.0),
//!     Point2::new(0.4, 0.0),
//!     Point2::new(0.4, 0.6),
//!     Point2::new(0.0, 0.6),
//! ])
//! .unwrap();
//! let dual = dual_quadrangle(&rect).unwrap();
//! let sides = dual.edge_lengths();
//! assert!((sides[0] - 0.6).abs() < 1e-12);
//! assert!((sides[1] - 0.4).abs() < 1e-12);
//! ```

// `!(x > eps)` is deliberate throughout: NaN must fail the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod compass;
pub mod duality;
pub mod error;
pub mod family;
pub mod geometry;
pub mod sample;
pub mod theorems;

pub use compass::{circle_circle_intersection, compass_dual, Circle, CircleIntersection};
pub use duality::{
    congruent, dual_quadrangle, dual_quadrangle_with, generic_complement, quaternion_complement,
    quaternion_pair, sqrt_lift, ComplementMethod, CongruenceReport, PlaneBasis, SpanningPair,
    SqrtLift,
};
pub use error::{Error, Result};
pub use family::{interpolate, sweep, FamilySpec, SweepRecord, SweepResult};
pub use geometry::{
    classify, collinearity_margin, EdgeVectors, MarkedQuadrangle, ParallelPair, Point2,
    ShapeClass, Tolerance,
};
pub use theorems::{closed_form_basis, interior_angles, AngleData, TheoremReport};
