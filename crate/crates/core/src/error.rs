use thiserror::Error;

use crate::geometry::ShapeClass;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite coordinate in vertex {index}")]
    NonFinite { index: usize },

    /// Successive edges are collinear (or an edge has zero length).
    #[error("degenerate quadrangle: collinearity margin {margin:e} at vertex {vertex}")]
    DegenerateInput { vertex: usize, margin: f64 },

    #[error("dual quadrangle is degenerate: collinearity margin {margin:e} at vertex {vertex}")]
    DegenerateDual { vertex: usize, margin: f64 },

    #[error("quadrangle is degenerate at t = {t}: collinearity margin {margin:e}")]
    DegenerateAtT { t: f64, margin: f64 },

    #[error("tolerance must satisfy 0 < eps < 1e-3, got {0}")]
    InvalidTolerance(f64),

    #[error("edge vectors are not in canonical pose: {0}")]
    NotCanonical(String),

    #[error("angle data inconsistent with class {class}: {reason}")]
    InvalidClass { class: ShapeClass, reason: String },

    #[error("quadrangle is not convex (class {0})")]
    NotConvex(ShapeClass),

    #[error("circles do not intersect")]
    NoIntersection,

    #[error("circles have coincident centers")]
    CoincidentCenters,

    #[error("invalid circle radius {0}")]
    InvalidRadius(f64),

    #[error("compass construction failed: {0}")]
    ConstructionFailure(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
