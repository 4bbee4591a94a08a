//! Continuous families `Q_t`, `t ∈ [0, 1]`, obtained by moving vertices `B, C, D`
//! with `A` held fixed, and sweeps that track the shape class of `Q_t` and of its
//! dual along the way.
//!
//! A class change of the dual inside a family whose members all stay
//! non-degenerate and in one class would require a degenerate dual somewhere on
//! the path. Sweeps record the collinearity margins that witness this.

use crate::duality::dual_quadrangle_with;
use crate::duality::ComplementMethod;
use crate::error::{Error, Result};
use crate::geometry::{collinearity_margin, MarkedQuadrangle, Point2, ShapeClass, Tolerance};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilySpec {
    start: MarkedQuadrangle,
    end: MarkedQuadrangle,
    steps: usize,
    tol: Tolerance,
}

impl FamilySpec {
    pub fn new(start: MarkedQuadrangle, end: MarkedQuadrangle, steps: usize) -> Result<Self> {
        if steps < 2 {
            return Err(Error::InvalidParameter(format!("steps must be at least 2, got {steps}")));
        }
        Ok(Self {
            start,
            end,
            steps,
            tol: Tolerance::default(),
        })
    }

    pub fn with_tolerance(mut self, tol: Tolerance) -> Self {
        self.tol = tol;
        self
    }

    pub fn start(&self) -> MarkedQuadrangle {
        self.start
    }

    pub fn end(&self) -> MarkedQuadrangle {
        self.end
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn tolerance(&self) -> Tolerance {
        self.tol
    }

    /// `t_i = i / (steps - 1)`
    pub fn parameter(&self, i: usize) -> f64 {
        i as f64 / (self.steps - 1) as f64
    }

    /// Raw vertices of `Q_t` before normalization. The end quadrangle is first
    /// translated so that its `A` coincides with the start's.
    pub fn vertices_at(&self, t: f64) -> [Point2; 4] {
        let s = self.start.vertices();
        let e = self.end.vertices();
        let (dx, dy) = (s[0].x - e[0].x, s[0].y - e[0].y);
        std::array::from_fn(|k| {
            if k == 0 {
                s[0]
            } else {
                let (ex, ey) = (e[k].x + dx, e[k].y + dy);
                Point2::new(s[k].x + t * (ex - s[k].x), s[k].y + t * (ey - s[k].y))
            }
        })
    }
}

/// `Q_t` in canonical pose.
pub fn interpolate(spec: &FamilySpec, t: f64) -> Result<MarkedQuadrangle> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidParameter(format!("t = {t} is outside [0, 1]")));
    }
    let vertices = spec.vertices_at(t);
    let (_, margin) = collinearity_margin(&vertices);
    if !(margin > spec.tol.eps()) {
        return Err(Error::DegenerateAtT { t, margin });
    }
    Ok(MarkedQuadrangle::with_tolerance(vertices, spec.tol)?.normalize())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord {
    pub t: f64,
    /// `None` when `Q_t` is degenerate.
    pub class: Option<ShapeClass>,
    /// `None` when `Q_t` or its dual is degenerate.
    pub dual_class: Option<ShapeClass>,
    pub margin: f64,
    /// `None` when `Q_t` is degenerate and has no dual.
    pub dual_margin: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub records: Vec<SweepRecord>,
}

impl SweepResult {
    fn constant(classes: impl Iterator<Item = Option<ShapeClass>>) -> bool {
        let mut first = None;
        for c in classes {
            match (c, first) {
                (None, _) => return false,
                (Some(c), None) => first = Some(c),
                (Some(c), Some(f)) if c != f => return false,
                _ => {}
            }
        }
        true
    }

    /// Every `Q_t` is non-degenerate and all share one class.
    pub fn class_constant(&self) -> bool {
        Self::constant(self.records.iter().map(|r| r.class))
    }

    pub fn dual_class_constant(&self) -> bool {
        Self::constant(self.records.iter().map(|r| r.dual_class))
    }

    pub fn min_margin(&self) -> f64 {
        self.records.iter().map(|r| r.margin).fold(f64::INFINITY, f64::min)
    }

    /// Smallest dual margin; a degenerate `Q_t` counts as 0.
    pub fn min_dual_margin(&self) -> f64 {
        self.records
            .iter()
            .map(|r| r.dual_margin.unwrap_or(0.0))
            .fold(f64::INFINITY, f64::min)
    }
}

fn record(spec: &FamilySpec, t: f64) -> SweepRecord {
    let (_, margin) = collinearity_margin(&spec.vertices_at(t));
    let mut rec = SweepRecord {
        t,
        class: None,
        dual_class: None,
        margin,
        dual_margin: None,
    };
    let Ok(q) = interpolate(spec, t) else {
        return rec;
    };
    rec.class = q.classify(spec.tol).ok();
    match dual_quadrangle_with(&q, spec.tol, ComplementMethod::Quaternion) {
        Ok(dual) => {
            rec.dual_margin = Some(dual.margin().1);
            rec.dual_class = dual.classify(spec.tol).ok();
        }
        Err(Error::DegenerateDual { margin, .. }) => rec.dual_margin = Some(margin),
        Err(_) => {}
    }
    rec
}

/// Classifies `Q_t` and its dual at `steps` evenly spaced parameters.
/// Degeneracies are recorded, never raised.
pub fn sweep(spec: &FamilySpec) -> SweepResult {
    SweepResult {
        records: (0..spec.steps).map(|i| record(spec, spec.parameter(i))).collect(),
    }
}
