//! Planar curves built from one scalar spline per coordinate.

use serde::{Deserialize, Serialize};

use crate::curve::{build_spline, uniform_grid, SplineCurve};
use crate::diagnostics::ResidualReport;
use crate::error::{Result, SplineError};
use crate::grid::{ControlPolygon, NodePlacement};
use crate::hull::hull_check;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parameterization {
    /// `t_i = i`.
    Uniform,
    /// Cumulative chord length.
    #[default]
    Chord,
}

impl std::str::FromStr for Parameterization {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "uniform" => Ok(Self::Uniform),
            "chord" => Ok(Self::Chord),
            other => Err(format!(
                "unknown parameterization `{other}` (expected uniform or chord)"
            )),
        }
    }
}

/// Planar control points; consecutive points must differ.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlanarControlPoints {
    points: Vec<(f64, f64)>,
}

impl PlanarControlPoints {
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(SplineError::TooFewPoints(points.len()));
        }
        for (index, p) in points.iter().enumerate() {
            if !p.0.is_finite() || !p.1.is_finite() {
                return Err(SplineError::NonFinite {
                    field: "points",
                    index,
                });
            }
        }
        if let Some(k) = points.windows(2).position(|w| w[0] == w[1]) {
            return Err(SplineError::CoincidentPoints { index: k + 1 });
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Parameter values for each control point.
pub fn parameterize(points: &PlanarControlPoints, kind: Parameterization) -> Result<Vec<f64>> {
    let pts = points.points();
    match kind {
        Parameterization::Uniform => Ok((0..pts.len()).map(|i| i as f64).collect()),
        Parameterization::Chord => {
            let mut t = Vec::with_capacity(pts.len());
            t.push(0.0);
            for (k, w) in pts.windows(2).enumerate() {
                let step = (w[1].0 - w[0].0).hypot(w[1].1 - w[0].1);
                let next = t[k] + step;
                if step <= 0.0 || next <= t[k] {
                    return Err(SplineError::CoincidentPoints { index: k + 1 });
                }
                t.push(next);
            }
            Ok(t)
        }
    }
}

/// A planar curve `(X(t), Y(t))` sharing one parameter grid and placement.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParametricCurve {
    t: Vec<f64>,
    sx: SplineCurve,
    sy: SplineCurve,
    parameterization: Parameterization,
}

pub fn build_parametric(
    points: &PlanarControlPoints,
    placement: &NodePlacement,
    kind: Parameterization,
) -> Result<ParametricCurve> {
    let t = parameterize(points, kind)?;
    let (xs, ys): (Vec<f64>, Vec<f64>) = points.points().iter().copied().unzip();
    let sx = build_spline(&ControlPolygon::new(t.clone(), xs)?, placement)?;
    let sy = build_spline(&ControlPolygon::new(t.clone(), ys)?, placement)?;
    Ok(ParametricCurve {
        t,
        sx,
        sy,
        parameterization: kind,
    })
}

impl ParametricCurve {
    pub fn t(&self) -> &[f64] {
        &self.t
    }

    pub fn x_spline(&self) -> &SplineCurve {
        &self.sx
    }

    pub fn y_spline(&self) -> &SplineCurve {
        &self.sy
    }

    pub fn parameterization(&self) -> Parameterization {
        self.parameterization
    }

    pub fn domain(&self) -> (f64, f64) {
        self.sx.domain()
    }

    pub fn point(&self, t: f64) -> Result<(f64, f64)> {
        Ok((self.sx.eval(t)?, self.sy.eval(t)?))
    }

    pub fn tangent(&self, t: f64) -> Result<(f64, f64)> {
        Ok((self.sx.eval_deriv(t)?, self.sy.eval_deriv(t)?))
    }

    /// Curve points at the interior parameter nodes.
    pub fn node_points(&self) -> Vec<(f64, f64)> {
        self.sx
            .grids()
            .x()
            .iter()
            .map(|&t| self.point(t).expect("node inside domain"))
            .collect()
    }

    pub fn control_points(&self) -> Vec<(f64, f64)> {
        self.sx
            .grids()
            .values()
            .iter()
            .copied()
            .zip(self.sy.grids().values().iter().copied())
            .collect()
    }

    /// `max(1, coordinate magnitudes, parameter span)`.
    pub fn scale(&self) -> f64 {
        self.sx.scale().max(self.sy.scale())
    }
}

/// `count` samples `(t, x, y)` uniform in the parameter.
pub fn sample_parametric(curve: &ParametricCurve, count: usize) -> Result<Vec<(f64, f64, f64)>> {
    if count < 2 {
        return Err(SplineError::SampleCount(count));
    }
    uniform_grid(curve.domain(), count)
        .into_iter()
        .map(|t| {
            let (x, y) = curve.point(t)?;
            Ok((t, x, y))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParametricDiagnostics {
    pub x: ResidualReport,
    pub y: ResidualReport,
    pub hull_margin: f64,
}

impl ParametricDiagnostics {
    pub fn new(curve: &ParametricCurve, samples: &[(f64, f64, f64)]) -> Self {
        let pts: Vec<(f64, f64)> = samples.iter().map(|s| (s.1, s.2)).collect();
        Self {
            x: ResidualReport::of(&curve.sx),
            y: ResidualReport::of(&curve.sy),
            hull_margin: hull_check(&curve.control_points(), &pts),
        }
    }
}
