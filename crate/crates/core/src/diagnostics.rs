//! Numerical health report for a built spline.

use serde::Serialize;

use crate::curve::SplineCurve;
use crate::hull::hull_check;

/// Residuals that depend only on the curve itself.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    /// `|diag| - |sub| - |sup|` for every interior row of the system.
    pub dominance_margins: Vec<f64>,
    /// `|S'(tau - 0) - S'(tau + 0)|` at every interior spline node.
    pub c1_residuals: Vec<f64>,
    /// `|S(x_j) - f_j|` at every interior interpolation node.
    pub value_residuals: Vec<f64>,
    /// `|S'(x_j) - fp_j|` at every interior interpolation node.
    pub slope_residuals: Vec<f64>,
}

impl ResidualReport {
    pub fn of(curve: &SplineCurve) -> Self {
        Self {
            dominance_margins: curve.dominance_margins().to_vec(),
            c1_residuals: curve.c1_residuals(),
            value_residuals: curve.value_residuals(),
            slope_residuals: curve.slope_residuals(),
        }
    }

    pub fn min_dominance_margin(&self) -> Option<f64> {
        self.dominance_margins.iter().copied().reduce(f64::min)
    }

    pub fn max_c1_residual(&self) -> f64 {
        max_of(&self.c1_residuals)
    }

    pub fn max_value_residual(&self) -> f64 {
        max_of(&self.value_residuals)
    }

    pub fn max_slope_residual(&self) -> f64 {
        max_of(&self.slope_residuals)
    }
}

fn max_of(v: &[f64]) -> f64 {
    v.iter().copied().fold(0.0, f64::max)
}

/// Full diagnostics for a scalar spline, including the convex hull margin
/// of a sample set against the control points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diagnostics {
    #[serde(flatten)]
    pub residuals: ResidualReport,
    /// Minimum signed distance of the samples to the control-point hull
    /// boundary (positive = inside).
    pub hull_margin: f64,
}

impl Diagnostics {
    pub fn new(curve: &SplineCurve, samples: &[(f64, f64)]) -> Self {
        Self {
            residuals: ResidualReport::of(curve),
            hull_margin: hull_check(&curve.control_points(), samples),
        }
    }
}

impl SplineCurve {
    /// Diagnostics over `count` uniform samples.
    pub fn diagnostics(&self, count: usize) -> crate::Result<Diagnostics> {
        let samples = self.sample(count, false)?;
        Ok(Diagnostics::new(self, &samples))
    }
}
