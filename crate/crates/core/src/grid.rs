//! Control data and the derived interpolation grids.
//!
//! Indexing is 0-based throughout. Interval `j` spans `[tau[j], tau[j + 1]]`
//! and carries one interior interpolation node `x[j]`; in 1-based notation
//! that is interval `i = j + 2` with node `x_i` and right endpoint `tau_i`.

use serde::Serialize;

use crate::error::{Result, SplineError};

/// Lower bound of the placement ratio range for which the system is
/// guaranteed to be diagonally dominant.
pub const STRICT_ALPHA_MIN: f64 = 1.0 / 3.0;
/// Upper bound of the guaranteed range.
pub const STRICT_ALPHA_MAX: f64 = 2.0 / 3.0;
/// Midpoint placement used when the caller does not choose one.
pub const DEFAULT_ALPHA: f64 = 0.5;

/// The user-supplied control points `(tau_i, F_i)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ControlPolygon {
    tau: Vec<f64>,
    #[serde(rename = "F")]
    values: Vec<f64>,
}

impl ControlPolygon {
    pub fn new(tau: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if tau.len() != values.len() {
            return Err(SplineError::LengthMismatch {
                tau: tau.len(),
                values: values.len(),
            });
        }
        if tau.len() < 2 {
            return Err(SplineError::TooFewPoints(tau.len()));
        }
        if let Some(index) = tau.iter().position(|t| !t.is_finite()) {
            return Err(SplineError::NonFinite {
                field: "tau",
                index,
            });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(SplineError::NonFinite { field: "F", index });
        }
        for (index, w) in tau.windows(2).enumerate() {
            if w[1] <= w[0] {
                return Err(SplineError::NonIncreasing {
                    index: index + 1,
                    previous: w[0],
                    value: w[1],
                });
            }
        }
        Ok(Self { tau, values })
    }

    pub fn from_points(points: &[(f64, f64)]) -> Result<Self> {
        let (tau, values) = points.iter().copied().unzip();
        Self::new(tau, values)
    }

    pub fn len(&self) -> usize {
        self.tau.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tau.is_empty()
    }

    pub fn intervals(&self) -> usize {
        self.tau.len() - 1
    }

    pub fn tau(&self) -> &[f64] {
        &self.tau
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn points(&self) -> Vec<(f64, f64)> {
        self.tau
            .iter()
            .copied()
            .zip(self.values.iter().copied())
            .collect()
    }

    /// `max(1, max|F|, b - a)`; residual tolerances are relative to this.
    pub fn scale(&self) -> f64 {
        let span = self.tau[self.tau.len() - 1] - self.tau[0];
        self.values
            .iter()
            .fold(1.0_f64.max(span), |acc, v| acc.max(v.abs()))
    }
}

/// Per-interval ratios `alpha[j] = mu_j / h_j` locating the interior nodes
/// `x[j] = tau[j + 1] - alpha[j] * h_j`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NodePlacement {
    alpha: Vec<f64>,
    strict: bool,
}

impl NodePlacement {
    /// Strict placement: every ratio must lie in `[1/3, 2/3]`.
    pub fn new(alpha: Vec<f64>) -> Result<Self> {
        Self::with_mode(alpha, true)
    }

    /// Placement with an explicit strictness flag. Outside strict mode any
    /// ratio in the open interval `(0, 1)` is accepted.
    pub fn with_mode(alpha: Vec<f64>, strict: bool) -> Result<Self> {
        for (index, &value) in alpha.iter().enumerate() {
            if !value.is_finite() {
                return Err(SplineError::NonFinite {
                    field: "alpha",
                    index,
                });
            }
            if value <= 0.0 || value >= 1.0 {
                return Err(SplineError::AlphaOutOfDomain { index, value });
            }
            if strict && !in_strict_range(value) {
                return Err(SplineError::AlphaOutsideStrictRange { index, value });
            }
        }
        Ok(Self { alpha, strict })
    }

    /// The same ratio on each of `intervals` intervals.
    pub fn uniform(alpha: f64, intervals: usize, strict: bool) -> Result<Self> {
        Self::with_mode(vec![alpha; intervals], strict)
    }

    /// Midpoint placement (`alpha = 1/2`) in strict mode.
    pub fn midpoint(intervals: usize) -> Self {
        Self {
            alpha: vec![DEFAULT_ALPHA; intervals],
            strict: true,
        }
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    /// Intervals whose ratio falls outside the guaranteed range. Always
    /// empty in strict mode.
    pub fn outside_strict_range(&self) -> Vec<usize> {
        self.alpha
            .iter()
            .enumerate()
            .filter(|(_, a)| !in_strict_range(**a))
            .map(|(j, _)| j)
            .collect()
    }
}

pub fn in_strict_range(alpha: f64) -> bool {
    (STRICT_ALPHA_MIN..=STRICT_ALPHA_MAX).contains(&alpha)
}

/// Derived quantities of the construction: interval lengths, interior
/// nodes, and the chord value and slope the curve must match at each node.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SplineGrids {
    pub(crate) tau: Vec<f64>,
    #[serde(rename = "F")]
    pub(crate) values: Vec<f64>,
    pub(crate) x: Vec<f64>,
    pub(crate) h: Vec<f64>,
    pub(crate) mu: Vec<f64>,
    pub(crate) f: Vec<f64>,
    pub(crate) fp: Vec<f64>,
}

impl SplineGrids {
    pub fn tau(&self) -> &[f64] {
        &self.tau
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Interior interpolation nodes, one per interval.
    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn h(&self) -> &[f64] {
        &self.h
    }

    /// Distance from each node to the right end of its interval.
    pub fn mu(&self) -> &[f64] {
        &self.mu
    }

    /// Chord values: the control-polygon segment evaluated at `x[j]`.
    pub fn f(&self) -> &[f64] {
        &self.f
    }

    /// Chord slopes of the control-polygon segments.
    pub fn fp(&self) -> &[f64] {
        &self.fp
    }

    pub fn len(&self) -> usize {
        self.tau.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tau.is_empty()
    }

    pub fn intervals(&self) -> usize {
        self.h.len()
    }
}

pub fn build_grids(control: &ControlPolygon, placement: &NodePlacement) -> Result<SplineGrids> {
    let n = control.len();
    if placement.alpha.len() != n - 1 {
        return Err(SplineError::AlphaCount {
            expected: n - 1,
            got: placement.alpha.len(),
        });
    }
    let tau = control.tau();
    let values = control.values();

    let mut x = Vec::with_capacity(n - 1);
    let mut h = Vec::with_capacity(n - 1);
    let mut mu = Vec::with_capacity(n - 1);
    let mut f = Vec::with_capacity(n - 1);
    let mut fp = Vec::with_capacity(n - 1);
    for (j, &alpha) in placement.alpha.iter().enumerate() {
        let hj = tau[j + 1] - tau[j];
        let mj = alpha * hj;
        let (left, right) = (values[j], values[j + 1]);
        h.push(hj);
        mu.push(mj);
        x.push(tau[j + 1] - mj);
        f.push((left * mj + right * (hj - mj)) / hj);
        fp.push((right - left) / hj);
    }

    Ok(SplineGrids {
        tau: tau.to_vec(),
        values: values.to_vec(),
        x,
        h,
        mu,
        f,
        fp,
    })
}
