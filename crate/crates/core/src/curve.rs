//! The assembled spline: node values, per-interval cubic terms and evaluation.

use serde::Serialize;

use crate::error::{Result, SplineError};
use crate::grid::{build_grids, ControlPolygon, NodePlacement, SplineGrids};
use crate::system::{assemble_system, check_dominance, solve_tridiagonal};

/// Relative slack below zero tolerated for dominance margins in strict mode.
const MARGIN_SLACK: f64 = 1e-12;

/// A C1 piecewise cubic on `[tau[0], tau[n-1]]`.
///
/// On interval `j` the cubic is the quadratic through `(tau[j], phi[j])`,
/// `(x[j], f[j])`, `(tau[j+1], phi[j+1])` plus
/// `q[j] * (x - tau[j]) * (x - tau[j+1]) * (x - x[j])`.
/// The value is immutable once built and can be shared across threads.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SplineCurve {
    grids: SplineGrids,
    alpha: Vec<f64>,
    phi: Vec<f64>,
    q: Vec<f64>,
    dominance_margins: Vec<f64>,
}

/// Leading (cubic) coefficient of every interval given the node values.
pub fn compute_q(grids: &SplineGrids, phi: &[f64]) -> Vec<f64> {
    (0..grids.intervals())
        .map(|j| {
            let h = grids.h[j];
            let mu = grids.mu[j];
            let l = h - mu;
            -phi[j] / (l * l * h) + phi[j + 1] / (h * mu * mu)
                - grids.f[j] * (h - 2.0 * mu) / (l * l * mu * mu)
                - grids.fp[j] / (mu * l)
        })
        .collect()
}

/// Build the spline for `control` with interior nodes placed by `placement`.
pub fn build_spline(control: &ControlPolygon, placement: &NodePlacement) -> Result<SplineCurve> {
    let grids = build_grids(control, placement)?;
    let system = assemble_system(&grids);
    let margins = check_dominance(&system);
    if placement.is_strict() {
        for (row, &margin) in margins.iter().enumerate() {
            if margin < -MARGIN_SLACK * system.diag[row].abs() {
                return Err(SplineError::NotDominant { row, margin });
            }
        }
    }
    let phi = solve_tridiagonal(&system)?;
    let q = compute_q(&grids, &phi);
    let n = margins.len();
    Ok(SplineCurve {
        grids,
        alpha: placement.alpha().to_vec(),
        phi,
        q,
        dominance_margins: if n > 2 {
            margins[1..n - 1].to_vec()
        } else {
            Vec::new()
        },
    })
}

impl SplineCurve {
    pub fn grids(&self) -> &SplineGrids {
        &self.grids
    }

    pub fn tau(&self) -> &[f64] {
        &self.grids.tau
    }

    /// Curve values at the spline nodes `tau`.
    pub fn phi(&self) -> &[f64] {
        &self.phi
    }

    pub fn q(&self) -> &[f64] {
        &self.q
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    /// Dominance margins of the interior rows, in row order.
    pub fn dominance_margins(&self) -> &[f64] {
        &self.dominance_margins
    }

    pub fn intervals(&self) -> usize {
        self.q.len()
    }

    pub fn domain(&self) -> (f64, f64) {
        let tau = self.tau();
        (tau[0], tau[tau.len() - 1])
    }

    /// `max(1, max|F|, b - a)`.
    pub fn scale(&self) -> f64 {
        let (a, b) = self.domain();
        self.grids
            .values
            .iter()
            .fold(1.0_f64.max(b - a), |acc, v| acc.max(v.abs()))
    }

    /// Control points `(tau_i, F_i)`.
    pub fn control_points(&self) -> Vec<(f64, f64)> {
        self.tau()
            .iter()
            .copied()
            .zip(self.grids.values.iter().copied())
            .collect()
    }

    /// Interval holding `x`. Ties at an interior node go to the right
    /// interval; `x == b` maps to the last one.
    pub fn interval_of(&self, x: f64) -> Result<usize> {
        let (a, b) = self.domain();
        if !(a..=b).contains(&x) {
            return Err(SplineError::OutOfDomain { x, a, b });
        }
        let idx = self.tau().partition_point(|&t| t <= x);
        Ok(idx.saturating_sub(1).min(self.intervals() - 1))
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        let j = self.interval_of(x)?;
        Ok(self.eval_on(j, x))
    }

    pub fn eval_deriv(&self, x: f64) -> Result<f64> {
        let j = self.interval_of(x)?;
        Ok(self.deriv_on(j, x))
    }

    /// Evaluates at `x` clamped into the domain.
    pub fn eval_clamped(&self, x: f64) -> f64 {
        let (a, b) = self.domain();
        let x = if x.is_nan() { a } else { x.clamp(a, b) };
        let j = self.interval_of(x).expect("clamped into domain");
        self.eval_on(j, x)
    }

    /// Value of interval `j`'s cubic at `x`. `x` is not range checked, so
    /// this also gives one-sided limits at the interval ends.
    pub fn eval_on(&self, j: usize, x: f64) -> f64 {
        let (l, r, n) = (self.grids.tau[j], self.grids.tau[j + 1], self.grids.x[j]);
        self.phi[j] * ((x - n) * (x - r) / ((l - n) * (l - r)))
            + self.phi[j + 1] * ((x - n) * (x - l) / ((r - n) * (r - l)))
            + self.grids.f[j] * ((x - r) * (x - l) / ((n - r) * (n - l)))
            + self.q[j] * (x - l) * (x - r) * (x - n)
    }

    /// First derivative of interval `j`'s cubic at `x`.
    pub fn deriv_on(&self, j: usize, x: f64) -> f64 {
        let (l, r, n) = (self.grids.tau[j], self.grids.tau[j + 1], self.grids.x[j]);
        self.phi[j] * ((x - n) + (x - r)) / ((l - n) * (l - r))
            + self.phi[j + 1] * ((x - n) + (x - l)) / ((r - n) * (r - l))
            + self.grids.f[j] * ((x - r) + (x - l)) / ((n - r) * (n - l))
            + self.q[j] * ((x - n) * ((x - l) + (x - r)) + (x - l) * (x - r))
    }

    /// Power-basis coefficients `[c0, c1, c2, c3]` of interval `j` in the
    /// local variable `s = x - tau[j]`.
    pub fn power_coefficients(&self, j: usize) -> [f64; 4] {
        let h = self.grids.h[j];
        let d = self.grids.x[j] - self.grids.tau[j];
        let (pl, pr, f, q) = (self.phi[j], self.phi[j + 1], self.grids.f[j], self.q[j]);
        let wl = 1.0 / (d * h);
        let wr = 1.0 / ((h - d) * h);
        let wn = 1.0 / ((d - h) * d);
        [
            pl,
            -pl * (d + h) * wl - pr * d * wr - f * h * wn + q * h * d,
            pl * wl + pr * wr + f * wn - q * (h + d),
            q,
        ]
    }

    /// The constant third derivative of interval `j`.
    pub fn third_derivative(&self, j: usize) -> f64 {
        6.0 * self.q[j]
    }

    /// `count` uniformly spaced points on `[a, b]`, optionally merged with
    /// every spline node and interior node.
    pub fn sample(&self, count: usize, include_nodes: bool) -> Result<Vec<(f64, f64)>> {
        if count < 2 {
            return Err(SplineError::SampleCount(count));
        }
        let mut xs = uniform_grid(self.domain(), count);
        if include_nodes {
            xs.extend_from_slice(self.tau());
            xs.extend_from_slice(self.grids.x());
            xs.sort_by(f64::total_cmp);
            xs.dedup();
        }
        xs.into_iter().map(|x| Ok((x, self.eval(x)?))).collect()
    }

    /// Derivative jump `|S'(tau - 0) - S'(tau + 0)|` at each interior node.
    pub fn c1_residuals(&self) -> Vec<f64> {
        (1..self.tau().len() - 1)
            .map(|k| {
                let t = self.grids.tau[k];
                (self.deriv_on(k - 1, t) - self.deriv_on(k, t)).abs()
            })
            .collect()
    }

    /// `|S(x_j) - f_j|` for each interior node.
    pub fn value_residuals(&self) -> Vec<f64> {
        (0..self.intervals())
            .map(|j| (self.eval_on(j, self.grids.x[j]) - self.grids.f[j]).abs())
            .collect()
    }

    /// `|S'(x_j) - fp_j|` for each interior node.
    pub fn slope_residuals(&self) -> Vec<f64> {
        (0..self.intervals())
            .map(|j| (self.deriv_on(j, self.grids.x[j]) - self.grids.fp[j]).abs())
            .collect()
    }
}

pub(crate) fn uniform_grid((a, b): (f64, f64), count: usize) -> Vec<f64> {
    let last = count - 1;
    (0..count)
        .map(|k| {
            if k == last {
                b
            } else {
                a + (b - a) * (k as f64 / last as f64)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn tent() -> SplineCurve {
        let control = ControlPolygon::new(vec![0.0, 1.0, 2.0], vec![0.0, 1.0, 0.0]).unwrap();
        build_spline(&control, &NodePlacement::midpoint(2)).unwrap()
    }

    #[test]
    fn tent_matches_symmetric_oracle() {
        let s = tent();
        assert_abs_diff_eq!(s.eval(1.0).unwrap(), 0.8, epsilon = 1e-12);
        assert_abs_diff_eq!(s.eval_deriv(1.0).unwrap(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(s.eval(0.25).unwrap(), 0.2375, epsilon = 1e-12);
        assert_abs_diff_eq!(s.q()[0], -0.8, epsilon = 1e-12);
        assert_abs_diff_eq!(s.q()[1], 0.8, epsilon = 1e-12);
    }

    #[test]
    fn tent_power_coefficients() {
        let s = tent();
        let c = s.power_coefficients(0);
        for (got, want) in c.iter().zip([0.0, 0.8, 0.8, -0.8]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(s.third_derivative(0), -4.8, epsilon = 1e-12);
    }

    #[test]
    fn endpoints_and_nodes_interpolate() {
        let control = ControlPolygon::new(
            vec![0.0, 0.7, 1.1, 3.0, 3.2],
            vec![2.0, -1.0, 5.0, 4.0, -3.0],
        )
        .unwrap();
        let placement = NodePlacement::new(vec![0.4, 0.5, 0.6, 0.35]).unwrap();
        let s = build_spline(&control, &placement).unwrap();
        assert_eq!(s.eval(0.0).unwrap(), 2.0);
        assert_eq!(s.eval(3.2).unwrap(), -3.0);
        for j in 0..s.intervals() {
            let x = s.grids().x()[j];
            assert_abs_diff_eq!(s.eval(x).unwrap(), s.grids().f()[j], epsilon = 1e-12);
            assert_abs_diff_eq!(s.eval_deriv(x).unwrap(), s.grids().fp()[j], epsilon = 1e-11);
        }
        assert!(s.c1_residuals().iter().all(|r| *r < 1e-11));
    }

    #[test]
    fn pieces_agree_at_shared_nodes() {
        let control =
            ControlPolygon::new(vec![0.0, 0.3, 1.7, 2.0], vec![0.1, 0.9, -0.4, 0.2]).unwrap();
        let s = build_spline(&control, &NodePlacement::midpoint(3)).unwrap();
        for k in 1..3 {
            let t = s.tau()[k];
            let left = s.eval_on(k - 1, t);
            let right = s.eval_on(k, t);
            assert!((left - right).abs() <= 4.0 * f64::EPSILON * left.abs().max(f64::MIN_POSITIVE));
            assert_eq!(right, s.phi()[k]);
        }
    }

    #[test]
    fn two_points_give_the_segment() {
        let control = ControlPolygon::new(vec![1.0, 4.0], vec![2.0, 8.0]).unwrap();
        let s = build_spline(&control, &NodePlacement::midpoint(1)).unwrap();
        assert_abs_diff_eq!(s.q()[0], 0.0, epsilon = 1e-14);
        for k in 0..=30 {
            let x = 1.0 + 3.0 * f64::from(k) / 30.0;
            assert_abs_diff_eq!(s.eval(x).unwrap(), 2.0 * x, epsilon = 1e-13);
        }
    }

    #[test]
    fn outside_domain_is_an_error() {
        let s = tent();
        assert!(matches!(s.eval(-0.1), Err(SplineError::OutOfDomain { .. })));
        assert!(matches!(
            s.eval_deriv(2.5),
            Err(SplineError::OutOfDomain { .. })
        ));
        assert!(s.eval(f64::NAN).is_err());
        assert_eq!(s.eval_clamped(-5.0), 0.0);
        assert_eq!(s.eval_clamped(5.0), 0.0);
    }

    #[test]
    fn interval_lookup_ties_go_right() {
        let s = tent();
        assert_eq!(s.interval_of(0.0).unwrap(), 0);
        assert_eq!(s.interval_of(1.0).unwrap(), 1);
        assert_eq!(s.interval_of(2.0).unwrap(), 1);
    }

    #[test]
    fn sampling() {
        let s = tent();
        assert_eq!(s.sample(2, false).unwrap(), vec![(0.0, 0.0), (2.0, 0.0)]);
        let three = s.sample(3, false).unwrap();
        assert_eq!(three[1].0, 1.0);
        assert_abs_diff_eq!(three[1].1, 0.8, epsilon = 1e-12);
        let with_nodes = s.sample(4, true).unwrap();
        let xs: Vec<f64> = with_nodes.iter().map(|p| p.0).collect();
        assert!(xs.contains(&0.5) && xs.contains(&1.0) && xs.contains(&1.5));
        assert!(xs.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(s.sample(1, false).unwrap_err(), SplineError::SampleCount(1));
    }

    #[test]
    fn relaxed_placement_still_builds() {
        let control =
            ControlPolygon::new(vec![0.0, 1.0, 2.0, 3.0], vec![0.0, 1.0, 0.0, 1.0]).unwrap();
        let placement = NodePlacement::with_mode(vec![0.9, 0.1, 0.9], false).unwrap();
        let s = build_spline(&control, &placement).unwrap();
        assert!(s.c1_residuals().iter().all(|r| *r < 1e-9));
    }
}
