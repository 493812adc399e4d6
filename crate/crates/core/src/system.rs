//! The tridiagonal system for the node values `phi` and its solver.

use serde::Serialize;

use crate::error::{Result, SplineError};
use crate::grid::SplineGrids;

/// A tridiagonal linear system. Row `k` reads
/// `sub[k] * phi[k-1] + diag[k] * phi[k] + sup[k] * phi[k+1] = rhs[k]`;
/// `sub[0]` and `sup[n-1]` are ignored and kept at zero.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TridiagonalSystem {
    pub sub: Vec<f64>,
    pub diag: Vec<f64>,
    pub sup: Vec<f64>,
    pub rhs: Vec<f64>,
}

impl TridiagonalSystem {
    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    fn check_shape(&self) -> Result<()> {
        let n = self.diag.len();
        if n == 0 || self.sub.len() != n || self.sup.len() != n || self.rhs.len() != n {
            return Err(SplineError::SystemShape);
        }
        Ok(())
    }

    /// `M * v` for the matrix part of the system.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|k| {
                let mut acc = self.diag[k] * v[k];
                if k > 0 {
                    acc += self.sub[k] * v[k - 1];
                }
                if k + 1 < n {
                    acc += self.sup[k] * v[k + 1];
                }
                acc
            })
            .collect()
    }

    /// Infinity norm of the matrix (max absolute row sum).
    pub fn norm_inf(&self) -> f64 {
        (0..self.len())
            .map(|k| self.sub[k].abs() + self.diag[k].abs() + self.sup[k].abs())
            .fold(0.0, f64::max)
    }
}

/// Coefficients of one interior row, `A phi[k-1] - (B1 + B2) phi[k] + C phi[k+1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RowCoefficients {
    pub a: f64,
    pub b1: f64,
    pub b2: f64,
    pub c: f64,
}

impl RowCoefficients {
    /// Coefficients for the node shared by a left interval `(h1, mu1)` and a
    /// right interval `(h2, mu2)`.
    pub fn new(h1: f64, mu1: f64, h2: f64, mu2: f64) -> Self {
        let l1 = h1 - mu1;
        let l2 = h2 - mu2;
        Self {
            a: mu1 * mu1 / (l1 * l1 * h1),
            b1: (2.0 * h1 + mu1) / (mu1 * h1),
            b2: (3.0 * h2 - mu2) / (l2 * h2),
            c: l2 * l2 / (h2 * mu2 * mu2),
        }
    }
}

/// Right-hand side of the C1 matching equation at an interior node.
///
/// `f1`, `mu1`, `h1` describe the interval to the left of the node and
/// `f2`, `mu2`, `h2` the one to the right; `left`, `mid`, `right` are the
/// three control ordinates involved.
#[allow(clippy::too_many_arguments)]
fn row_rhs(
    (h1, mu1, f1): (f64, f64, f64),
    (h2, mu2, f2): (f64, f64, f64),
    left: f64,
    mid: f64,
    right: f64,
) -> f64 {
    let l1 = h1 - mu1;
    let l2 = h2 - mu2;
    let from_left =
        -f1 * h1 / (l1 * mu1) - f1 * (h1 - 2.0 * mu1) * h1 / (l1 * l1 * mu1) - (mid - left) / l1;
    // The right-interval terms enter with the opposite sign to the left ones:
    // they come from S'(tau + 0), which sits on the other side of the equation.
    let from_right =
        -f2 * h2 / (l2 * mu2) + f2 * (h2 - 2.0 * mu2) * h2 / (l2 * mu2 * mu2) + (right - mid) / mu2;
    from_left + from_right
}

/// Assemble the system for the node values. Rows `0` and `n-1` pin the
/// curve to the first and last control ordinates.
pub fn assemble_system(grids: &SplineGrids) -> TridiagonalSystem {
    let n = grids.len();
    let mut sub = vec![0.0; n];
    let mut diag = vec![1.0; n];
    let mut sup = vec![0.0; n];
    let mut rhs = vec![0.0; n];
    rhs[0] = grids.values[0];
    rhs[n - 1] = grids.values[n - 1];

    for k in 1..n - 1 {
        let (h1, mu1) = (grids.h[k - 1], grids.mu[k - 1]);
        let (h2, mu2) = (grids.h[k], grids.mu[k]);
        let row = RowCoefficients::new(h1, mu1, h2, mu2);
        sub[k] = row.a;
        diag[k] = -(row.b1 + row.b2);
        sup[k] = row.c;
        rhs[k] = row_rhs(
            (h1, mu1, grids.f[k - 1]),
            (h2, mu2, grids.f[k]),
            grids.values[k - 1],
            grids.values[k],
            grids.values[k + 1],
        );
    }

    TridiagonalSystem {
        sub,
        diag,
        sup,
        rhs,
    }
}

/// `|diag| - |sub| - |sup|` for every row.
pub fn check_dominance(system: &TridiagonalSystem) -> Vec<f64> {
    (0..system.len())
        .map(|k| system.diag[k].abs() - system.sub[k].abs() - system.sup[k].abs())
        .collect()
}

/// Thomas elimination without pivoting. Stable for diagonally dominant
/// systems; otherwise reports the first zero pivot.
pub fn solve_tridiagonal(system: &TridiagonalSystem) -> Result<Vec<f64>> {
    system.check_shape()?;
    let n = system.len();
    let mut upper = vec![0.0; n];
    let mut y = vec![0.0; n];

    let mut pivot = system.diag[0];
    for k in 0..n {
        if k > 0 {
            pivot = system.diag[k] - system.sub[k] * upper[k - 1];
        }
        if pivot == 0.0 || !pivot.is_finite() {
            return Err(SplineError::SingularPivot { row: k });
        }
        let carried = if k > 0 { system.sub[k] * y[k - 1] } else { 0.0 };
        upper[k] = if k + 1 < n {
            system.sup[k] / pivot
        } else {
            0.0
        };
        y[k] = (system.rhs[k] - carried) / pivot;
    }

    for k in (0..n - 1).rev() {
        y[k] -= upper[k] * y[k + 1];
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{build_grids, ControlPolygon, NodePlacement};
    use approx::assert_abs_diff_eq;

    fn system_for(tau: Vec<f64>, values: Vec<f64>, alpha: f64) -> TridiagonalSystem {
        let n = tau.len();
        let control = ControlPolygon::new(tau, values).unwrap();
        let placement = NodePlacement::with_mode(vec![alpha; n - 1], false).unwrap();
        assemble_system(&build_grids(&control, &placement).unwrap())
    }

    #[test]
    fn midpoint_row_coefficients() {
        let s = system_for(vec![0.0, 1.0, 2.0], vec![0.0; 3], 0.5);
        assert_abs_diff_eq!(s.sub[1], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(s.diag[1], -10.0, epsilon = 1e-14);
        assert_abs_diff_eq!(s.sup[1], 1.0, epsilon = 1e-14);
    }

    #[test]
    fn one_third_row_coefficients() {
        let row = RowCoefficients::new(1.0, 1.0 / 3.0, 1.0, 1.0 / 3.0);
        assert_abs_diff_eq!(row.a, 0.25, epsilon = 1e-14);
        assert_abs_diff_eq!(row.b1, 7.0, epsilon = 1e-14);
        assert_abs_diff_eq!(row.b2, 4.0, epsilon = 1e-14);
        assert_abs_diff_eq!(row.c, 4.0, epsilon = 1e-14);
        assert!(row.b1 > row.a);
    }

    #[test]
    fn two_thirds_row_is_still_dominant() {
        let row = RowCoefficients::new(1.0, 2.0 / 3.0, 1.0, 2.0 / 3.0);
        assert_abs_diff_eq!(row.b1, row.a, epsilon = 1e-12);
        assert!(row.b2 > row.c);
        assert!(row.b1 + row.b2 > row.a + row.c);
    }

    #[test]
    fn boundary_rows_pin_end_values() {
        let s = system_for(
            (1..=11).map(f64::from).collect(),
            vec![1.0, 3.0, 3.0, 1.0, 2.0, 7.0, 1.5, 1.0, 10.0, 2.0, 1.5],
            0.5,
        );
        assert_eq!(
            (s.sub[0], s.diag[0], s.sup[0], s.rhs[0]),
            (0.0, 1.0, 0.0, 1.0)
        );
        assert_eq!(
            (s.sub[10], s.diag[10], s.sup[10], s.rhs[10]),
            (0.0, 1.0, 0.0, 1.5)
        );
    }

    #[test]
    fn two_points_give_boundary_only_system() {
        let s = system_for(vec![0.0, 1.0], vec![2.0, 5.0], 0.5);
        assert_eq!(s.diag, vec![1.0, 1.0]);
        assert_eq!(s.rhs, vec![2.0, 5.0]);
        assert_eq!(solve_tridiagonal(&s).unwrap(), vec![2.0, 5.0]);
    }

    #[test]
    fn dominance_margins() {
        let s = system_for(vec![0.0, 1.0, 2.0], vec![0.0; 3], 0.5);
        let m = check_dominance(&s);
        assert_eq!(m[0], 1.0);
        assert_abs_diff_eq!(m[1], 8.0, epsilon = 1e-13);
        assert_eq!(m[2], 1.0);
    }

    #[test]
    fn identity_solve() {
        let s = TridiagonalSystem {
            sub: vec![0.0, 0.0],
            diag: vec![1.0, 1.0],
            sup: vec![0.0, 0.0],
            rhs: vec![3.0, 7.0],
        };
        assert_eq!(solve_tridiagonal(&s).unwrap(), vec![3.0, 7.0]);
    }

    #[test]
    fn tent_system_solves_to_oracle() {
        let s = system_for(vec![0.0, 1.0, 2.0], vec![0.0, 1.0, 0.0], 0.5);
        let phi = solve_tridiagonal(&s).unwrap();
        assert_abs_diff_eq!(phi[0], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(phi[1], 0.8, epsilon = 1e-12);
        assert_abs_diff_eq!(phi[2], 0.0, epsilon = 1e-12);
    }

    #[test]
    fn zero_pivot_is_reported() {
        let s = TridiagonalSystem {
            sub: vec![0.0, 1.0, 0.0],
            diag: vec![1.0, 1.0, 1.0],
            sup: vec![1.0, 0.0, 0.0],
            rhs: vec![1.0, 1.0, 1.0],
        };
        assert_eq!(
            solve_tridiagonal(&s).unwrap_err(),
            SplineError::SingularPivot { row: 1 }
        );
    }

    #[test]
    fn inconsistent_shape_is_rejected() {
        let s = TridiagonalSystem {
            sub: vec![0.0],
            diag: vec![1.0, 1.0],
            sup: vec![0.0, 0.0],
            rhs: vec![1.0, 1.0],
        };
        assert_eq!(solve_tridiagonal(&s).unwrap_err(), SplineError::SystemShape);
    }
}
