//! Test-only oracles. Nothing here calls into the assembly or solver code
//! paths of the library.
#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use rand::Rng;

/// Per-interval power-basis coefficients `[c0, c1, c2, c3]` in `s = x - tau[j]`
/// obtained by solving the complete constraint set densely:
/// value and slope of the control segment at each interior node, continuity
/// of value and first derivative at interior spline nodes, and the curve
/// pinned to the first and last control points.
pub fn dense_oracle(tau: &[f64], values: &[f64], alpha: &[f64]) -> Vec<[f64; 4]> {
    let n = tau.len();
    let m = n - 1;
    let size = 4 * m;
    let mut a = DMatrix::<f64>::zeros(size, size);
    let mut b = DVector::<f64>::zeros(size);
    let mut row = 0;

    let value_row = |s: f64| [1.0, s, s * s, s * s * s];
    let slope_row = |s: f64| [0.0, 1.0, 2.0 * s, 3.0 * s * s];

    for j in 0..m {
        let h = tau[j + 1] - tau[j];
        let node = tau[j + 1] - alpha[j] * h;
        let d = node - tau[j];
        let slope = (values[j + 1] - values[j]) / h;
        let chord = values[j] + slope * d;
        for (k, c) in value_row(d).iter().enumerate() {
            a[(row, 4 * j + k)] = *c;
        }
        b[row] = chord;
        row += 1;
        for (k, c) in slope_row(d).iter().enumerate() {
            a[(row, 4 * j + k)] = *c;
        }
        b[row] = slope;
        row += 1;
    }
    for j in 0..m - 1 {
        let h = tau[j + 1] - tau[j];
        for (k, c) in value_row(h).iter().enumerate() {
            a[(row, 4 * j + k)] = *c;
        }
        a[(row, 4 * (j + 1))] = -1.0;
        row += 1;
        for (k, c) in slope_row(h).iter().enumerate() {
            a[(row, 4 * j + k)] = *c;
        }
        a[(row, 4 * (j + 1) + 1)] = -1.0;
        row += 1;
    }
    a[(row, 0)] = 1.0;
    b[row] = values[0];
    row += 1;
    let h_last = tau[n - 1] - tau[n - 2];
    for (k, c) in value_row(h_last).iter().enumerate() {
        a[(row, 4 * (m - 1) + k)] = *c;
    }
    b[row] = values[n - 1];
    row += 1;
    assert_eq!(row, size);

    let sol = a.lu().solve(&b).expect("oracle system is nonsingular");
    (0..m)
        .map(|j| [sol[4 * j], sol[4 * j + 1], sol[4 * j + 2], sol[4 * j + 3]])
        .collect()
}

/// Evaluate oracle coefficients at `x`.
pub fn eval_power(tau: &[f64], coeffs: &[[f64; 4]], x: f64) -> f64 {
    let j = tau
        .partition_point(|&t| t <= x)
        .saturating_sub(1)
        .min(coeffs.len() - 1);
    let s = x - tau[j];
    let c = coeffs[j];
    ((c[3] * s + c[2]) * s + c[1]) * s + c[0]
}

/// Dense Gaussian elimination with partial pivoting on a tridiagonal
/// system given as full rows.
pub fn dense_solve(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut a = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        a[(k, k)] = diag[k];
        if k > 0 {
            a[(k, k - 1)] = sub[k];
        }
        if k + 1 < n {
            a[(k, k + 1)] = sup[k];
        }
    }
    let b = DVector::from_column_slice(rhs);
    a.lu()
        .solve(&b)
        .expect("nonsingular")
        .iter()
        .copied()
        .collect()
}

/// Random strictly increasing grid with `n` points and uneven spacing.
pub fn random_grid(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    let mut t = rng.random_range(-10.0..10.0);
    let mut tau = Vec::with_capacity(n);
    for _ in 0..n {
        tau.push(t);
        t += rng.random_range(0.05..3.0);
    }
    tau
}

pub fn random_values(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-10.0..10.0)).collect()
}

pub fn random_alpha(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    (0..n - 1)
        .map(|_| rng.random_range((1.0 / 3.0)..=(2.0 / 3.0)))
        .collect()
}

pub fn scale(tau: &[f64], values: &[f64]) -> f64 {
    values
        .iter()
        .fold(1.0_f64.max(tau[tau.len() - 1] - tau[0]), |acc, v| {
            acc.max(v.abs())
        })
}
