//! Deterministic workloads shared by the benchmarks.

use bezier_spline::{ControlPolygon, NodePlacement};

/// `n` control points on an uneven grid with oscillating ordinates.
pub fn control_polygon(n: usize) -> ControlPolygon {
    let mut tau = Vec::with_capacity(n);
    let mut t = 0.0;
    for i in 0..n {
        tau.push(t);
        t += 0.5 + 0.4 * ((i as f64) * 0.7).sin().abs();
    }
    let values = tau
        .iter()
        .map(|t| (t * 1.3).sin() * 5.0 + (t * 0.17).cos())
        .collect();
    ControlPolygon::new(tau, values).expect("workload is valid")
}

/// Interval ratios cycling through the strict range.
pub fn placement(n: usize) -> NodePlacement {
    let alpha = (0..n - 1)
        .map(|j| 1.0 / 3.0 + (j % 7) as f64 / 18.0)
        .collect();
    NodePlacement::new(alpha).expect("ratios are in range")
}
