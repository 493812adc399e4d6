//! A C1 piecewise cubic curve of Bézier type.
//!
//! Given control points `(tau_i, F_i)`, each control-polygon segment is
//! made tangent to the curve at an interior node `x_i` of its interval: the
//! curve takes the segment's value and slope there. The curve values `phi_i`
//! at the control abscissae follow from a tridiagonal system that enforces
//! continuity of the first derivative, and the curve passes through the
//! first and last control points.
//!
//! ```
//! use bezier_spline::{build_spline, ControlPolygon, NodePlacement};
//!
//! let control = ControlPolygon::new(vec![0.0, 1.0, 2.0], vec![0.0, 1.0, 0.0])?;
//! let curve = build_spline(&control, &NodePlacement::midpoint(2))?;
//! assert!((curve.eval(1.0)? - 0.8).abs() < 1e-12);
//! # Ok::<(), bezier_spline::SplineError>(())
//! ```

pub mod curve;
pub mod datasets;
pub mod diagnostics;
pub mod error;
pub mod grid;
pub mod hull;
pub mod io;
pub mod parametric;
pub mod report;
pub mod system;

pub use curve::{build_spline, compute_q, SplineCurve};
pub use diagnostics::{Diagnostics, ResidualReport};
pub use error::{Result, SplineError};
pub use grid::{
    build_grids, ControlPolygon, NodePlacement, SplineGrids, DEFAULT_ALPHA, STRICT_ALPHA_MAX,
    STRICT_ALPHA_MIN,
};
pub use hull::{convex_hull, hull_check, Hull};
pub use parametric::{
    build_parametric, parameterize, sample_parametric, Parameterization, ParametricCurve,
    ParametricDiagnostics, PlanarControlPoints,
};
pub use report::{evaluate, SplineReport, DEFAULT_SAMPLES};
pub use system::{assemble_system, check_dominance, solve_tridiagonal, TridiagonalSystem};
