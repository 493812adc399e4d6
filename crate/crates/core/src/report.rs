//! One-shot evaluation of an input document into a serializable report.
//! The command line `build` output and the HTTP response share this shape.

use serde::Serialize;

use crate::curve::build_spline;
use crate::diagnostics::Diagnostics;
use crate::error::Result;
use crate::hull::convex_hull;
use crate::io::InputDocument;
use crate::parametric::{build_parametric, sample_parametric, ParametricDiagnostics};

/// Sample count used when a document does not name one.
pub const DEFAULT_SAMPLES: usize = 1000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalarReport {
    pub tau: Vec<f64>,
    /// Interior interpolation nodes.
    pub x: Vec<f64>,
    pub phi: Vec<f64>,
    pub q: Vec<f64>,
    pub alpha: Vec<f64>,
    pub samples: Vec<(f64, f64)>,
    /// Convex hull of the control points, counter-clockwise.
    pub hull: Vec<(f64, f64)>,
    pub diagnostics: Diagnostics,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParametricReport {
    pub t: Vec<f64>,
    /// Interior parameter nodes.
    pub x: Vec<f64>,
    /// Curve points at the interior parameter nodes.
    pub node_points: Vec<(f64, f64)>,
    /// Node values as `[x, y]` pairs.
    pub phi: Vec<[f64; 2]>,
    pub q: Vec<[f64; 2]>,
    pub alpha: Vec<f64>,
    /// `(t, x, y)` triples.
    pub samples: Vec<(f64, f64, f64)>,
    /// Convex hull of the control points, counter-clockwise.
    pub hull: Vec<(f64, f64)>,
    pub diagnostics: ParametricDiagnostics,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum SplineReport {
    Scalar(ScalarReport),
    Parametric(ParametricReport),
}

fn warnings(alpha: &[f64], strict: bool) -> Vec<String> {
    if strict {
        return Vec::new();
    }
    alpha
        .iter()
        .enumerate()
        .filter(|(_, a)| !crate::grid::in_strict_range(**a))
        .map(|(j, a)| {
            format!("alpha[{j}]={a} outside [1/3, 2/3]: diagonal dominance is not guaranteed")
        })
        .collect()
}

fn zip_pairs(a: &[f64], b: &[f64]) -> Vec<[f64; 2]> {
    a.iter().zip(b).map(|(x, y)| [*x, *y]).collect()
}

/// Build, sample and diagnose the curve described by `doc`.
pub fn evaluate(doc: &InputDocument) -> Result<SplineReport> {
    let count = doc.samples().unwrap_or(DEFAULT_SAMPLES);
    let include_nodes = doc.include_nodes().unwrap_or(false);
    match doc {
        InputDocument::Scalar(d) => {
            let placement = d.placement()?;
            let curve = build_spline(&d.control_polygon()?, &placement)?;
            let samples = curve.sample(count, include_nodes)?;
            let diagnostics = Diagnostics::new(&curve, &samples);
            Ok(SplineReport::Scalar(ScalarReport {
                tau: curve.tau().to_vec(),
                x: curve.grids().x().to_vec(),
                phi: curve.phi().to_vec(),
                q: curve.q().to_vec(),
                alpha: curve.alpha().to_vec(),
                samples,
                hull: convex_hull(&curve.control_points()),
                diagnostics,
                warnings: warnings(placement.alpha(), placement.is_strict()),
            }))
        }
        InputDocument::Parametric(d) => {
            let placement = d.placement()?;
            let curve = build_parametric(&d.control_points()?, &placement, d.parameterization)?;
            let samples = sample_parametric(&curve, count)?;
            let diagnostics = ParametricDiagnostics::new(&curve, &samples);
            let (sx, sy) = (curve.x_spline(), curve.y_spline());
            Ok(SplineReport::Parametric(ParametricReport {
                t: curve.t().to_vec(),
                x: sx.grids().x().to_vec(),
                node_points: curve.node_points(),
                phi: zip_pairs(sx.phi(), sy.phi()),
                q: zip_pairs(sx.q(), sy.q()),
                alpha: sx.alpha().to_vec(),
                samples,
                hull: convex_hull(&curve.control_points()),
                diagnostics,
                warnings: warnings(placement.alpha(), placement.is_strict()),
            }))
        }
    }
}
