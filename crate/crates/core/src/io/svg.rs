//! SVG 1.1 figures: control points as dots, the control polygon dashed and
//! the sampled curve as a solid path.

use std::fmt::Write;

#[derive(Debug, Clone, PartialEq)]
pub struct SvgOptions {
    pub width: f64,
    pub height: f64,
    /// Fraction of the data extent added on every side.
    pub margin: f64,
    pub dot_radius: f64,
    pub curve_width: f64,
    pub polygon_width: f64,
    pub dash: String,
    pub title: Option<String>,
}

impl Default for SvgOptions {
    fn default() -> Self {
        Self {
            width: 800.0,
            height: 600.0,
            margin: 0.05,
            dot_radius: 4.0,
            curve_width: 2.0,
            polygon_width: 1.0,
            dash: "6 4".to_string(),
            title: None,
        }
    }
}

/// Maps data coordinates into the canvas; y grows upwards in data space.
struct Frame {
    x0: f64,
    y0: f64,
    sx: f64,
    sy: f64,
    height: f64,
}

impl Frame {
    fn fit(points: impl Iterator<Item = (f64, f64)>, opts: &SvgOptions) -> Self {
        let (mut xmin, mut xmax, mut ymin, mut ymax) = (
            f64::INFINITY,
            f64::NEG_INFINITY,
            f64::INFINITY,
            f64::NEG_INFINITY,
        );
        for (x, y) in points {
            xmin = xmin.min(x);
            xmax = xmax.max(x);
            ymin = ymin.min(y);
            ymax = ymax.max(y);
        }
        let span = |lo: f64, hi: f64| if hi > lo { hi - lo } else { 1.0 };
        let (w, h) = (span(xmin, xmax), span(ymin, ymax));
        let (x0, y0) = (xmin - opts.margin * w, ymin - opts.margin * h);
        let total_w = w * (1.0 + 2.0 * opts.margin);
        let total_h = h * (1.0 + 2.0 * opts.margin);
        Self {
            x0,
            y0,
            sx: opts.width / total_w,
            sy: opts.height / total_h,
            height: opts.height,
        }
    }

    fn map(&self, (x, y): (f64, f64)) -> (String, String) {
        (
            num((x - self.x0) * self.sx),
            num(self.height - (y - self.y0) * self.sy),
        )
    }
}

/// Two decimals, trailing zeros trimmed, no negative zero.
fn num(v: f64) -> String {
    let s = format!("{v:.2}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

pub fn write_svg(control: &[(f64, f64)], samples: &[(f64, f64)], opts: &SvgOptions) -> Vec<u8> {
    let frame = Frame::fit(control.iter().chain(samples).copied(), opts);
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">",
        w = num(opts.width),
        h = num(opts.height)
    );
    if let Some(title) = &opts.title {
        let _ = writeln!(out, "<title>{}</title>", escape(title));
    }

    let polygon: Vec<String> = control
        .iter()
        .map(|p| {
            let (x, y) = frame.map(*p);
            format!("{x},{y}")
        })
        .collect();
    let _ = writeln!(
        out,
        "<polyline class=\"control-polygon\" fill=\"none\" stroke=\"#000000\" stroke-width=\"{}\" stroke-dasharray=\"{}\" points=\"{}\"/>",
        num(opts.polygon_width),
        opts.dash,
        polygon.join(" ")
    );

    let mut d = String::new();
    for (i, p) in samples.iter().enumerate() {
        let (x, y) = frame.map(*p);
        let _ = write!(d, "{}{x} {y}", if i == 0 { "M" } else { " L" });
    }
    let _ = writeln!(
        out,
        "<path class=\"curve\" fill=\"none\" stroke=\"#000000\" stroke-width=\"{}\" d=\"{d}\"/>",
        num(opts.curve_width)
    );

    for p in control {
        let (x, y) = frame.map(*p);
        let _ = writeln!(
            out,
            "<circle class=\"control-point\" cx=\"{x}\" cy=\"{y}\" r=\"{}\" fill=\"#000000\"/>",
            num(opts.dot_radius)
        );
    }
    out.push_str("</svg>\n");
    out.into_bytes()
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_interval_figure() {
        let control = [(0.0, 0.0), (1.0, 1.0)];
        let samples = [(0.0, 0.0), (0.5, 0.5), (1.0, 1.0)];
        let svg = String::from_utf8(write_svg(&control, &samples, &SvgOptions::default())).unwrap();
        assert_eq!(svg.matches("<circle").count(), 2);
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert_eq!(svg.matches("<path").count(), 1);
        assert!(svg.contains("stroke-dasharray=\"6 4\""));
        // 5% margin on each side: x offset 800 * 0.05 / 1.1, y offset 600 * 0.05 / 1.1
        assert!(svg.contains("cx=\"36.36\" cy=\"572.73\""));
        assert!(svg.contains("cx=\"763.64\" cy=\"27.27\""));
    }

    #[test]
    fn deterministic_and_flat_data_safe() {
        let control = [(0.0, 2.0), (1.0, 2.0), (2.0, 2.0)];
        let a = write_svg(&control, &control, &SvgOptions::default());
        let b = write_svg(&control, &control, &SvgOptions::default());
        assert_eq!(a, b);
        let svg = String::from_utf8(a).unwrap();
        assert!(!svg.contains("NaN") && !svg.contains("inf"));
    }

    #[test]
    fn title_is_escaped() {
        let opts = SvgOptions {
            title: Some("a < b & c".into()),
            ..SvgOptions::default()
        };
        let svg = String::from_utf8(write_svg(&[(0.0, 0.0), (1.0, 1.0)], &[], &opts)).unwrap();
        assert!(svg.contains("<title>a &lt; b &amp; c</title>"));
    }

    #[test]
    fn number_format() {
        assert_eq!(num(1.0), "1");
        assert_eq!(num(-0.001), "0");
        assert_eq!(num(12.346), "12.35");
        assert_eq!(num(800.0), "800");
        assert_eq!(num(0.5), "0.5");
    }
}
