//! Sample tables. CSV uses a mandatory header, `,` separators and LF line
//! endings; numbers use the shortest decimal form that parses back to the
//! same `f64`.

use super::document::{ErrorCode, Format, InputError, Violation};

pub fn write_samples(samples: &[(f64, f64)], format: Format) -> Vec<u8> {
    match format {
        Format::Csv => {
            let mut out = String::from("x,y\n");
            for (x, y) in samples {
                out.push_str(&format!("{x},{y}\n"));
            }
            out.into_bytes()
        }
        Format::Json => json_lines(samples.iter().map(|(x, y)| vec![*x, *y])),
    }
}

pub fn write_parametric_samples(samples: &[(f64, f64, f64)], format: Format) -> Vec<u8> {
    match format {
        Format::Csv => {
            let mut out = String::from("t,x,y\n");
            for (t, x, y) in samples {
                out.push_str(&format!("{t},{x},{y}\n"));
            }
            out.into_bytes()
        }
        Format::Json => json_lines(samples.iter().map(|(t, x, y)| vec![*t, *x, *y])),
    }
}

/// A JSON array of rows, one row per line.
fn json_lines(rows: impl Iterator<Item = Vec<f64>>) -> Vec<u8> {
    let rows: Vec<String> = rows
        .map(|r| serde_json::to_string(&r).expect("finite samples serialize"))
        .collect();
    if rows.is_empty() {
        return b"[]\n".to_vec();
    }
    format!("[\n{}\n]\n", rows.join(",\n")).into_bytes()
}

/// Parse a table written by [`write_samples`].
pub fn parse_samples(bytes: &[u8], format: Format) -> Result<Vec<(f64, f64)>, InputError> {
    let fail = |msg: String, line: Option<usize>| InputError {
        violations: vec![Violation {
            code: ErrorCode::Syntax,
            path: String::new(),
            line,
            column: None,
            message: msg,
        }],
    };
    match format {
        Format::Json => {
            let rows: Vec<(f64, f64)> =
                serde_json::from_slice(bytes).map_err(|e| fail(e.to_string(), Some(e.line())))?;
            Ok(rows)
        }
        Format::Csv => {
            let text = std::str::from_utf8(bytes).map_err(|e| fail(e.to_string(), None))?;
            let mut lines = text.lines().enumerate();
            match lines.next() {
                Some((_, "x,y")) => {}
                other => {
                    return Err(fail(
                        format!("expected header `x,y`, got {:?}", other.map(|l| l.1)),
                        Some(1),
                    ))
                }
            }
            lines
                .map(|(i, line)| {
                    let parsed = line
                        .split_once(',')
                        .and_then(|(a, b)| Some((a.parse().ok()?, b.parse().ok()?)));
                    parsed.ok_or_else(|| fail(format!("bad sample row `{line}`"), Some(i + 1)))
                })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn csv_header_is_exact() {
        assert_eq!(write_samples(&[(0.0, 1.0)], Format::Csv), b"x,y\n0,1\n");
        assert_eq!(
            write_parametric_samples(&[(0.5, 0.0, -1.25)], Format::Csv),
            b"t,x,y\n0.5,0,-1.25\n"
        );
    }

    #[test]
    fn json_layout() {
        assert_eq!(
            write_samples(&[(0.0, 1.0), (0.5, 0.25)], Format::Json),
            b"[\n[0.0,1.0],\n[0.5,0.25]\n]\n"
        );
        assert_eq!(write_samples(&[], Format::Json), b"[]\n");
    }

    #[test]
    fn rejects_foreign_tables() {
        assert!(parse_samples(b"a,b\n1,2\n", Format::Csv).is_err());
        assert!(parse_samples(b"x,y\n1;2\n", Format::Csv).is_err());
    }

    proptest! {
        #[test]
        fn round_trip_is_bitwise(
            rows in prop::collection::vec((-1e300f64..1e300, prop::num::f64::NORMAL | prop::num::f64::SUBNORMAL | prop::num::f64::ZERO), 1..20)
        ) {
            for format in [Format::Csv, Format::Json] {
                let back = parse_samples(&write_samples(&rows, format), format).unwrap();
                prop_assert_eq!(back.len(), rows.len());
                for (a, b) in back.iter().zip(&rows) {
                    prop_assert_eq!(a.0.to_bits(), b.0.to_bits());
                    prop_assert_eq!(a.1.to_bits(), b.1.to_bits());
                }
            }
        }
    }
}
