//! Input documents (JSON and CSV) with exhaustive, located validation.
//!
//! JSON documents are objects. A scalar document carries `tau` and `F`, a
//! parametric one carries `points` as `[x, y]` pairs; `mode` may name the
//! kind explicitly. Optional keys: `alpha` (number or per-interval array),
//! `strict`, `samples`, `include_nodes`, and for parametric input
//! `parameterization` (`chord` or `uniform`).
//!
//! CSV input has two numeric columns per row. A header row is optional:
//! `tau,F` or `x,y` marks scalar data, `px,py` marks planar points.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use thiserror::Error;

use crate::grid::{in_strict_range, ControlPolygon, NodePlacement, DEFAULT_ALPHA};
use crate::parametric::{Parameterization, PlanarControlPoints};

/// Largest accepted number of control points.
pub const MAX_POINTS: usize = 100_000;
/// Largest accepted sample count.
pub const MAX_SAMPLES: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            other => Err(format!("unknown format `{other}` (expected json or csv)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Scalar,
    Parametric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorCode {
    Syntax,
    Type,
    Missing,
    Arity,
    NonFinite,
    NonIncreasing,
    Coincident,
    AlphaDomain,
    AlphaRange,
    SampleCount,
    TooLarge,
    Mode,
}

impl ErrorCode {
    /// Stable snake_case name, identical to the serialized form.
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorCode::Syntax => "syntax",
            ErrorCode::Type => "type",
            ErrorCode::Missing => "missing",
            ErrorCode::Arity => "arity",
            ErrorCode::NonFinite => "non_finite",
            ErrorCode::NonIncreasing => "non_increasing",
            ErrorCode::Coincident => "coincident",
            ErrorCode::AlphaDomain => "alpha_domain",
            ErrorCode::AlphaRange => "alpha_range",
            ErrorCode::SampleCount => "sample_count",
            ErrorCode::TooLarge => "too_large",
            ErrorCode::Mode => "mode",
        }
    }
}

/// One violated rule, located by JSON pointer and, for text input, line.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub code: ErrorCode,
    pub path: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub column: Option<usize>,
    pub message: String,
}

impl Violation {
    fn new(code: ErrorCode, path: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            code,
            path: path.into(),
            line: None,
            column: None,
            message: message.into(),
        }
    }

    fn at_line(mut self, line: usize) -> Self {
        self.line = Some(line);
        self
    }
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.line, self.column) {
            (Some(l), Some(c)) => write!(f, "line {l}, column {c}: ")?,
            (Some(l), None) => write!(f, "line {l}: ")?,
            _ => {}
        }
        if !self.path.is_empty() {
            write!(f, "{}: ", self.path)?;
        }
        f.write_str(&self.message)
    }
}

/// All rule violations found in one input. Never empty.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("{}", .violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
pub struct InputError {
    pub violations: Vec<Violation>,
}

impl InputError {
    fn single(v: Violation) -> Self {
        Self {
            violations: vec![v],
        }
    }

    pub fn has_code(&self, code: ErrorCode) -> bool {
        self.violations.iter().any(|v| v.code == code)
    }
}

/// Interval ratios: one value for every interval, or one per interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlphaSpec {
    Uniform(f64),
    PerInterval(Vec<f64>),
}

impl AlphaSpec {
    pub fn expand(&self, intervals: usize) -> Vec<f64> {
        match self {
            AlphaSpec::Uniform(a) => vec![*a; intervals],
            AlphaSpec::PerInterval(v) => v.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalarInputDocument {
    pub tau: Vec<f64>,
    #[serde(rename = "F")]
    pub values: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<AlphaSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strict: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub include_nodes: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParametricInputDocument {
    pub points: Vec<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<AlphaSpec>,
    pub parameterization: Parameterization,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strict: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub include_nodes: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum InputDocument {
    Scalar(ScalarInputDocument),
    Parametric(ParametricInputDocument),
}

impl ScalarInputDocument {
    pub fn new(tau: Vec<f64>, values: Vec<f64>) -> Self {
        Self {
            tau,
            values,
            alpha: None,
            strict: None,
            samples: None,
            include_nodes: None,
        }
    }

    pub fn control_polygon(&self) -> crate::Result<ControlPolygon> {
        ControlPolygon::new(self.tau.clone(), self.values.clone())
    }

    pub fn placement(&self) -> crate::Result<NodePlacement> {
        placement(&self.alpha, self.strict, self.tau.len().saturating_sub(1))
    }
}

impl ParametricInputDocument {
    pub fn new(points: Vec<[f64; 2]>) -> Self {
        Self {
            points,
            alpha: None,
            parameterization: Parameterization::default(),
            strict: None,
            samples: None,
            include_nodes: None,
        }
    }

    pub fn control_points(&self) -> crate::Result<PlanarControlPoints> {
        PlanarControlPoints::new(self.points.iter().map(|p| (p[0], p[1])).collect())
    }

    pub fn placement(&self) -> crate::Result<NodePlacement> {
        placement(
            &self.alpha,
            self.strict,
            self.points.len().saturating_sub(1),
        )
    }
}

fn placement(
    alpha: &Option<AlphaSpec>,
    strict: Option<bool>,
    intervals: usize,
) -> crate::Result<NodePlacement> {
    let alpha = alpha
        .as_ref()
        .map_or_else(|| vec![DEFAULT_ALPHA; intervals], |a| a.expand(intervals));
    NodePlacement::with_mode(alpha, strict.unwrap_or(true))
}

impl InputDocument {
    pub fn mode(&self) -> Mode {
        match self {
            InputDocument::Scalar(_) => Mode::Scalar,
            InputDocument::Parametric(_) => Mode::Parametric,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            InputDocument::Scalar(d) => d.tau.len(),
            InputDocument::Parametric(d) => d.points.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn alpha(&self) -> &Option<AlphaSpec> {
        match self {
            InputDocument::Scalar(d) => &d.alpha,
            InputDocument::Parametric(d) => &d.alpha,
        }
    }

    pub fn set_alpha(&mut self, alpha: Option<AlphaSpec>) {
        match self {
            InputDocument::Scalar(d) => d.alpha = alpha,
            InputDocument::Parametric(d) => d.alpha = alpha,
        }
    }

    pub fn strict(&self) -> Option<bool> {
        match self {
            InputDocument::Scalar(d) => d.strict,
            InputDocument::Parametric(d) => d.strict,
        }
    }

    pub fn set_strict(&mut self, strict: Option<bool>) {
        match self {
            InputDocument::Scalar(d) => d.strict = strict,
            InputDocument::Parametric(d) => d.strict = strict,
        }
    }

    pub fn samples(&self) -> Option<usize> {
        match self {
            InputDocument::Scalar(d) => d.samples,
            InputDocument::Parametric(d) => d.samples,
        }
    }

    pub fn include_nodes(&self) -> Option<bool> {
        match self {
            InputDocument::Scalar(d) => d.include_nodes,
            InputDocument::Parametric(d) => d.include_nodes,
        }
    }

    /// Re-run every validation rule on the document (useful after options
    /// were overridden).
    pub fn validate(&self) -> Result<(), InputError> {
        let mut out = Vec::new();
        match self {
            InputDocument::Scalar(d) => {
                check_scalar(&d.tau, &d.values, None, &mut out);
            }
            InputDocument::Parametric(d) => {
                check_points(&d.points, None, &mut out);
            }
        }
        check_options(
            self.alpha(),
            self.strict().unwrap_or(true),
            self.samples(),
            self.len().saturating_sub(1),
            &mut out,
        );
        if out.is_empty() {
            Ok(())
        } else {
            Err(InputError { violations: out })
        }
    }

    /// Serialize as a JSON document accepted by [`parse_input`].
    pub fn to_json(&self) -> Vec<u8> {
        let mut out = serde_json::to_vec_pretty(self).expect("documents serialize");
        out.push(b'\n');
        out
    }

    /// Serialize the control data as CSV with a header row. Optional keys
    /// (`alpha`, `strict`, ...) have no CSV representation and are dropped.
    pub fn to_csv(&self) -> Vec<u8> {
        let mut out = String::new();
        match self {
            InputDocument::Scalar(d) => {
                out.push_str("tau,F\n");
                for (t, v) in d.tau.iter().zip(&d.values) {
                    out.push_str(&format!("{t},{v}\n"));
                }
            }
            InputDocument::Parametric(d) => {
                out.push_str("px,py\n");
                for p in &d.points {
                    out.push_str(&format!("{},{}\n", p[0], p[1]));
                }
            }
        }
        out.into_bytes()
    }
}

/// Parse and validate an input document.
pub fn parse_input(bytes: &[u8], format: Format) -> Result<InputDocument, InputError> {
    parse_input_as(bytes, format, None)
}

/// As [`parse_input`], with a mode hint for headerless CSV. JSON documents
/// must agree with the hint when one is given.
pub fn parse_input_as(
    bytes: &[u8],
    format: Format,
    mode: Option<Mode>,
) -> Result<InputDocument, InputError> {
    match format {
        Format::Json => parse_json(bytes, mode),
        Format::Csv => parse_csv(bytes, mode),
    }
}

/// Option values that take precedence over those in a document. They are
/// applied before validation, so a relaxed `strict` also relaxes the
/// document's own `alpha`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub alpha: Option<AlphaSpec>,
    pub strict: Option<bool>,
    pub samples: Option<usize>,
    pub include_nodes: Option<bool>,
    pub parameterization: Option<Parameterization>,
}

impl Overrides {
    pub fn is_empty(&self) -> bool {
        *self == Self::default()
    }

    fn apply(&self, obj: &mut Map<String, Value>) {
        let mut set = |key: &str, v: Option<Value>| {
            if let Some(v) = v {
                obj.insert(key.to_owned(), v);
            }
        };
        set(
            "alpha",
            self.alpha
                .as_ref()
                .map(|a| serde_json::to_value(a).expect("alpha")),
        );
        set("strict", self.strict.map(Value::Bool));
        set("samples", self.samples.map(Value::from));
        set("include_nodes", self.include_nodes.map(Value::Bool));
        set(
            "parameterization",
            self.parameterization
                .map(|p| serde_json::to_value(p).expect("parameterization")),
        );
    }
}

/// As [`parse_input_as`], with `overrides` replacing document options.
pub fn parse_input_with(
    bytes: &[u8],
    format: Format,
    mode: Option<Mode>,
    overrides: &Overrides,
) -> Result<InputDocument, InputError> {
    if overrides.is_empty() {
        return parse_input_as(bytes, format, mode);
    }
    let mut value = match format {
        Format::Json => match serde_json::from_slice::<Value>(bytes) {
            Ok(v) => v,
            Err(_) => return parse_json(bytes, mode),
        },
        Format::Csv => serde_json::to_value(parse_csv(bytes, mode)?).expect("documents serialize"),
    };
    if let Some(obj) = value.as_object_mut() {
        overrides.apply(obj);
    }
    parse_value(&value, mode)
}

fn parse_json(bytes: &[u8], hint: Option<Mode>) -> Result<InputDocument, InputError> {
    let value: Value = serde_json::from_slice(bytes).map_err(|e| {
        let mut v = Violation::new(ErrorCode::Syntax, "", e.to_string()).at_line(e.line());
        v.column = Some(e.column());
        InputError::single(v)
    })?;
    parse_value(&value, hint)
}

/// Validate an already-parsed JSON value as an input document.
pub fn parse_value(value: &Value, hint: Option<Mode>) -> Result<InputDocument, InputError> {
    let Some(obj) = value.as_object() else {
        return Err(InputError::single(Violation::new(
            ErrorCode::Type,
            "",
            "document must be a JSON object",
        )));
    };
    let mut out = Vec::new();

    let declared = match obj.get("mode") {
        None => None,
        Some(Value::String(s)) if s == "scalar" => Some(Mode::Scalar),
        Some(Value::String(s)) if s == "parametric" => Some(Mode::Parametric),
        Some(_) => {
            out.push(Violation::new(
                ErrorCode::Mode,
                "/mode",
                "mode must be \"scalar\" or \"parametric\"",
            ));
            None
        }
    };
    let mode = declared.or(hint).unwrap_or(if obj.contains_key("points") {
        Mode::Parametric
    } else {
        Mode::Scalar
    });
    if let (Some(d), Some(h)) = (declared, hint) {
        if d != h {
            out.push(Violation::new(
                ErrorCode::Mode,
                "/mode",
                format!("document mode {d:?} does not match requested {h:?}").to_lowercase(),
            ));
        }
    }

    // Size cap first so oversized payloads are rejected without further work.
    for key in ["tau", "F", "points"] {
        if let Some(Value::Array(a)) = obj.get(key) {
            if a.len() > MAX_POINTS {
                return Err(InputError::single(Violation::new(
                    ErrorCode::TooLarge,
                    format!("/{key}"),
                    format!("{} entries exceed the limit of {MAX_POINTS}", a.len()),
                )));
            }
        }
    }

    let alpha = match obj.get("alpha") {
        None | Some(Value::Null) => None,
        Some(Value::Number(n)) => n.as_f64().map(AlphaSpec::Uniform),
        Some(Value::Array(_)) => number_array(obj, "alpha", &mut out).map(AlphaSpec::PerInterval),
        Some(_) => {
            out.push(Violation::new(
                ErrorCode::Type,
                "/alpha",
                "alpha must be a number or an array of numbers",
            ));
            None
        }
    };
    let strict = optional_bool(obj, "strict", &mut out);
    let include_nodes = optional_bool(obj, "include_nodes", &mut out);
    let samples = match obj.get("samples") {
        None | Some(Value::Null) => None,
        Some(v) => match v.as_u64() {
            Some(n) => Some(usize::try_from(n).unwrap_or(usize::MAX)),
            None => {
                out.push(Violation::new(
                    ErrorCode::Type,
                    "/samples",
                    "samples must be a non-negative integer",
                ));
                None
            }
        },
    };

    let known_len;
    let doc = match mode {
        Mode::Scalar => {
            let tau = required_number_array(obj, "tau", &mut out);
            let values = required_number_array(obj, "F", &mut out);
            match (&tau, &values) {
                (Some(tau), Some(values)) => check_scalar(tau, values, None, &mut out),
                (Some(tau), None) => check_tau(tau, None, &mut out),
                _ => {}
            }
            known_len = tau.as_ref().map(Vec::len);
            tau.zip(values).map(|(tau, values)| {
                InputDocument::Scalar(ScalarInputDocument {
                    tau,
                    values,
                    alpha: alpha.clone(),
                    strict,
                    samples,
                    include_nodes,
                })
            })
        }
        Mode::Parametric => {
            let points = point_array(obj, &mut out);
            let parameterization = match obj.get("parameterization") {
                None | Some(Value::Null) => Some(Parameterization::default()),
                Some(Value::String(s)) => match s.parse() {
                    Ok(p) => Some(p),
                    Err(msg) => {
                        out.push(Violation::new(ErrorCode::Type, "/parameterization", msg));
                        None
                    }
                },
                Some(_) => {
                    out.push(Violation::new(
                        ErrorCode::Type,
                        "/parameterization",
                        "parameterization must be \"chord\" or \"uniform\"",
                    ));
                    None
                }
            };
            if let Some(points) = &points {
                check_points(points, None, &mut out);
            }
            known_len = points.as_ref().map(Vec::len);
            points
                .zip(parameterization)
                .map(|(points, parameterization)| {
                    InputDocument::Parametric(ParametricInputDocument {
                        points,
                        alpha: alpha.clone(),
                        parameterization,
                        strict,
                        samples,
                        include_nodes,
                    })
                })
        }
    };

    if let Some(n) = known_len {
        check_options(
            &alpha,
            strict.unwrap_or(true),
            samples,
            n.saturating_sub(1),
            &mut out,
        );
    }

    match doc {
        Some(doc) if out.is_empty() => Ok(doc),
        _ => Err(InputError { violations: out }),
    }
}

fn optional_bool(obj: &Map<String, Value>, key: &str, out: &mut Vec<Violation>) -> Option<bool> {
    match obj.get(key) {
        None | Some(Value::Null) => None,
        Some(Value::Bool(b)) => Some(*b),
        Some(_) => {
            out.push(Violation::new(
                ErrorCode::Type,
                format!("/{key}"),
                format!("{key} must be a boolean"),
            ));
            None
        }
    }
}

fn required_number_array(
    obj: &Map<String, Value>,
    key: &str,
    out: &mut Vec<Violation>,
) -> Option<Vec<f64>> {
    if !obj.contains_key(key) {
        out.push(Violation::new(
            ErrorCode::Missing,
            format!("/{key}"),
            format!("missing required array `{key}`"),
        ));
        return None;
    }
    number_array(obj, key, out)
}

fn number_array(obj: &Map<String, Value>, key: &str, out: &mut Vec<Violation>) -> Option<Vec<f64>> {
    let Some(Value::Array(items)) = obj.get(key) else {
        out.push(Violation::new(
            ErrorCode::Type,
            format!("/{key}"),
            format!("`{key}` must be an array of numbers"),
        ));
        return None;
    };
    let before = out.len();
    let values: Vec<f64> = items
        .iter()
        .enumerate()
        .map(|(i, v)| {
            v.as_f64().unwrap_or_else(|| {
                out.push(Violation::new(
                    ErrorCode::Type,
                    format!("/{key}/{i}"),
                    "expected a number",
                ));
                f64::NAN
            })
        })
        .collect();
    (out.len() == before).then_some(values)
}

fn point_array(obj: &Map<String, Value>, out: &mut Vec<Violation>) -> Option<Vec<[f64; 2]>> {
    let items = match obj.get("points") {
        None => {
            out.push(Violation::new(
                ErrorCode::Missing,
                "/points",
                "missing required array `points`",
            ));
            return None;
        }
        Some(Value::Array(items)) => items,
        Some(_) => {
            out.push(Violation::new(
                ErrorCode::Type,
                "/points",
                "`points` must be an array of [x, y] pairs",
            ));
            return None;
        }
    };
    let before = out.len();
    let mut points = Vec::with_capacity(items.len());
    for (i, item) in items.iter().enumerate() {
        match item.as_array() {
            Some(pair) if pair.len() == 2 => match (pair[0].as_f64(), pair[1].as_f64()) {
                (Some(x), Some(y)) => points.push([x, y]),
                _ => out.push(Violation::new(
                    ErrorCode::Type,
                    format!("/points/{i}"),
                    "point coordinates must be numbers",
                )),
            },
            Some(pair) => out.push(Violation::new(
                ErrorCode::Arity,
                format!("/points/{i}"),
                format!("a point has 2 coordinates, got {}", pair.len()),
            )),
            None => out.push(Violation::new(
                ErrorCode::Type,
                format!("/points/{i}"),
                "a point must be an [x, y] array",
            )),
        }
    }
    (out.len() == before).then_some(points)
}

/// `lines[k]` is the source line of data row `k`, when known.
fn check_scalar(tau: &[f64], values: &[f64], lines: Option<&[usize]>, out: &mut Vec<Violation>) {
    let locate = |v: Violation, k: usize| match lines {
        Some(l) => v.at_line(l[k]),
        None => v,
    };
    if tau.len() != values.len() {
        out.push(Violation::new(
            ErrorCode::Arity,
            "/F",
            format!("tau has {} entries but F has {}", tau.len(), values.len()),
        ));
    }
    if tau.len() < 2 {
        out.push(Violation::new(
            ErrorCode::Arity,
            "/tau",
            format!("need at least 2 control points, got {}", tau.len()),
        ));
    }
    for (field, arr) in [("tau", tau), ("F", values)] {
        for (k, v) in arr.iter().enumerate() {
            if !v.is_finite() {
                out.push(locate(
                    Violation::new(
                        ErrorCode::NonFinite,
                        format!("/{field}/{k}"),
                        format!("{field}[{k}] is not finite"),
                    ),
                    k,
                ));
            }
        }
    }
    check_tau(tau, lines, out);
}

fn check_tau(tau: &[f64], lines: Option<&[usize]>, out: &mut Vec<Violation>) {
    let locate = |v: Violation, k: usize| match lines {
        Some(l) => v.at_line(l[k]),
        None => v,
    };
    for k in 1..tau.len() {
        if tau[k] <= tau[k - 1] {
            out.push(locate(
                Violation::new(
                    ErrorCode::NonIncreasing,
                    format!("/tau/{k}"),
                    format!(
                        "tau must be strictly increasing: tau[{k}]={} <= tau[{}]={}",
                        tau[k],
                        k - 1,
                        tau[k - 1]
                    ),
                ),
                k,
            ));
        }
    }
}

fn check_points(points: &[[f64; 2]], lines: Option<&[usize]>, out: &mut Vec<Violation>) {
    let locate = |v: Violation, k: usize| match lines {
        Some(l) => v.at_line(l[k]),
        None => v,
    };
    if points.len() < 2 {
        out.push(Violation::new(
            ErrorCode::Arity,
            "/points",
            format!("need at least 2 control points, got {}", points.len()),
        ));
    }
    for (k, p) in points.iter().enumerate() {
        if !p[0].is_finite() || !p[1].is_finite() {
            out.push(locate(
                Violation::new(
                    ErrorCode::NonFinite,
                    format!("/points/{k}"),
                    format!("points[{k}] is not finite"),
                ),
                k,
            ));
        } else if k > 0 && p == &points[k - 1] {
            out.push(locate(
                Violation::new(
                    ErrorCode::Coincident,
                    format!("/points/{k}"),
                    format!("points[{k}] coincides with points[{}]", k - 1),
                ),
                k,
            ));
        }
    }
}

fn check_options(
    alpha: &Option<AlphaSpec>,
    strict: bool,
    samples: Option<usize>,
    intervals: usize,
    out: &mut Vec<Violation>,
) {
    if let Some(spec) = alpha {
        let (values, pointer): (Vec<f64>, Box<dyn Fn(usize) -> String>) = match spec {
            AlphaSpec::Uniform(a) => (vec![*a], Box::new(|_| "/alpha".to_string())),
            AlphaSpec::PerInterval(v) => {
                if v.len() != intervals {
                    out.push(Violation::new(
                        ErrorCode::Arity,
                        "/alpha",
                        format!(
                            "expected {intervals} alpha values (one per interval), got {}",
                            v.len()
                        ),
                    ));
                }
                (v.clone(), Box::new(|j| format!("/alpha/{j}")))
            }
        };
        for (j, &a) in values.iter().enumerate() {
            if !a.is_finite() || a <= 0.0 || a >= 1.0 {
                out.push(Violation::new(
                    ErrorCode::AlphaDomain,
                    pointer(j),
                    format!("alpha[{j}]={a} outside (0, 1)"),
                ));
            } else if strict && !in_strict_range(a) {
                out.push(Violation::new(
                    ErrorCode::AlphaRange,
                    pointer(j),
                    format!("alpha[{j}]={a} outside [1/3, 2/3]"),
                ));
            }
        }
    }
    if let Some(n) = samples {
        if !(2..=MAX_SAMPLES).contains(&n) {
            out.push(Violation::new(
                ErrorCode::SampleCount,
                "/samples",
                format!("samples must be between 2 and {MAX_SAMPLES}, got {n}"),
            ));
        }
    }
}

fn parse_csv(bytes: &[u8], hint: Option<Mode>) -> Result<InputDocument, InputError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(bytes);

    let mut out = Vec::new();
    let mut mode = hint;
    let mut rows: Vec<[f64; 2]> = Vec::new();
    let mut lines: Vec<usize> = Vec::new();

    for (index, record) in reader.records().enumerate() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            InputError::single(Violation::new(ErrorCode::Syntax, "", e.to_string()).at_line(line))
        })?;
        let line = record.position().map_or(index + 1, |p| p.line() as usize);
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        let parsed: Vec<Option<f64>> = record.iter().map(|f| f.parse::<f64>().ok()).collect();

        if index == 0 && parsed.iter().any(Option::is_none) {
            let header: Vec<String> = record.iter().map(str::to_ascii_lowercase).collect();
            let header_mode = match header.iter().map(String::as_str).collect::<Vec<_>>()[..] {
                ["tau", "f"] | ["x", "y"] => Mode::Scalar,
                ["px", "py"] => Mode::Parametric,
                _ => {
                    return Err(InputError::single(
                        Violation::new(
                            ErrorCode::Syntax,
                            "",
                            format!(
                                "unrecognized header `{}` (expected tau,F or x,y or px,py)",
                                record.iter().collect::<Vec<_>>().join(",")
                            ),
                        )
                        .at_line(line),
                    ))
                }
            };
            if let Some(h) = hint {
                if h != header_mode {
                    out.push(
                        Violation::new(
                            ErrorCode::Mode,
                            "",
                            "CSV header does not match the requested mode",
                        )
                        .at_line(line),
                    );
                }
            }
            mode = Some(header_mode);
            continue;
        }

        let row = rows.len();
        if record.len() != 2 {
            out.push(
                Violation::new(
                    ErrorCode::Arity,
                    format!("/rows/{row}"),
                    format!("expected 2 columns, got {}", record.len()),
                )
                .at_line(line),
            );
            continue;
        }
        match (parsed[0], parsed[1]) {
            (Some(a), Some(b)) => {
                if rows.len() >= MAX_POINTS {
                    return Err(InputError::single(
                        Violation::new(
                            ErrorCode::TooLarge,
                            "",
                            format!("more than {MAX_POINTS} rows"),
                        )
                        .at_line(line),
                    ));
                }
                rows.push([a, b]);
                lines.push(line);
            }
            _ => out.push(
                Violation::new(
                    ErrorCode::Syntax,
                    format!("/rows/{row}"),
                    format!(
                        "not a number: `{}`",
                        record.iter().collect::<Vec<_>>().join(",")
                    ),
                )
                .at_line(line),
            ),
        }
    }

    let doc = match mode.unwrap_or(Mode::Scalar) {
        Mode::Scalar => {
            let (tau, values): (Vec<f64>, Vec<f64>) = rows.iter().map(|r| (r[0], r[1])).unzip();
            check_scalar(&tau, &values, Some(&lines), &mut out);
            InputDocument::Scalar(ScalarInputDocument::new(tau, values))
        }
        Mode::Parametric => {
            check_points(&rows, Some(&lines), &mut out);
            InputDocument::Parametric(ParametricInputDocument::new(rows))
        }
    };
    if out.is_empty() {
        Ok(doc)
    } else {
        Err(InputError { violations: out })
    }
}
