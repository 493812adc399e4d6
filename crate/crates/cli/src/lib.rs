//! The `bzspline` command line tool.
//!
//! [`run`] takes its arguments and streams explicitly so tests can drive it
//! in-process. Exit codes: 0 success, 1 `check` found a failed criterion,
//! 2 usage or validation error, 3 I/O error.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::Path;

use bezier_spline::datasets::{self, Dataset};
use bezier_spline::io::{
    parse_input_with, write_parametric_samples, write_samples, write_svg, AlphaSpec, Format,
    InputDocument, InputError, Mode, Overrides, ScalarInputDocument, SvgOptions,
};
use bezier_spline::{
    build_parametric, build_spline, evaluate, sample_parametric, Diagnostics, Parameterization,
    ParametricDiagnostics, ResidualReport, SplineError, SplineReport, DEFAULT_SAMPLES,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Relative tolerances used by `check`.
const C1_TOL: f64 = 1e-9;
const HULL_TOL: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(
    name = "bzspline",
    version,
    about = "Build, sample and plot C1 cubic splines tangent to a control polygon"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the curve and write the full JSON report.
    Build(InputArgs),
    /// Write curve samples as CSV or JSON.
    Sample {
        #[command(flatten)]
        input: InputArgs,
        /// Sample file format.
        #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
        out_format: OutFormat,
    },
    /// Draw control points, control polygon and curve as SVG.
    Svg {
        #[command(flatten)]
        input: InputArgs,
        /// Title embedded in the SVG.
        #[arg(long)]
        title: Option<String>,
    },
    /// Print dominance margins, C1 residuals and the hull margin.
    Check(InputArgs),
    /// Replay a built-in dataset (1: spike on [1, 11], 2: semicircle).
    Example(ExampleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Csv,
    Json,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Self {
        match f {
            OutFormat::Csv => Format::Csv,
            OutFormat::Json => Format::Json,
        }
    }
}

#[derive(Debug, Args)]
struct CurveOptions {
    /// Interval ratio: one value for all intervals or a comma-separated list.
    #[arg(long, value_parser = parse_alpha, allow_hyphen_values = true)]
    alpha: Option<AlphaSpec>,
    /// Accept alpha anywhere in (0, 1) instead of [1/3, 2/3].
    #[arg(long)]
    no_strict: bool,
    /// Number of uniform samples [default: the document's value, else 1000].
    #[arg(short = 'n', long)]
    samples: Option<usize>,
    /// Add the spline and interpolation nodes to the samples.
    #[arg(long)]
    include_nodes: bool,
}

impl CurveOptions {
    fn overrides(&self, parameterization: Option<Parameterization>) -> Overrides {
        Overrides {
            alpha: self.alpha.clone(),
            strict: self.no_strict.then_some(false),
            samples: self.samples,
            include_nodes: self.include_nodes.then_some(true),
            parameterization,
        }
    }
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Input file, or "-" for standard input.
    input: String,
    /// Input format [default: csv for *.csv, else json].
    #[arg(long)]
    format: Option<Format>,
    /// Treat input as planar points (x, y) of a parametric curve.
    #[arg(long)]
    parametric: bool,
    /// Parameterization for planar points: chord or uniform.
    #[arg(long)]
    parameterization: Option<Parameterization>,
    #[command(flatten)]
    options: CurveOptions,
    /// Output file, or "-" for standard output.
    #[arg(short, long, default_value = "-")]
    output: String,
}

#[derive(Debug, Args)]
struct ExampleArgs {
    /// Dataset id.
    #[arg(value_parser = clap::value_parser!(u8).range(1..=2))]
    id: u8,
    /// Write the SVG figure (to PATH, default standard output).
    #[arg(long, value_name = "PATH", num_args = 0..=1, default_missing_value = "-")]
    svg: Option<String>,
    /// Write the samples as CSV (to PATH, default standard output).
    #[arg(long, value_name = "PATH", num_args = 0..=1, default_missing_value = "-")]
    csv: Option<String>,
    /// Write the full JSON report (to PATH, default standard output).
    #[arg(long, value_name = "PATH", num_args = 0..=1, default_missing_value = "-")]
    json: Option<String>,
    /// Print diagnostics to standard output.
    #[arg(long)]
    check: bool,
    #[command(flatten)]
    options: CurveOptions,
}

fn parse_alpha(s: &str) -> Result<AlphaSpec, String> {
    let values = s
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| format!("invalid number {:?}", p.trim()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(if values.len() == 1 && !s.contains(',') {
        AlphaSpec::Uniform(values[0])
    } else {
        AlphaSpec::PerInterval(values)
    })
}

#[derive(Debug)]
enum CliError {
    Input(InputError),
    Spline(SplineError),
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Spline(_) => EXIT_INVALID,
            CliError::Io { .. } => EXIT_IO,
        }
    }

    fn report(&self, stderr: &mut dyn Write) {
        let _ = match self {
            CliError::Input(e) => e
                .violations
                .iter()
                .try_for_each(|v| writeln!(stderr, "error[{}]: {v}", v.code.as_str())),
            CliError::Spline(e) => writeln!(stderr, "error: {e}"),
            CliError::Io { path, source } => writeln!(stderr, "error: {path}: {source}"),
        };
    }
}

impl From<InputError> for CliError {
    fn from(e: InputError) -> Self {
        CliError::Input(e)
    }
}

impl From<SplineError> for CliError {
    fn from(e: SplineError) -> Self {
        CliError::Spline(e)
    }
}

struct Streams<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
}

impl Streams<'_> {
    fn read(&mut self, path: &str) -> Result<Vec<u8>, CliError> {
        let mut buf = Vec::new();
        let res = if path == "-" {
            self.stdin.read_to_end(&mut buf).map(|_| ())
        } else {
            std::fs::read(path).map(|b| buf = b)
        };
        res.map(|()| buf).map_err(|source| CliError::Io {
            path: display_path(path),
            source,
        })
    }

    fn write(&mut self, path: &str, bytes: &[u8]) -> Result<(), CliError> {
        let res = if path == "-" {
            self.stdout
                .write_all(bytes)
                .and_then(|()| self.stdout.flush())
        } else {
            std::fs::write(path, bytes)
        };
        res.map_err(|source| CliError::Io {
            path: display_path(path),
            source,
        })
    }

    fn warn(&mut self, warnings: &[String]) {
        for w in warnings {
            let _ = writeln!(self.stderr, "warning: {w}");
        }
    }
}

fn display_path(path: &str) -> String {
    if path == "-" {
        "<stdio>".to_owned()
    } else {
        path.to_owned()
    }
}

/// Run the tool. Never panics on malformed input; returns the exit code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                EXIT_INVALID
            } else {
                let _ = stdout.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    let mut io = Streams {
        stdin,
        stdout,
        stderr,
    };
    match dispatch(cli.command, &mut io) {
        Ok(code) => code,
        Err(e) => {
            e.report(io.stderr);
            e.exit_code()
        }
    }
}

fn dispatch(command: Command, io: &mut Streams<'_>) -> Result<i32, CliError> {
    match command {
        Command::Build(args) => {
            let doc = load(&args, io)?;
            let report = evaluate(&doc)?;
            io.warn(warnings(&report));
            io.write(&args.output, &report_json(&report))?;
            Ok(EXIT_OK)
        }
        Command::Sample { input, out_format } => {
            let doc = load(&input, io)?;
            let bytes = samples_bytes(&doc, out_format.into())?;
            io.write(&input.output, &bytes)?;
            Ok(EXIT_OK)
        }
        Command::Svg { input, title } => {
            let doc = load(&input, io)?;
            let opts = SvgOptions {
                title,
                ..SvgOptions::default()
            };
            let bytes = svg_bytes(&doc, &opts)?;
            io.write(&input.output, &bytes)?;
            Ok(EXIT_OK)
        }
        Command::Check(args) => {
            let doc = load(&args, io)?;
            let (text, ok) = check_text(&doc)?;
            io.write(&args.output, text.as_bytes())?;
            Ok(if ok { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
        Command::Example(args) => example(args, io),
    }
}

fn load(args: &InputArgs, io: &mut Streams<'_>) -> Result<InputDocument, CliError> {
    let bytes = io.read(&args.input)?;
    let format = args.format.unwrap_or_else(|| {
        let is_csv = Path::new(&args.input)
            .extension()
            .is_some_and(|e| e.eq_ignore_ascii_case("csv"));
        if is_csv {
            Format::Csv
        } else {
            Format::Json
        }
    });
    let mode = args.parametric.then_some(Mode::Parametric);
    let overrides = args.options.overrides(args.parameterization);
    Ok(parse_input_with(&bytes, format, mode, &overrides)?)
}

fn example_document(data: &Dataset, options: &CurveOptions) -> Result<InputDocument, CliError> {
    let doc = InputDocument::Scalar(ScalarInputDocument::new(
        data.tau.to_vec(),
        data.values.to_vec(),
    ));
    let overrides = options.overrides(None);
    if overrides.is_empty() {
        return Ok(doc);
    }
    Ok(parse_input_with(
        &doc.to_json(),
        Format::Json,
        None,
        &overrides,
    )?)
}

fn example(args: ExampleArgs, io: &mut Streams<'_>) -> Result<i32, CliError> {
    let data = datasets::example(args.id).expect("id range checked by the parser");
    let doc = example_document(&data, &args.options)?;
    let wants_output =
        args.svg.is_some() || args.csv.is_some() || args.json.is_some() || args.check;
    if !wants_output {
        io.write("-", &doc.to_json())?;
        return Ok(EXIT_OK);
    }
    let mut code = EXIT_OK;
    if args.check {
        let (text, ok) = check_text(&doc)?;
        io.write("-", text.as_bytes())?;
        if !ok {
            code = EXIT_CHECK_FAILED;
        }
    }
    if let Some(path) = &args.json {
        let report = evaluate(&doc)?;
        io.warn(warnings(&report));
        io.write(path, &report_json(&report))?;
    }
    if let Some(path) = &args.csv {
        io.write(path, &samples_bytes(&doc, Format::Csv)?)?;
    }
    if let Some(path) = &args.svg {
        let opts = SvgOptions {
            title: Some(format!("Example {}: {}", data.id, data.name)),
            ..SvgOptions::default()
        };
        io.write(path, &svg_bytes(&doc, &opts)?)?;
    }
    Ok(code)
}

fn warnings(report: &SplineReport) -> &[String] {
    match report {
        SplineReport::Scalar(r) => &r.warnings,
        SplineReport::Parametric(r) => &r.warnings,
    }
}

fn report_json(report: &SplineReport) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(report).expect("reports serialize");
    out.push(b'\n');
    out
}

fn sample_count(doc: &InputDocument) -> usize {
    doc.samples().unwrap_or(DEFAULT_SAMPLES)
}

fn samples_bytes(doc: &InputDocument, format: Format) -> Result<Vec<u8>, CliError> {
    let count = sample_count(doc);
    Ok(match doc {
        InputDocument::Scalar(d) => {
            let curve = build_spline(&d.control_polygon()?, &d.placement()?)?;
            write_samples(
                &curve.sample(count, doc.include_nodes().unwrap_or(false))?,
                format,
            )
        }
        InputDocument::Parametric(d) => {
            let curve =
                build_parametric(&d.control_points()?, &d.placement()?, d.parameterization)?;
            write_parametric_samples(&sample_parametric(&curve, count)?, format)
        }
    })
}

fn svg_bytes(doc: &InputDocument, opts: &SvgOptions) -> Result<Vec<u8>, CliError> {
    let count = sample_count(doc);
    Ok(match doc {
        InputDocument::Scalar(d) => {
            let curve = build_spline(&d.control_polygon()?, &d.placement()?)?;
            let samples = curve.sample(count, doc.include_nodes().unwrap_or(false))?;
            write_svg(&curve.control_points(), &samples, opts)
        }
        InputDocument::Parametric(d) => {
            let curve =
                build_parametric(&d.control_points()?, &d.placement()?, d.parameterization)?;
            let samples: Vec<(f64, f64)> = sample_parametric(&curve, count)?
                .into_iter()
                .map(|(_, x, y)| (x, y))
                .collect();
            write_svg(&curve.control_points(), &samples, opts)
        }
    })
}

/// Diagnostics as text, and whether every criterion holds.
fn check_text(doc: &InputDocument) -> Result<(String, bool), CliError> {
    let count = sample_count(doc);
    let mut out = String::new();
    let ok = match doc {
        InputDocument::Scalar(d) => {
            let curve = build_spline(&d.control_polygon()?, &d.placement()?)?;
            let diag = Diagnostics::new(&curve, &curve.sample(count, true)?);
            let scale = curve.scale();
            let _ = writeln!(out, "points: {}", curve.tau().len());
            let _ = writeln!(out, "scale: {scale}");
            let ok = residual_lines(&mut out, "", &diag.residuals, curve.tau(), scale);
            hull_line(&mut out, diag.hull_margin, scale) && ok
        }
        InputDocument::Parametric(d) => {
            let curve =
                build_parametric(&d.control_points()?, &d.placement()?, d.parameterization)?;
            let diag = ParametricDiagnostics::new(&curve, &sample_parametric(&curve, count)?);
            let scale = curve.scale();
            let _ = writeln!(out, "points: {}", curve.t().len());
            let _ = writeln!(out, "scale: {scale}");
            let ok_x = residual_lines(&mut out, "x.", &diag.x, curve.t(), scale);
            let ok_y = residual_lines(&mut out, "y.", &diag.y, curve.t(), scale);
            hull_line(&mut out, diag.hull_margin, scale) && ok_x && ok_y
        }
    };
    let _ = writeln!(out, "status: {}", if ok { "ok" } else { "FAILED" });
    Ok((out, ok))
}

fn residual_lines(
    out: &mut String,
    prefix: &str,
    r: &ResidualReport,
    knots: &[f64],
    scale: f64,
) -> bool {
    for (k, m) in r.dominance_margins.iter().enumerate() {
        let _ = writeln!(out, "{prefix}dominance_margin[{}]: {m}", k + 1);
    }
    for (k, c) in r.c1_residuals.iter().enumerate() {
        let _ = writeln!(
            out,
            "{prefix}c1_residual[{}] (tau={}): {c:e}",
            k + 1,
            knots[k + 1]
        );
    }
    let dominant = r.dominance_margins.iter().all(|m| *m > 0.0);
    let smooth = r.max_c1_residual() <= C1_TOL * scale;
    let _ = writeln!(
        out,
        "{prefix}min_dominance_margin: {}",
        r.min_dominance_margin()
            .map_or_else(|| "none".to_owned(), |m| m.to_string())
    );
    let _ = writeln!(out, "{prefix}max_c1_residual: {:e}", r.max_c1_residual());
    let _ = writeln!(
        out,
        "{prefix}max_value_residual: {:e}",
        r.max_value_residual()
    );
    let _ = writeln!(
        out,
        "{prefix}max_slope_residual: {:e}",
        r.max_slope_residual()
    );
    dominant && smooth
}

fn hull_line(out: &mut String, margin: f64, scale: f64) -> bool {
    let _ = writeln!(out, "hull_margin: {margin:e}");
    margin >= -HULL_TOL * scale
}
