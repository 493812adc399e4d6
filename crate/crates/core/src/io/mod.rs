//! Serialization shared by the command line tool and the HTTP service.

mod document;
mod samples;
mod svg;

pub use document::{
    parse_input, parse_input_as, parse_input_with, parse_value, AlphaSpec, ErrorCode, Format,
    InputDocument, InputError, Mode, Overrides, ParametricInputDocument, ScalarInputDocument,
    Violation, MAX_POINTS, MAX_SAMPLES,
};
pub use samples::{parse_samples, write_parametric_samples, write_samples};
pub use svg::{write_svg, SvgOptions};

/// JSON Schema for spline requests and input documents.
pub const REQUEST_SCHEMA: &str = include_str!("../../schema/spline-request.schema.json");
