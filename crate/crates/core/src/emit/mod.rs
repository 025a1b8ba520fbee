//! Report serialization: JSON for machines, CSV for spreadsheets, SVG for
//! the colour-coded views of the path. Emission never alters report values.

mod csv;
mod json;
mod svg;

use thiserror::Error;

pub use self::csv::emit_csv;
pub use json::{emit_json, parse_json, round6};
pub use svg::{emit_svg, LengthColors, SeverityColors, SvgStyle, SvgView};

#[derive(Debug, Error)]
pub enum EmitError {
    #[error("report has {report} blocks but the path has {path}")]
    PathMismatch { report: usize, path: usize },
    #[error("invalid style: {0}")]
    Style(String),
    #[error("report JSON: {0}")]
    Json(#[from] serde_json::Error),
}
