//! A 3-axis G-code subset reader and canonical writer.
//!
//! Supported words: `N`, `G0`–`G3`, `G17`–`G19`, `G21`, `G90`, `X Y Z`,
//! `I J K`, `R`, `F`, with comments in parentheses or after `;`. `M`, `S` and
//! `T` words are ignored with a warning. Anything else rejects its line.
//! Programs must be absolute (G90) and metric (G21).

mod arc;
mod emit;
mod parser;

pub use arc::{ijk_radius_mismatch, resolve_arc_center, ArcDesignation, ArcError, IJK_MISMATCH_LIMIT};
pub use emit::emit_canonical;
pub use parser::{parse_program, MotionMode, ParseDiagnostic, ParserState, Severity};
