use std::fmt::Write;

use crate::geometry::{Motion, ToolPath};

fn num(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

/// Writes `path` as canonical G-code: one block per line, absolute
/// coordinates, feeds in mm/min, six decimals.
///
/// The program has no leading positioning move; re-parse it from the
/// path's first start point.
pub fn emit_canonical(path: &ToolPath) -> String {
    let mut out = String::new();
    for b in path {
        let end = b.end();
        let xyz = format!("X{} Y{} Z{}", num(end.x), num(end.y), num(end.z));
        let feed = num(b.feed * 60.0);
        match b.motion {
            Motion::Linear { .. } if b.rapid => writeln!(out, "G0 {xyz}"),
            Motion::Linear { .. } => writeln!(out, "G1 {xyz} F{feed}"),
            Motion::Arc { start, center, plane, clockwise, .. } => {
                let o = center - start;
                writeln!(
                    out,
                    "{} {} {xyz} I{} J{} K{} F{feed}",
                    plane.gcode(),
                    if clockwise { "G2" } else { "G3" },
                    num(o.x),
                    num(o.y),
                    num(o.z),
                )
            }
        }
        .expect("writing to a String");
    }
    out
}
