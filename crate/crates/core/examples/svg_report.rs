//! Writes both SVG views, the JSON report and the CSV tables for a program.
//!
//! cargo run --example svg_report [-- program.nc out_dir]

use std::path::PathBuf;

use kerf::emit::{emit_csv, emit_json, emit_svg, SvgStyle, SvgView};
use kerf::gcode::parse_program;
use kerf::geometry::Point3;
use kerf::{analyze, AnalyzeOptions, MachineConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let data = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data");
    let mut args = std::env::args().skip(1);
    let program = args.next().map(PathBuf::from).unwrap_or(data.join("hexagon.nc"));
    let out = args.next().map(PathBuf::from).unwrap_or(std::env::temp_dir().join("kerf-report"));
    std::fs::create_dir_all(&out)?;

    let machine = MachineConfig::from_json(&std::fs::read_to_string(data.join("machine.json"))?)?.limits();
    let (path, _) = parse_program(&std::fs::read_to_string(&program)?, Point3::ORIGIN);
    let report = analyze(&path, &machine, &AnalyzeOptions::default())?;

    let style = SvgStyle::default();
    let files = [
        ("ncu.svg", emit_svg(&report, &path, &style, SvgView::Ncu)?.into_bytes()),
        ("discontinuity.svg", emit_svg(&report, &path, &style, SvgView::Discontinuity)?.into_bytes()),
        ("report.json", emit_json(&report)),
        ("report.csv", emit_csv(&report).into_bytes()),
    ];
    for (name, bytes) in files {
        let p = out.join(name);
        std::fs::write(&p, bytes)?;
        println!("wrote {}", p.display());
    }
    Ok(())
}
