//! Full analysis of a program file with a machine config file.
//!
//! cargo run --example analyze_program [-- program.nc machine.json]

use std::path::PathBuf;

use kerf::gcode::parse_program;
use kerf::geometry::Point3;
use kerf::{analyze, AnalyzeOptions, MachineConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let data = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data");
    let mut args = std::env::args().skip(1);
    let program = args.next().map(PathBuf::from).unwrap_or(data.join("spiral.nc"));
    let machine = args.next().map(PathBuf::from).unwrap_or(data.join("machine.json"));

    let limits = MachineConfig::from_json(&std::fs::read_to_string(&machine)?)?.limits();
    let (path, diagnostics) = parse_program(&std::fs::read_to_string(&program)?, Point3::ORIGIN);
    for d in &diagnostics {
        eprintln!("{d}");
    }
    let report = analyze(&path, &limits, &AnalyzeOptions::default())?;

    println!("{}: {} blocks, {:.2} mm", program.display(), report.path.block_count, report.path.total_length);
    for j in &report.junctions {
        println!(
            "  junction {:<3} line {:<3} {:<10} {:>8} mm/s of {:>7.2}  {:>5.1}%  {:<8} ({})",
            j.index,
            j.source_line,
            j.kind.name(),
            if j.predicted_feed.is_finite() { format!("{:.2}", j.predicted_feed) } else { "∞".into() },
            j.programmed_feed,
            j.reduction_pct,
            j.severity.name(),
            j.binding.name()
        );
    }
    let h = &report.histograms;
    println!(
        "severity: None {} / Moderate {} / High {} / Severe {}",
        h.severity.none, h.severity.moderate, h.severity.high, h.severity.severe
    );
    println!("length: Critical {} / Marginal {} / Ok {}", h.length.critical, h.length.marginal, h.length.ok);
    println!(
        "cycle time {:.3} s estimated, {:.3} s at programmed feed",
        report.estimated_cycle_time, report.path.programmed_cycle_time
    );
    Ok(())
}
