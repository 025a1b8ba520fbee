//! What-if loop: re-analyze one program while changing machine parameters.
//!
//! cargo run --example what_if

use kerf::gcode::parse_program;
use kerf::geometry::Point3;
use kerf::{analyze, AnalyzeOptions, MachineConfig, MachineLimits, Report};

fn summary(label: &str, r: &Report) {
    let h = &r.histograms;
    let worst = r.worst_junction().map_or(f64::NAN, |j| j.predicted_feed);
    println!(
        "{label:<24} severe {:>2}  high {:>2}  critical {:>2}  slowest corner {:>7.2} mm/s  time {:.3} s",
        h.severity.severe, h.severity.high, h.length.critical, worst, r.estimated_cycle_time
    );
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let data = std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data");
    let base = MachineConfig::from_json(&std::fs::read_to_string(data.join("machine.json"))?)?.limits();
    let (path, _) = parse_program(&std::fs::read_to_string(data.join("hexagon.nc"))?, Point3::ORIGIN);
    let opts = AnalyzeOptions::default();

    let variants: [(&str, MachineLimits); 5] = [
        ("baseline", base),
        ("tit 0.1 mm", MachineLimits { tit: 0.1, ..base }),
        ("axes twice as stiff", base.scaled(2.0)),
        ("t_int 0.004 s", MachineLimits { t_int: 0.004, ..base }),
        ("t_int 0.08 s", MachineLimits { t_int: 0.08, ..base }),
    ];
    for (label, m) in variants {
        summary(label, &analyze(&path, &m, &opts)?);
    }
    Ok(())
}
