//! Parses a program, prints its blocks and diagnostics, and shows the
//! canonical form.
//!
//! cargo run --example parse_gcode [-- program.nc]

use kerf::gcode::{emit_canonical, parse_program};
use kerf::geometry::{block_length, Point3};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = match std::env::args().nth(1) {
        Some(p) => std::fs::read_to_string(p)?,
        None => "G21 G90 G17\n\
                 G0 X0 Y0 Z2\n\
                 G1 Z0 F600            ; plunge\n\
                 G1 X20 F3000\n\
                 G2 X30 Y10 R10        (quarter arc, R form)\n\
                 g3x20y20i-10j0\n\
                 M3 S12000\n\
                 G5 X1\n"
            .to_string(),
    };
    let (path, diagnostics) = parse_program(&text, Point3::ORIGIN);
    for d in &diagnostics {
        println!("{d}");
    }
    println!("{} blocks, {:.3} mm", path.len(), path.total_length());
    for (i, b) in path.blocks().iter().enumerate() {
        let kind = if b.rapid {
            "rapid"
        } else if b.is_arc() {
            "arc"
        } else {
            "line"
        };
        println!(
            "  #{i:<2} line {:<2} {kind:<5} {} -> {}  {:.3} mm at {:.1} mm/s",
            b.source_line,
            b.start(),
            b.end(),
            block_length(b),
            b.feed
        );
    }
    println!("\ncanonical form:\n{}", emit_canonical(&path));
    Ok(())
}
