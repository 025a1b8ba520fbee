//! Cycle-time loss from short blocks: the same 40 mm zigzag split into
//! ever shorter steps.
//!
//! cargo run --example cycle_time

use kerf::geometry::{Block, Point3, ToolPath};
use kerf::kinematics::{AxisLimits, MachineLimits};
use kerf::{analyze, AnalyzeOptions};

fn staircase(step: f64, feed: f64) -> Result<ToolPath, Box<dyn std::error::Error>> {
    let steps = (40.0 / step).round() as usize;
    let mut p = Point3::ORIGIN;
    let mut blocks = Vec::with_capacity(steps);
    for i in 0..steps {
        let d = if i % 2 == 0 { Point3::new(step, 0.0, 0.0) } else { Point3::new(0.0, step, 0.0) };
        blocks.push(Block::linear(p, p + d, feed)?);
        p = p + d;
    }
    Ok(ToolPath::new(blocks)?)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let machine = MachineLimits::uniform(AxisLimits::new(500.0, 2000.0, 30_000.0), 0.01, 0.012, 0.01);
    let feed = 10_000.0 / 60.0;
    println!("step (mm)  critical  ideal (s)  estimated (s)  ratio");
    for step in [10.0, 5.0, 4.0, 2.0, 1.0, 0.5] {
        let r = analyze(&staircase(step, feed)?, &machine, &AnalyzeOptions::default())?;
        println!(
            "{step:>9}  {:>8}  {:>9.3}  {:>13.3}  {:>5.2}",
            r.histograms.length.critical,
            r.path.programmed_cycle_time,
            r.estimated_cycle_time,
            r.estimated_cycle_time / r.path.programmed_cycle_time
        );
    }
    Ok(())
}
