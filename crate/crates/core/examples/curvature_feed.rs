//! Feed across curvature jumps: line into arc, and arc into arc.
//!
//! cargo run --example curvature_feed

use kerf::geometry::Point3;
use kerf::kinematics::{model2_arc_arc_feed, model2_seg_arc_feed, tangential_jerk, AxisLimits, FeedLimit, MachineLimits};

fn main() {
    let machine = MachineLimits::uniform(AxisLimits::new(500.0, 2000.0, 30_000.0), 0.01, 0.012, 0.01);
    let along_x = Point3::new(1.0, 0.0, 0.0);
    let diagonal = Point3::new(1.0, 1.0, 0.0).normalized().unwrap();
    println!(
        "jerk along X {:.0} mm/s³, along the diagonal {:.0} mm/s³",
        tangential_jerk(along_x, &machine),
        tangential_jerk(diagonal, &machine)
    );

    println!("\nline -> arc");
    for r in [0.5, 1.0, 2.0, 5.0, 10.0, 50.0] {
        println!("  R = {r:>4} mm: {:>7.2} mm/s", model2_seg_arc_feed(r, along_x, &machine));
    }

    println!("\narc -> arc (R1 = 5 mm)");
    for (r2, opposite) in [(10.0, false), (10.0, true), (6.0, false), (5.0, false), (5.0, true), (5e6, false)] {
        let v = match model2_arc_arc_feed(5.0, r2, opposite, along_x, &machine) {
            FeedLimit::Bounded(v) => format!("{v:.2} mm/s"),
            FeedLimit::Unbounded => "no limit".to_string(),
        };
        let sense = if opposite { "reversing" } else { "same sense" };
        println!("  R2 = {r2:<7} {sense:<10}: {v}");
    }
}
