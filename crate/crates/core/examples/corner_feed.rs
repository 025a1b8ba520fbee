//! Corner crossing feed on an inserted rounding arc, against turn angle.
//!
//! cargo run --example corner_feed

use kerf::geometry::{Block, Point3};
use kerf::kinematics::{corner_radius, model1_junction_feed, AxisLimits, MachineLimits};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // 30 m/min, 2 m/s², 30 m/s³ on every axis; 10 µm tolerance
    let machine = MachineLimits::uniform(AxisLimits::new(500.0, 2000.0, 30_000.0), 0.01, 0.012, 0.01);
    let side = 10.0;
    println!("turn°   R (mm)     V_fa      V_fjerk   v_limit   binding");
    for deg in [5.0, 15.0, 30.0, 45.0, 60.0, 90.0, 120.0, 150.0, 179.0] {
        let beta: f64 = f64::to_radians(deg);
        let corner = Point3::new(side, 0.0, 0.0);
        let b1 = Block::linear(Point3::ORIGIN, corner, 200.0)?;
        let b2 = Block::linear(corner, corner + Point3::new(beta.cos(), beta.sin(), 0.0) * side, 200.0)?;
        let r = model1_junction_feed(&b1, &b2, beta, &machine)?;
        println!(
            "{deg:>5.0}  {:>8.5}  {:>8.3}  {:>8.3}  {:>8.3}  {:?}",
            r.inserted_radius, r.v_fa, r.v_fjerk, r.v_limit, r.binding
        );
    }

    println!("\nshort blocks cap the rounding radius (90° corner, tit 0.01 mm):");
    for l in [0.01, 0.02, 0.05, 0.1, 1.0] {
        let r = corner_radius(std::f64::consts::FRAC_PI_2, l, l, 0.01)?;
        println!("  l = {l:<5} mm  R = {r:.5} mm");
    }
    Ok(())
}
