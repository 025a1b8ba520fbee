//! Feed-rate loss prediction for high-speed-machining tool paths.
//!
//! `kerf` reads a 3-axis G-code program, finds the places where a machine
//! tool cannot hold the programmed feed, and reports them:
//!
//! - corners (tangential discontinuities), crossed on an arc the controller
//!   inserts within its interpolation tolerance, at a feed bounded by axis
//!   acceleration, jerk and velocity;
//! - curvature jumps between lines and arcs or between arcs, crossed at a
//!   jerk-limited feed;
//! - blocks too short for the controller to process within one
//!   interpolation period.
//!
//! ```no_run
//! use kerf::{analyze, gcode::parse_program, geometry::Point3, AnalyzeOptions, MachineConfig};
//!
//! let machine = MachineConfig::from_json(&std::fs::read_to_string("machine.json")?)?.limits();
//! let (path, diagnostics) = parse_program(&std::fs::read_to_string("part.nc")?, Point3::ORIGIN);
//! let report = analyze(&path, &machine, &AnalyzeOptions::default())?;
//! println!("{} severe junctions", report.histograms.severity.severe);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```
//!
//! Runnable walkthroughs live in `examples/`.

pub mod analyzer;
pub mod cli;
pub mod emit;
pub mod gcode;
pub mod geometry;
pub mod kinematics;
pub mod service;

pub use analyzer::{analyze, AnalyzeError, AnalyzeOptions, Report};
pub use kinematics::{MachineConfig, MachineLimits};

/// Serializes non-finite floats as `null` and reads `null` back as +∞.
pub(crate) mod serde_inf {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else {
            s.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
    }
}
