//! Cycle-time estimate from junction predictions and block caps.
//!
//! Each block runs a trapezoidal profile between its entry and exit feeds.
//! Junction feeds come from the analysis; a forward and a backward pass make
//! them reachable under each block's tangential acceleration capacity.

use super::report::{BlockAnalysis, JunctionAnalysis};
use crate::geometry::{block_length, tangent_at, Block, End, Motion, ToolPath};
use crate::kinematics::{along, swept, LimitKind, MachineLimits};

/// Capacity of a quantity acting along the path over a whole block.
fn block_capacity(block: &Block, per_axis: [f64; 3]) -> f64 {
    let Ok(t0) = tangent_at(block, End::Start) else {
        return 0.0;
    };
    match block.motion {
        Motion::Linear { .. } => along(t0, per_axis),
        Motion::Arc { plane, clockwise, .. } => {
            let dir = if clockwise { -1.0 } else { 1.0 };
            let toward = plane.normal().cross(t0) * dir;
            swept(t0, toward, block.sweep().unwrap_or(0.0), per_axis)
        }
    }
}

/// Feed the block would run at with no kinematic loss: the programmed feed
/// for cutting moves, the traverse capacity for rapids.
pub(crate) fn nominal_feed(block: &Block, machine: &MachineLimits) -> f64 {
    let vmax = block_capacity(block, machine.per_axis(LimitKind::Velocity));
    if block.rapid {
        vmax
    } else {
        block.feed
    }
}

/// Time to cover `length` from `v0` to `v1` with cruise `vc` and acceleration `a`.
fn trapezoid_time(length: f64, v0: f64, v1: f64, vc: f64, a: f64) -> f64 {
    if vc <= 0.0 {
        return f64::INFINITY;
    }
    if !a.is_finite() {
        return length / vc;
    }
    let peak = ((2.0 * a * length + v0 * v0 + v1 * v1) / 2.0).sqrt();
    if peak <= vc {
        (peak - v0) / a + (peak - v1) / a
    } else {
        let d_acc = (vc * vc - v0 * v0) / (2.0 * a);
        let d_dec = (vc * vc - v1 * v1) / (2.0 * a);
        (vc - v0) / a + (vc - v1) / a + (length - d_acc - d_dec) / vc
    }
}

/// Estimated machining time, s.
///
/// `rest_at_ends` starts and ends the path at zero feed; otherwise the
/// first and last blocks enter and leave at cruise.
pub fn estimate_cycle_time(
    path: &ToolPath,
    junctions: &[JunctionAnalysis],
    blocks: &[BlockAnalysis],
    machine: &MachineLimits,
    rest_at_ends: bool,
) -> f64 {
    let n = path.len();
    if n == 0 {
        return 0.0;
    }
    let lengths: Vec<f64> = path.blocks().iter().map(block_length).collect();
    let accel: Vec<f64> = path
        .blocks()
        .iter()
        .map(|b| block_capacity(b, machine.per_axis(LimitKind::Acceleration)))
        .collect();
    let cruise: Vec<f64> = path
        .blocks()
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let cap = blocks.get(i).map_or(f64::INFINITY, |a| a.feed_cap);
            let vmax = block_capacity(b, machine.per_axis(LimitKind::Velocity));
            nominal_feed(b, machine).min(cap).min(vmax)
        })
        .collect();

    // node k sits between block k-1 and block k
    let mut node = vec![f64::INFINITY; n + 1];
    for k in 1..n {
        let (prev, next) = (&path.blocks()[k - 1], &path.blocks()[k]);
        node[k] = if prev.rapid != next.rapid {
            0.0
        } else {
            cruise[k - 1].min(cruise[k])
        };
    }
    for j in junctions {
        if j.index + 1 < n + 1 {
            node[j.index + 1] = node[j.index + 1].min(j.predicted_feed);
        }
    }
    if rest_at_ends {
        node[0] = 0.0;
        node[n] = 0.0;
    } else {
        node[0] = cruise[0];
        node[n] = cruise[n - 1];
    }

    for k in 0..n {
        let reach = (node[k] * node[k] + 2.0 * accel[k] * lengths[k]).sqrt();
        node[k + 1] = node[k + 1].min(reach);
    }
    for k in (0..n).rev() {
        let reach = (node[k + 1] * node[k + 1] + 2.0 * accel[k] * lengths[k]).sqrt();
        node[k] = node[k].min(reach);
    }

    (0..n)
        .map(|k| trapezoid_time(lengths[k], node[k], node[k + 1], cruise[k], accel[k]))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point3;
    use crate::kinematics::AxisLimits;
    use approx::assert_relative_eq;

    fn segment() -> ToolPath {
        ToolPath::new(vec![Block::linear(Point3::ORIGIN, Point3::new(100.0, 0.0, 0.0), 10.0).unwrap()]).unwrap()
    }

    #[test]
    fn steady_traverse() {
        let m = MachineLimits::uniform(AxisLimits::new(1e3, 1e9, 1e9), 0.01, 0.012, 0.01);
        let t = estimate_cycle_time(&segment(), &[], &[], &m, false);
        assert_relative_eq!(t, 10.0, max_relative = 1e-12);
    }

    #[test]
    fn stop_at_both_ends() {
        let m = MachineLimits::uniform(AxisLimits::new(1e3, 100.0, 1e9), 0.01, 0.012, 0.01);
        let t = estimate_cycle_time(&segment(), &[], &[], &m, true);
        // closed-form trapezoid: L/v + v/a
        assert_relative_eq!(t, 100.0 / 10.0 + 10.0 / 100.0, max_relative = 1e-12);
    }

    #[test]
    fn short_block_triangle_profile() {
        let p = ToolPath::new(vec![Block::linear(Point3::ORIGIN, Point3::new(1.0, 0.0, 0.0), 100.0).unwrap()]).unwrap();
        let m = MachineLimits::uniform(AxisLimits::new(1e3, 100.0, 1e9), 0.01, 0.012, 0.01);
        let t = estimate_cycle_time(&p, &[], &[], &m, true);
        // accelerate over half, decelerate over half: 2·√(L/a)
        assert_relative_eq!(t, 2.0 * (1.0f64 / 100.0).sqrt(), max_relative = 1e-12);
    }

    #[test]
    fn trapezoid_closed_form() {
        assert_relative_eq!(trapezoid_time(100.0, 0.0, 0.0, 10.0, 100.0), 10.1, max_relative = 1e-12);
        assert_relative_eq!(trapezoid_time(100.0, 10.0, 10.0, 10.0, 100.0), 10.0, max_relative = 1e-12);
    }
}
