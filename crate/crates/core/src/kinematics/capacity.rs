//! Projection of per-axis limits onto a path direction.
//!
//! An axis limit `L_i` caps a path quantity `q` acting along unit direction
//! `d` at `L_i / |d·e_i|`. When `d` sweeps through an inserted arc, the
//! binding value on each axis is the largest projection reached anywhere on
//! the sweep.

use super::ModelError;
use crate::geometry::Point3;

/// Components below this are treated as orthogonal to the axis.
pub const AXIS_EPS: f64 = 1e-12;
const UNIT_TOL: f64 = 1e-9;

fn check_unit(v: Point3, name: &str) -> Result<(), ModelError> {
    if (v.norm() - 1.0).abs() > UNIT_TOL || !v.is_finite() {
        return Err(ModelError::Domain(format!("{name} must be a unit vector, norm {}", v.norm())));
    }
    Ok(())
}

/// Limit of a quantity acting along one fixed direction.
pub fn along(dir: Point3, per_axis: [f64; 3]) -> f64 {
    (0..3)
        .filter_map(|i| {
            let c = dir.axis(i).abs();
            (c >= AXIS_EPS).then(|| per_axis[i] / c)
        })
        .fold(f64::INFINITY, f64::min)
}

/// Largest |d(α)·e_i| for d(α) = cos α · from + sin α · toward, α ∈ [0, sweep].
pub(crate) fn max_projection(from: Point3, toward: Point3, sweep: f64, axis: usize) -> f64 {
    let a = from.axis(axis);
    let b = toward.axis(axis);
    let amplitude = a.hypot(b);
    if amplitude < AXIS_EPS {
        return 0.0;
    }
    // |a cos α + b sin α| peaks where tan α = b / a, every π
    let stationary = b.atan2(a).rem_euclid(std::f64::consts::PI);
    if stationary <= sweep {
        amplitude
    } else {
        let (s, c) = sweep.sin_cos();
        a.abs().max((a * c + b * s).abs())
    }
}

/// Limit of a quantity whose direction sweeps `sweep` radians from `from`
/// towards the perpendicular unit vector `toward`.
pub(crate) fn swept(from: Point3, toward: Point3, sweep: f64, per_axis: [f64; 3]) -> f64 {
    (0..3)
        .filter_map(|i| {
            let c = max_projection(from, toward, sweep, i);
            (c >= AXIS_EPS).then(|| per_axis[i] / c)
        })
        .fold(f64::INFINITY, f64::min)
}

/// Effective path limit while the direction turns from `t1` to `t2`
/// through `beta` radians.
///
/// On each axis the worst projection is the full limit when the direction
/// passes through the axis inside the sweep, otherwise the larger endpoint
/// projection. Axes the sweep never touches are ignored; the result is the
/// minimum over the remaining axes.
pub fn directional_capacity(
    t1: Point3,
    t2: Point3,
    beta: f64,
    per_axis: [f64; 3],
) -> Result<f64, ModelError> {
    check_unit(t1, "t1")?;
    check_unit(t2, "t2")?;
    if !(0.0..=std::f64::consts::PI).contains(&beta) {
        return Err(ModelError::Domain(format!("sweep angle {beta} outside [0, π]")));
    }
    let Some(toward) = (t2 - t1 * t1.dot(t2)).normalized() else {
        // no sweep: both ends share (or oppose) one direction
        return Ok(along(t1, per_axis).min(along(t2, per_axis)));
    };
    Ok(swept(t1, toward, beta, per_axis))
}
