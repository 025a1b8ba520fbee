use std::cmp::Ordering;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::capacity::{along, directional_capacity};
use super::{LimitKind, MachineLimits, ModelError};
use crate::geometry::{block_length, tangent_at, Block, End, Point3, ANGLE_TOL};

/// The constraint that sets a predicted feed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Binding {
    Vmax,
    Acceleration,
    Jerk,
    /// Interpolation-time cap of an adjacent short block.
    BlockLength,
    /// No limit applies.
    None,
}

impl Binding {
    /// Same spelling as the serialized form.
    pub fn name(self) -> &'static str {
        match self {
            Binding::Vmax => "vmax",
            Binding::Acceleration => "acceleration",
            Binding::Jerk => "jerk",
            Binding::BlockLength => "block_length",
            Binding::None => "none",
        }
    }
}

/// Radius of the arc the controller inserts at a corner with turn angle
/// `beta`, given the adjacent block lengths and the interpolation tolerance.
///
/// `R = min(tit·cos(β/2)/(1−cos(β/2)), l/(2·sin(β/2)) − tit)`, `l = min(L1, L2)`,
/// clamped at zero.
pub fn corner_radius(beta: f64, l1: f64, l2: f64, tit: f64) -> Result<f64, ModelError> {
    if !(beta > 0.0 && beta < PI) {
        return Err(ModelError::Domain(format!("turn angle {beta} outside (0, π)")));
    }
    if !(l1 > 0.0 && l2 > 0.0) {
        return Err(ModelError::Domain(format!("block lengths must be positive ({l1}, {l2})")));
    }
    if tit.is_nan() || tit < 0.0 {
        return Err(ModelError::Domain(format!("tolerance {tit} must be non-negative")));
    }
    let half = beta / 2.0;
    // 1 − cos(β/2) = 2 sin²(β/4), stable for small β
    let versine = 2.0 * (beta / 4.0).sin().powi(2);
    let tolerance_bound = tit * half.cos() / versine;
    let length_bound = l1.min(l2) / (2.0 * half.sin()) - tit;
    Ok(tolerance_bound.min(length_bound).max(0.0))
}

/// Corner crossing prediction for a tangential discontinuity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CornerModel1Result {
    pub turn_angle: f64,
    /// Radius of the inserted arc, mm.
    pub inserted_radius: f64,
    /// Normal-acceleration capacity over the inserted arc, mm/s².
    pub accel_capacity: f64,
    /// Tangential-jerk capacity over the inserted arc, mm/s³.
    pub jerk_capacity: f64,
    /// Feed capacity over the inserted arc, mm/s.
    pub vmax_t: f64,
    pub v_fa: f64,
    pub v_fjerk: f64,
    pub v_limit: f64,
    pub binding: Binding,
}

/// Feed limit at the corner between `b1` and `b2`.
///
/// The corner is rounded by an arc of [`corner_radius`]; at its slowest point
/// the feed is steady, so it is bounded by normal acceleration
/// (`√(a·R)`), tangential jerk (`∛(J·R²)`) and the feed capacity, each
/// projected onto the axes over the directions the arc sweeps. Full
/// reversals and zero radii force a stop.
pub fn model1_junction_feed(
    b1: &Block,
    b2: &Block,
    beta: f64,
    machine: &MachineLimits,
) -> Result<CornerModel1Result, ModelError> {
    if !(beta > 0.0 && beta <= PI) {
        return Err(ModelError::Domain(format!("turn angle {beta} outside (0, π]")));
    }
    let t1 = tangent_at(b1, End::End)?;
    let t2 = tangent_at(b2, End::Start)?;
    let stop = |inserted_radius: f64, accel_capacity: f64, jerk_capacity: f64, vmax_t: f64| CornerModel1Result {
        turn_angle: beta,
        inserted_radius,
        accel_capacity,
        jerk_capacity,
        vmax_t,
        v_fa: 0.0,
        v_fjerk: 0.0,
        v_limit: 0.0,
        binding: Binding::Jerk,
    };
    if beta >= PI - ANGLE_TOL {
        return Ok(stop(0.0, 0.0, 0.0, 0.0));
    }

    let radius = corner_radius(beta, block_length(b1), block_length(b2), machine.tit)?;
    let vmax_t = directional_capacity(t1, t2, beta, machine.per_axis(LimitKind::Velocity))?;
    let jerk = directional_capacity(t1, t2, beta, machine.per_axis(LimitKind::Jerk))?;
    // the arc normal turns with the tangent, starting perpendicular to t1
    let n1 = (t2 - t1 * t1.dot(t2))
        .normalized()
        .ok_or_else(|| ModelError::Domain("corner has no turning plane".into()))?;
    let n2 = (t1 * -beta.sin() + n1 * beta.cos()).normalized().unwrap_or(n1);
    let accel = directional_capacity(n1, n2, beta, machine.per_axis(LimitKind::Acceleration))?;

    if radius <= 0.0 {
        return Ok(stop(0.0, accel, jerk, vmax_t));
    }
    let v_fa = (accel * radius).sqrt();
    let v_fjerk = (jerk * radius * radius).cbrt();
    let v_limit = vmax_t.min(v_fa).min(v_fjerk);
    let binding = if v_fjerk <= v_fa.min(vmax_t) {
        Binding::Jerk
    } else if v_fa <= vmax_t {
        Binding::Acceleration
    } else {
        Binding::Vmax
    };
    Ok(CornerModel1Result {
        turn_angle: beta,
        inserted_radius: radius,
        accel_capacity: accel,
        jerk_capacity: jerk,
        vmax_t,
        v_fa,
        v_fjerk,
        v_limit,
        binding,
    })
}

/// Tangential jerk capacity at a curvature discontinuity crossed along `t`:
/// the smallest `J_i / |t·e_i|`.
pub fn tangential_jerk(t: Point3, machine: &MachineLimits) -> f64 {
    along(t, machine.per_axis(LimitKind::Jerk))
}

/// Feed capacity along `t`.
pub fn tangential_vmax(t: Point3, machine: &MachineLimits) -> f64 {
    along(t, machine.per_axis(LimitKind::Velocity))
}

/// Crossing feed between a straight block and an arc of radius `radius`:
/// `√(J·δt·R)`, capped by the feed capacity along `t`.
pub fn model2_seg_arc_feed(radius: f64, t: Point3, machine: &MachineLimits) -> f64 {
    let jerk = tangential_jerk(t, machine);
    (jerk * machine.delta_t * radius).sqrt().min(tangential_vmax(t, machine))
}

/// Result of a model that may impose no limit at all.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeedLimit {
    Bounded(f64),
    Unbounded,
}

impl FeedLimit {
    pub fn value(self) -> f64 {
        match self {
            FeedLimit::Bounded(v) => v,
            FeedLimit::Unbounded => f64::INFINITY,
        }
    }
}

/// Crossing feed between two tangent arcs of radii `r1` then `r2`:
/// `√(R1·R2·J·δt / |R1 − R2|)`, capped by the feed capacity along `t`.
///
/// Arcs bending to opposite sides jump by the sum of their curvatures, so
/// the denominator becomes `R1 + R2`.
pub fn model2_arc_arc_feed(
    r1: f64,
    r2: f64,
    opposite_turn: bool,
    t: Point3,
    machine: &MachineLimits,
) -> FeedLimit {
    let spread = if opposite_turn { r1 + r2 } else { (r1 - r2).abs() };
    if spread == 0.0 {
        return FeedLimit::Unbounded;
    }
    let jerk = tangential_jerk(t, machine);
    let v = (r1 * r2 * jerk * machine.delta_t / spread).sqrt();
    FeedLimit::Bounded(v.min(tangential_vmax(t, machine)))
}

/// A length kept as an unevaluated sum `value + residual`.
///
/// [`min_block_length`] keeps the rounding error of its product here so that
/// [`block_feed_cap`] inverts it exactly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExactLength {
    pub value: f64,
    pub residual: f64,
}

impl ExactLength {
    pub fn mm(self) -> f64 {
        self.value
    }

    /// Compares a measured length against this one without rounding.
    pub fn cmp_length(self, length: f64) -> Ordering {
        length
            .partial_cmp(&self.value)
            .unwrap_or(Ordering::Equal)
            .then(0.0f64.partial_cmp(&self.residual).unwrap_or(Ordering::Equal))
    }

    pub fn scaled(self, k: f64) -> ExactLength {
        let value = self.value * k;
        let residual = self.value.mul_add(k, -value) + self.residual * k;
        ExactLength { value, residual }
    }
}

impl From<f64> for ExactLength {
    fn from(value: f64) -> Self {
        ExactLength { value, residual: 0.0 }
    }
}

/// Shortest block the controller can process at `v_programmed` within one
/// interpolation period: `L = v·t_int`.
pub fn min_block_length(v_programmed: f64, t_int: f64) -> ExactLength {
    let value = v_programmed * t_int;
    let residual = v_programmed.mul_add(t_int, -value);
    ExactLength { value, residual }
}

/// Highest feed at which a block of `length` still takes one interpolation
/// period: `length / t_int`.
pub fn block_feed_cap(length: impl Into<ExactLength>, t_int: f64) -> f64 {
    let ExactLength { value, residual } = length.into();
    let q = value / t_int;
    let r = (-q).mul_add(t_int, value) + residual;
    q + r / t_int
}
