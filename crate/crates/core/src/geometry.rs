//! Tool-path geometry: points, linear and circular blocks, tangents,
//! curvature and junction classification.
//!
//! Arcs live in one of the three principal planes. Their orientation follows
//! the G-code convention: a clockwise arc turns clockwise when the plane is
//! viewed from the positive side of its normal axis (+Z for XY, +Y for ZX,
//! +X for YZ).

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Maximum gap between consecutive blocks, mm.
pub const CONNECTION_TOL: f64 = 1e-6;
/// Turn angle below which a junction is tangent-continuous, rad.
pub const ANGLE_TOL: f64 = 1e-4;
/// Curvature jump below which a junction is smooth, 1/mm.
pub const CURVATURE_TOL: f64 = 1e-6;
/// Radius mismatch allowed between the two ends of an arc, mm.
pub const ARC_RADIUS_TOL: f64 = 1e-6;
/// Shortest representable block or radius, mm.
pub const MIN_EXTENT: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),
    #[error("blocks {index} and {next} are not connected (gap {gap:.3e} mm)")]
    Disconnected { index: usize, next: usize, gap: f64 },
}

/// A point or vector in machine coordinates, millimetres.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const ORIGIN: Point3 = Point3 { x: 0.0, y: 0.0, z: 0.0 };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn dot(self, o: Point3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Point3) -> Point3 {
        Point3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn distance(self, o: Point3) -> f64 {
        (self - o).norm()
    }

    /// Unit vector in the same direction, or `None` for a (near) zero vector.
    pub fn normalized(self) -> Option<Point3> {
        let n = self.norm();
        (n > MIN_EXTENT).then(|| self * (1.0 / n))
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    /// Component along machine axis 0 (X), 1 (Y) or 2 (Z).
    pub fn axis(self, i: usize) -> f64 {
        match i {
            0 => self.x,
            1 => self.y,
            2 => self.z,
            _ => panic!("axis index {i} out of range"),
        }
    }
}

impl Add for Point3 {
    type Output = Point3;
    fn add(self, o: Point3) -> Point3 {
        Point3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Point3 {
    type Output = Point3;
    fn sub(self, o: Point3) -> Point3 {
        Point3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Point3 {
    type Output = Point3;
    fn mul(self, k: f64) -> Point3 {
        Point3::new(self.x * k, self.y * k, self.z * k)
    }
}

impl Neg for Point3 {
    type Output = Point3;
    fn neg(self) -> Point3 {
        Point3::new(-self.x, -self.y, -self.z)
    }
}

impl fmt::Display for Point3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:.4}, {:.4}, {:.4})", self.x, self.y, self.z)
    }
}

/// Principal interpolation plane (G17 / G18 / G19).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Plane {
    #[default]
    Xy,
    Xz,
    Yz,
}

impl Plane {
    /// Positive normal used to orient arcs in this plane.
    pub fn normal(self) -> Point3 {
        match self {
            Plane::Xy => Point3::new(0.0, 0.0, 1.0),
            Plane::Xz => Point3::new(0.0, 1.0, 0.0),
            Plane::Yz => Point3::new(1.0, 0.0, 0.0),
        }
    }

    pub fn gcode(self) -> &'static str {
        match self {
            Plane::Xy => "G17",
            Plane::Xz => "G18",
            Plane::Yz => "G19",
        }
    }

    /// Removes the normal component of `v`.
    pub fn project(self, v: Point3) -> Point3 {
        let n = self.normal();
        v - n * v.dot(n)
    }
}

/// Where on a block a quantity is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum End {
    Start,
    End,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Motion {
    Linear {
        start: Point3,
        end: Point3,
    },
    Arc {
        start: Point3,
        end: Point3,
        center: Point3,
        plane: Plane,
        clockwise: bool,
    },
}

/// One motion block of a tool path.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Block {
    pub motion: Motion,
    /// Programmed feed, mm/s. Zero is allowed for rapid blocks.
    pub feed: f64,
    pub rapid: bool,
    pub source_line: usize,
}

impl Block {
    pub fn linear(start: Point3, end: Point3, feed: f64) -> Result<Block, GeometryError> {
        Block::new(Motion::Linear { start, end }, feed, false, 0)
    }

    pub fn arc(
        start: Point3,
        end: Point3,
        center: Point3,
        plane: Plane,
        clockwise: bool,
        feed: f64,
    ) -> Result<Block, GeometryError> {
        Block::new(
            Motion::Arc { start, end, center, plane, clockwise },
            feed,
            false,
            0,
        )
    }

    pub fn new(
        motion: Motion,
        feed: f64,
        rapid: bool,
        source_line: usize,
    ) -> Result<Block, GeometryError> {
        let block = Block { motion, feed, rapid, source_line };
        block.validate()?;
        Ok(block)
    }

    pub fn with_line(mut self, source_line: usize) -> Block {
        self.source_line = source_line;
        self
    }

    pub fn with_rapid(mut self, rapid: bool) -> Block {
        self.rapid = rapid;
        self
    }

    pub fn validate(&self) -> Result<(), GeometryError> {
        let bad = |msg: String| Err(GeometryError::InvalidGeometry(msg));
        if !(self.feed.is_finite() && (self.feed > 0.0 || (self.rapid && self.feed >= 0.0))) {
            return bad(format!("feed {} must be positive", self.feed));
        }
        match self.motion {
            Motion::Linear { start, end } => {
                if !start.is_finite() || !end.is_finite() {
                    return bad("non-finite coordinate".into());
                }
                if start.distance(end) <= MIN_EXTENT {
                    return bad(format!("zero-length segment at {start}"));
                }
            }
            Motion::Arc { start, end, center, plane, .. } => {
                if !start.is_finite() || !end.is_finite() || !center.is_finite() {
                    return bad("non-finite coordinate".into());
                }
                let n = plane.normal();
                if (center - start).dot(n).abs() > ARC_RADIUS_TOL
                    || (end - start).dot(n).abs() > ARC_RADIUS_TOL
                {
                    return bad(format!("arc at {start} leaves its {} plane", plane.gcode()));
                }
                let r0 = start.distance(center);
                let r1 = end.distance(center);
                if r0 <= MIN_EXTENT {
                    return bad(format!("zero-radius arc at {start}"));
                }
                if (r0 - r1).abs() > ARC_RADIUS_TOL {
                    return bad(format!("arc radii differ: {r0} vs {r1}"));
                }
            }
        }
        Ok(())
    }

    pub fn start(&self) -> Point3 {
        match self.motion {
            Motion::Linear { start, .. } | Motion::Arc { start, .. } => start,
        }
    }

    pub fn end(&self) -> Point3 {
        match self.motion {
            Motion::Linear { end, .. } | Motion::Arc { end, .. } => end,
        }
    }

    pub fn is_arc(&self) -> bool {
        matches!(self.motion, Motion::Arc { .. })
    }

    /// Arc radius, or `None` for a straight block.
    pub fn radius(&self) -> Option<f64> {
        match self.motion {
            Motion::Linear { .. } => None,
            Motion::Arc { start, center, .. } => Some(start.distance(center)),
        }
    }

    /// Swept angle of an arc in (0, 2π]; `None` for a straight block.
    pub fn sweep(&self) -> Option<f64> {
        match self.motion {
            Motion::Linear { .. } => None,
            Motion::Arc { start, end, center, plane, clockwise } => {
                Some(arc_sweep(start, end, center, plane, clockwise))
            }
        }
    }

    /// Point at arc-length fraction `s` ∈ [0, 1].
    pub fn point_at(&self, s: f64) -> Point3 {
        match self.motion {
            Motion::Linear { start, end } => start + (end - start) * s,
            Motion::Arc { start, center, plane, clockwise, end } => {
                let sweep = arc_sweep(start, end, center, plane, clockwise);
                let dir = if clockwise { -1.0 } else { 1.0 };
                center + rotate(start - center, plane.normal(), dir * sweep * s)
            }
        }
    }
}

/// Rotates `r` (perpendicular to unit `axis`) by `angle` about `axis`.
fn rotate(r: Point3, axis: Point3, angle: f64) -> Point3 {
    let (s, c) = angle.sin_cos();
    r * c + axis.cross(r) * s
}

fn arc_sweep(start: Point3, end: Point3, center: Point3, plane: Plane, clockwise: bool) -> f64 {
    let n = plane.normal();
    let r0 = start - center;
    let r1 = end - center;
    let ccw_angle = n.dot(r0.cross(r1)).atan2(r0.dot(r1));
    let signed = if clockwise { -ccw_angle } else { ccw_angle };
    let sweep = signed.rem_euclid(TAU);
    // start == end is a full circle
    if sweep <= 1e-12 || start.distance(end) <= MIN_EXTENT {
        TAU
    } else {
        sweep
    }
}

/// Unit tangent in the direction of travel at one end of `block`.
pub fn tangent_at(block: &Block, at: End) -> Result<Point3, GeometryError> {
    match block.motion {
        Motion::Linear { start, end } => (end - start)
            .normalized()
            .ok_or_else(|| GeometryError::InvalidGeometry("zero-length segment".into())),
        Motion::Arc { start, end, center, plane, clockwise } => {
            let p = match at {
                End::Start => start,
                End::End => end,
            };
            let r = p - center;
            let ccw = plane.normal().cross(r);
            let t = if clockwise { -ccw } else { ccw };
            t.normalized()
                .ok_or_else(|| GeometryError::InvalidGeometry("zero-radius arc".into()))
        }
    }
}

/// Curvature vector at one end: points at the centre with magnitude 1/R.
/// Zero for straight blocks.
pub fn curvature_vector(block: &Block, at: End) -> Point3 {
    match block.motion {
        Motion::Linear { .. } => Point3::ORIGIN,
        Motion::Arc { start, end, center, .. } => {
            let p = match at {
                End::Start => start,
                End::End => end,
            };
            let to_center = center - p;
            let r2 = to_center.dot(to_center);
            to_center * (1.0 / r2)
        }
    }
}

/// Path length of a block, mm.
pub fn block_length(block: &Block) -> f64 {
    match block.motion {
        Motion::Linear { start, end } => start.distance(end),
        Motion::Arc { .. } => block.radius().unwrap_or(0.0) * block.sweep().unwrap_or(0.0),
    }
}

/// Turn angle between two unit tangents, in [0, π].
pub fn turn_angle(t1: Point3, t2: Point3) -> f64 {
    t1.cross(t2).norm().atan2(t1.dot(t2))
}

/// Geometric nature of the junction between two consecutive blocks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum JunctionKind {
    Smooth,
    /// Tangent direction jumps by `turn_angle` (the exterior angle).
    Tangential { turn_angle: f64 },
    /// Tangent-continuous, curvature jumps. Radii are infinite for straight
    /// blocks. `opposite_turn` is set when both blocks are arcs bending to
    /// opposite sides.
    Curvature {
        #[serde(with = "crate::serde_inf")]
        r_before: f64,
        #[serde(with = "crate::serde_inf")]
        r_after: f64,
        opposite_turn: bool,
    },
}

impl JunctionKind {
    pub fn name(&self) -> &'static str {
        match self {
            JunctionKind::Smooth => "smooth",
            JunctionKind::Tangential { .. } => "tangential",
            JunctionKind::Curvature { .. } => "curvature",
        }
    }
}

/// Classifies the junction between `b1` and `b2`.
pub fn classify_junction(
    b1: &Block,
    b2: &Block,
    angle_tol: f64,
    curvature_tol: f64,
) -> Result<JunctionKind, GeometryError> {
    let gap = b1.end().distance(b2.start());
    if gap > CONNECTION_TOL {
        return Err(GeometryError::Disconnected { index: 0, next: 1, gap });
    }
    let t1 = tangent_at(b1, End::End)?;
    let t2 = tangent_at(b2, End::Start)?;
    let beta = turn_angle(t1, t2);
    if beta > angle_tol {
        return Ok(JunctionKind::Tangential { turn_angle: beta });
    }
    let k1 = curvature_vector(b1, End::End);
    let k2 = curvature_vector(b2, End::Start);
    if (k1 - k2).norm() > curvature_tol {
        let radius = |b: &Block| b.radius().unwrap_or(f64::INFINITY);
        let opposite_turn = b1.is_arc() && b2.is_arc() && k1.dot(k2) < 0.0;
        return Ok(JunctionKind::Curvature {
            r_before: radius(b1),
            r_after: radius(b2),
            opposite_turn,
        });
    }
    Ok(JunctionKind::Smooth)
}

/// An ordered, connected sequence of blocks.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ToolPath {
    blocks: Vec<Block>,
}

impl ToolPath {
    pub fn new(blocks: Vec<Block>) -> Result<ToolPath, GeometryError> {
        for b in &blocks {
            b.validate()?;
        }
        for (i, pair) in blocks.windows(2).enumerate() {
            let gap = pair[0].end().distance(pair[1].start());
            if gap > CONNECTION_TOL {
                return Err(GeometryError::Disconnected { index: i, next: i + 1, gap });
            }
        }
        Ok(ToolPath { blocks })
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn total_length(&self) -> f64 {
        self.blocks.iter().map(block_length).sum()
    }

    /// Axis-aligned bounding box of all blocks, including arc extremes.
    pub fn bounds(&self) -> Option<(Point3, Point3)> {
        let mut pts = self.blocks.iter().flat_map(|b| sample_block(b, 0.01));
        let first = pts.next()?;
        Some(pts.fold((first, first), |(lo, hi), p| {
            (
                Point3::new(lo.x.min(p.x), lo.y.min(p.y), lo.z.min(p.z)),
                Point3::new(hi.x.max(p.x), hi.y.max(p.y), hi.z.max(p.z)),
            )
        }))
    }
}

impl<'a> IntoIterator for &'a ToolPath {
    type Item = &'a Block;
    type IntoIter = std::slice::Iter<'a, Block>;
    fn into_iter(self) -> Self::IntoIter {
        self.blocks.iter()
    }
}

/// Samples a block as a polyline whose chord error stays below `chord_tol`.
/// Straight blocks yield their two endpoints.
pub fn sample_block(block: &Block, chord_tol: f64) -> Vec<Point3> {
    match block.motion {
        Motion::Linear { start, end } => vec![start, end],
        Motion::Arc { .. } => {
            let r = block.radius().unwrap_or(0.0);
            let sweep = block.sweep().unwrap_or(TAU);
            let step = if chord_tol >= r {
                PI / 2.0
            } else {
                (2.0 * (1.0 - chord_tol / r).acos()).min(PI / 2.0)
            };
            let n = ((sweep / step).ceil() as usize).clamp(1, 100_000);
            (0..=n).map(|i| block.point_at(i as f64 / n as f64)).collect()
        }
    }
}
