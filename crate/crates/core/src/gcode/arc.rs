use thiserror::Error;

use crate::geometry::{Plane, Point3, ARC_RADIUS_TOL};

/// Radius mismatch above which an IJK arc is rejected instead of re-projected.
pub const IJK_MISMATCH_LIMIT: f64 = 1e-3;

/// How a G2/G3 word designates its centre.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ArcDesignation {
    /// Centre offset from the start point (I, J, K).
    Offset(Point3),
    /// Signed radius. Positive selects the arc of at most π, negative the
    /// longer one.
    Radius(f64),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ArcError {
    #[error("arc radius {radius} is smaller than half the chord ({half_chord})")]
    Unrepresentable { radius: f64, half_chord: f64 },
    #[error("arc start and end radii differ by {0:.6} mm")]
    RadiusMismatch(f64),
    #[error("R-form arc cannot describe a full circle")]
    FullCircleRadius,
    #[error("zero arc radius")]
    ZeroRadius,
}

/// Difference between start and end radius for an IJK centre.
pub fn ijk_radius_mismatch(start: Point3, end: Point3, offset: Point3, plane: Plane) -> f64 {
    let center = start + plane.project(offset);
    (start.distance(center) - end.distance(center)).abs()
}

/// Resolves the centre of an arc from its designation.
///
/// IJK centres whose radii disagree by less than [`IJK_MISMATCH_LIMIT`] are
/// moved onto the chord bisector; larger mismatches are errors.
pub fn resolve_arc_center(
    start: Point3,
    end: Point3,
    designation: ArcDesignation,
    plane: Plane,
    clockwise: bool,
) -> Result<Point3, ArcError> {
    let n = plane.normal();
    match designation {
        ArcDesignation::Offset(offset) => {
            let center = start + plane.project(offset);
            let r0 = start.distance(center);
            if r0 <= crate::geometry::MIN_EXTENT {
                return Err(ArcError::ZeroRadius);
            }
            let mismatch = (r0 - end.distance(center)).abs();
            if mismatch > IJK_MISMATCH_LIMIT {
                return Err(ArcError::RadiusMismatch(mismatch));
            }
            if mismatch <= 1e-12 {
                return Ok(center);
            }
            let chord = plane.project(end - start);
            let Some(along) = chord.normalized() else {
                return Ok(center);
            };
            let mid = start + chord * 0.5;
            let across = n.cross(along);
            Ok(mid + across * (center - mid).dot(across))
        }
        ArcDesignation::Radius(r) => {
            let chord = plane.project(end - start);
            let half = chord.norm() / 2.0;
            if half <= crate::geometry::MIN_EXTENT {
                return Err(ArcError::FullCircleRadius);
            }
            let radius = r.abs();
            let h2 = radius * radius - half * half;
            let h = if h2 >= 0.0 {
                h2.sqrt()
            } else if half - radius <= ARC_RADIUS_TOL {
                0.0
            } else {
                return Err(ArcError::Unrepresentable { radius, half_chord: half });
            };
            let along = chord * (1.0 / chord.norm());
            // the short arc of a counter-clockwise move has its centre on the left
            let left = n.cross(along);
            let side = if clockwise { -1.0 } else { 1.0 } * if r > 0.0 { 1.0 } else { -1.0 };
            Ok(start + chord * 0.5 + left * (side * h))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Block;

    fn p(x: f64, y: f64) -> Point3 {
        Point3::new(x, y, 0.0)
    }

    #[test]
    fn incremental_offset() {
        let c = resolve_arc_center(
            p(0.0, 0.0),
            p(0.0, 20.0),
            ArcDesignation::Offset(p(0.0, 10.0)),
            Plane::Xy,
            true,
        )
        .unwrap();
        assert_eq!(c, p(0.0, 10.0));
    }

    #[test]
    fn radius_semicircle() {
        let c = resolve_arc_center(p(0.0, 0.0), p(10.0, 0.0), ArcDesignation::Radius(5.0), Plane::Xy, true)
            .unwrap();
        assert!(c.distance(p(5.0, 0.0)) < 1e-12);
    }

    #[test]
    fn radius_below_half_chord() {
        let e = resolve_arc_center(p(0.0, 0.0), p(10.0, 0.0), ArcDesignation::Radius(2.0), Plane::Xy, true);
        assert!(matches!(e, Err(ArcError::Unrepresentable { .. })));
    }

    #[test]
    fn radius_sign_picks_short_or_long_arc() {
        for cw in [true, false] {
            for r in [8.0, -8.0] {
                let (s, e) = (p(0.0, 0.0), p(10.0, 0.0));
                let c = resolve_arc_center(s, e, ArcDesignation::Radius(r), Plane::Xy, cw).unwrap();
                let b = Block::arc(s, e, c, Plane::Xy, cw, 1.0).unwrap();
                let sweep = b.sweep().unwrap();
                assert!((b.radius().unwrap() - 8.0).abs() < 1e-9);
                if r > 0.0 {
                    assert!(sweep <= std::f64::consts::PI, "cw={cw} r={r} sweep={sweep}");
                } else {
                    assert!(sweep > std::f64::consts::PI, "cw={cw} r={r} sweep={sweep}");
                }
            }
        }
    }

    #[test]
    fn small_ijk_mismatch_is_reprojected() {
        let (s, e) = (p(0.0, 0.0), p(20.0, 0.0));
        let off = p(10.0002, 0.0);
        assert!(ijk_radius_mismatch(s, e, off, Plane::Xy) > 1e-6);
        let c = resolve_arc_center(s, e, ArcDesignation::Offset(off), Plane::Xy, true).unwrap();
        assert!((c.distance(s) - c.distance(e)).abs() < 1e-12);
        assert!(Block::arc(s, e, c, Plane::Xy, true, 1.0).is_ok());

        let far = resolve_arc_center(s, e, ArcDesignation::Offset(p(10.5, 0.0)), Plane::Xy, true);
        assert!(matches!(far, Err(ArcError::RadiusMismatch(_))));
    }

    #[test]
    fn other_planes() {
        // G18 semicircle from X10 to X-10 through the ZX plane
        let c = resolve_arc_center(
            Point3::new(10.0, 0.0, 0.0),
            Point3::new(-10.0, 0.0, 0.0),
            ArcDesignation::Radius(10.0),
            Plane::Xz,
            false,
        )
        .unwrap();
        assert!(c.norm() < 1e-9);
    }
}
