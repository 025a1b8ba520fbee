//! Runs the behaviour models over a tool path and classifies the result.
//!
//! Every block gets a length record against the controller's minimal block
//! length. Every junction between two cutting blocks is classified; corners
//! go through the corner-rounding model, curvature jumps through the
//! curvature-crossing model, smooth junctions produce no record.

mod cycle_time;
mod report;
mod severity;

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use cycle_time::estimate_cycle_time;
pub use report::{
    BlockAnalysis, Histograms, JunctionAnalysis, LengthHistogram, PathSummary, Report, SeverityHistogram, SCHEMA,
};
pub use severity::{classify_severity, reduction_pct, LengthClass, SeverityBins, SeverityClass};

use crate::geometry::{block_length, classify_junction, tangent_at, End, JunctionKind, ToolPath, ANGLE_TOL, CURVATURE_TOL};
use crate::kinematics::{
    block_feed_cap, min_block_length, model1_junction_feed, model2_arc_arc_feed, model2_seg_arc_feed,
    tangential_vmax, Binding, ConfigError, FeedLimit, MachineLimits, ModelError,
};

#[derive(Debug, Error)]
pub enum AnalyzeError {
    #[error("tool path has no blocks")]
    EmptyPath,
    #[error(transparent)]
    Machine(#[from] ConfigError),
    #[error("invalid options: {0}")]
    Options(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AnalyzeOptions {
    /// rad
    pub angle_tol: f64,
    /// 1/mm
    pub curvature_tol: f64,
    pub bins: SeverityBins,
    /// Blocks shorter than `marginal_factor · L` are Marginal.
    pub marginal_factor: f64,
    /// Start and end the cycle-time estimate at rest.
    pub rest_at_ends: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            angle_tol: ANGLE_TOL,
            curvature_tol: CURVATURE_TOL,
            bins: SeverityBins::default(),
            marginal_factor: 2.0,
            rest_at_ends: true,
        }
    }
}

impl AnalyzeOptions {
    pub fn validate(&self) -> Result<(), AnalyzeError> {
        self.bins.validate().map_err(AnalyzeError::Options)?;
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(AnalyzeError::Options(format!("{name} must be positive, got {v}")))
            }
        };
        positive("angle_tol", self.angle_tol)?;
        positive("curvature_tol", self.curvature_tol)?;
        if !(self.marginal_factor >= 1.0 && self.marginal_factor.is_finite()) {
            return Err(AnalyzeError::Options(format!(
                "marginal_factor must be at least 1, got {}",
                self.marginal_factor
            )));
        }
        Ok(())
    }
}

fn analyze_block(
    index: usize,
    path: &ToolPath,
    machine: &MachineLimits,
    options: &AnalyzeOptions,
) -> BlockAnalysis {
    let b = &path.blocks()[index];
    let length = block_length(b);
    if b.rapid {
        return BlockAnalysis {
            index,
            source_line: b.source_line,
            rapid: true,
            length,
            programmed_feed: cycle_time::nominal_feed(b, machine),
            min_length: 0.0,
            feed_cap: f64::INFINITY,
            length_class: LengthClass::Ok,
        };
    }
    let min_len = min_block_length(b.feed, machine.t_int);
    let length_class = if min_len.cmp_length(length) == Ordering::Less {
        LengthClass::Critical
    } else if min_len.scaled(options.marginal_factor).cmp_length(length) == Ordering::Less {
        LengthClass::Marginal
    } else {
        LengthClass::Ok
    };
    BlockAnalysis {
        index,
        source_line: b.source_line,
        rapid: false,
        length,
        programmed_feed: b.feed,
        min_length: min_len.mm(),
        feed_cap: block_feed_cap(length, machine.t_int),
        length_class,
    }
}

fn analyze_junction(
    index: usize,
    path: &ToolPath,
    block_records: &[BlockAnalysis],
    machine: &MachineLimits,
    options: &AnalyzeOptions,
) -> Result<Option<JunctionAnalysis>, AnalyzeError> {
    let (b1, b2) = (&path.blocks()[index], &path.blocks()[index + 1]);
    let kind = classify_junction(b1, b2, options.angle_tol, options.curvature_tol)
        .map_err(ModelError::from)?;
    let t = tangent_at(b2, End::Start).map_err(ModelError::from)?;

    let (predicted, binding, corner) = match kind {
        JunctionKind::Smooth => return Ok(None),
        JunctionKind::Tangential { turn_angle } => {
            let res = if turn_angle >= std::f64::consts::PI - options.angle_tol {
                // full reversal
                model1_junction_feed(b1, b2, std::f64::consts::PI, machine)?
            } else {
                model1_junction_feed(b1, b2, turn_angle, machine)?
            };
            let cap = block_records[index].feed_cap.min(block_records[index + 1].feed_cap);
            if cap < res.v_limit {
                (cap, Binding::BlockLength, Some(res))
            } else {
                (res.v_limit, res.binding, Some(res))
            }
        }
        JunctionKind::Curvature { r_before, r_after, opposite_turn } => {
            let limit = match (r_before.is_finite(), r_after.is_finite()) {
                (true, true) => model2_arc_arc_feed(r_before, r_after, opposite_turn, t, machine),
                (false, true) => FeedLimit::Bounded(model2_seg_arc_feed(r_after, t, machine)),
                (true, false) => FeedLimit::Bounded(model2_seg_arc_feed(r_before, t, machine)),
                (false, false) => FeedLimit::Unbounded,
            };
            match limit {
                FeedLimit::Unbounded => (f64::INFINITY, Binding::None, None),
                FeedLimit::Bounded(v) if v >= tangential_vmax(t, machine) => (v, Binding::Vmax, None),
                FeedLimit::Bounded(v) => (v, Binding::Jerk, None),
            }
        }
    };

    let programmed = b1.feed.min(b2.feed);
    let reduction = reduction_pct(predicted, programmed);
    Ok(Some(JunctionAnalysis {
        index,
        source_line: b2.source_line,
        kind,
        predicted_feed: predicted,
        programmed_feed: programmed,
        reduction_pct: reduction,
        severity: options.bins.classify(reduction),
        binding,
        location: b1.end(),
        corner,
    }))
}

/// Analyzes `path` on `machine`. The result depends only on the inputs.
pub fn analyze(path: &ToolPath, machine: &MachineLimits, options: &AnalyzeOptions) -> Result<Report, AnalyzeError> {
    if path.is_empty() {
        return Err(AnalyzeError::EmptyPath);
    }
    machine.validate()?;
    options.validate()?;

    let blocks: Vec<BlockAnalysis> = (0..path.len()).map(|i| analyze_block(i, path, machine, options)).collect();

    let mut junctions = Vec::new();
    let mut notes = Vec::new();
    for i in 0..path.len().saturating_sub(1) {
        let (b1, b2) = (&path.blocks()[i], &path.blocks()[i + 1]);
        if b1.rapid || b2.rapid {
            if b1.rapid != b2.rapid {
                notes.push(format!(
                    "junction {i} (line {}) at a rapid boundary skipped",
                    b2.source_line
                ));
            }
            continue;
        }
        if let Some(j) = analyze_junction(i, path, &blocks, machine, options)? {
            junctions.push(j);
        }
    }

    let mut histograms = Histograms::default();
    for b in &blocks {
        histograms.length.add(b.length_class);
    }
    for j in &junctions {
        histograms.severity.add(j.severity);
    }

    let programmed_cycle_time = path
        .blocks()
        .iter()
        .map(|b| block_length(b) / cycle_time::nominal_feed(b, machine))
        .sum();
    let estimated = estimate_cycle_time(path, &junctions, &blocks, machine, options.rest_at_ends);

    Ok(Report {
        schema: SCHEMA.to_string(),
        path: PathSummary { block_count: path.len(), total_length: path.total_length(), programmed_cycle_time },
        machine: machine.to_config(),
        options: *options,
        blocks,
        junctions,
        histograms,
        estimated_cycle_time: estimated,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gcode::parse_program;
    use crate::geometry::Point3;
    use crate::kinematics::AxisLimits;

    fn machine() -> MachineLimits {
        MachineLimits::uniform(AxisLimits::new(500.0, 2000.0, 30000.0), 0.01, 0.012, 0.01)
    }

    fn run(src: &str) -> Report {
        let (path, diags) = parse_program(src, Point3::ORIGIN);
        assert!(diags.is_empty(), "{diags:?}");
        analyze(&path, &machine(), &AnalyzeOptions::default()).unwrap()
    }

    #[test]
    fn empty_path_is_an_error() {
        assert!(matches!(
            analyze(&ToolPath::default(), &machine(), &AnalyzeOptions::default()),
            Err(AnalyzeError::EmptyPath)
        ));
    }

    #[test]
    fn collinear_blocks_have_no_junction() {
        let r = run("G1 X10 F600\nX20");
        assert!(r.junctions.is_empty());
        assert_eq!(r.histograms.severity.total(), 0);
        assert_eq!(r.histograms.length.total(), 2);
    }

    #[test]
    fn reversal_is_severe_stop() {
        let r = run("G1 X10 F600\nX0");
        assert_eq!(r.junctions.len(), 1);
        assert_eq!(r.junctions[0].predicted_feed, 0.0);
        assert_eq!(r.junctions[0].severity, SeverityClass::Severe);
    }

    #[test]
    fn rapid_boundary_is_noted() {
        let r = run("G0 X5\nG1 X10 Y5 F600\nY20");
        assert_eq!(r.notes.len(), 1);
        assert_eq!(r.blocks[0].length_class, LengthClass::Ok);
        assert!(r.blocks[0].feed_cap.is_infinite());
        assert_eq!(r.junctions.len(), 1);
    }

    #[test]
    fn marginal_band() {
        // F6000 → 100 mm/s, L = 1.2 mm
        let r = run("G1 X1 F6000\nX3\nX10");
        let classes: Vec<_> = r.blocks.iter().map(|b| b.length_class).collect();
        assert_eq!(classes, vec![LengthClass::Critical, LengthClass::Marginal, LengthClass::Ok]);
    }

    #[test]
    fn corner_clamped_by_short_blocks() {
        // 0.1 mm zigzag at high feed: block caps (8.3 mm/s) sit below the corner feed on a big tolerance
        let m = MachineLimits { tit: 5.0, ..machine() };
        let (path, _) = parse_program("G1 X0.1 F6000\nY0.1\nX0.2", Point3::ORIGIN);
        let r = analyze(&path, &m, &AnalyzeOptions::default()).unwrap();
        for j in &r.junctions {
            assert!(j.predicted_feed <= r.blocks[j.index].feed_cap);
        }
    }

    #[test]
    fn curvature_dispatch() {
        // line into arc into reversed arc
        let r = run("G1 X10 F600\nG3 X20 Y10 I0 J10\nG2 X30 Y20 I10 J0");
        assert_eq!(r.junctions.len(), 2);
        let t = Point3::new(1.0, 0.0, 0.0);
        let expected = model2_seg_arc_feed(10.0, t, &machine());
        assert!((r.junctions[0].predicted_feed - expected).abs() < 1e-9);
        match r.junctions[1].kind {
            JunctionKind::Curvature { opposite_turn, .. } => assert!(opposite_turn),
            k => panic!("{k:?}"),
        }
    }

    #[test]
    fn cycle_time_not_below_ideal() {
        let r = run("G1 X10 F3000\nY10\nG2 X20 Y20 I10 J0\nG1 X0.5\nY0");
        assert!(r.estimated_cycle_time >= r.path.programmed_cycle_time);
    }

    #[test]
    fn options_are_validated() {
        let (path, _) = parse_program("G1 X10 F600", Point3::ORIGIN);
        let bad = AnalyzeOptions { bins: SeverityBins { moderate: 60.0, high: 50.0, severe: 90.0 }, ..Default::default() };
        assert!(matches!(analyze(&path, &machine(), &bad), Err(AnalyzeError::Options(_))));
    }
}
