use serde::{Deserialize, Serialize};

use super::severity::{LengthClass, SeverityClass};
use super::AnalyzeOptions;
use crate::geometry::{JunctionKind, Point3};
use crate::kinematics::{Binding, CornerModel1Result, MachineConfig};

pub const SCHEMA: &str = "kerf-report/1";

/// Prediction at the junction between blocks `index` and `index + 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JunctionAnalysis {
    pub index: usize,
    /// Source line of the block that follows the junction.
    pub source_line: usize,
    pub kind: JunctionKind,
    /// mm/s; `null` in JSON when no model limits the crossing.
    #[serde(with = "crate::serde_inf")]
    pub predicted_feed: f64,
    /// Lower of the two adjacent programmed feeds, mm/s.
    pub programmed_feed: f64,
    pub reduction_pct: f64,
    pub severity: SeverityClass,
    pub binding: Binding,
    pub location: Point3,
    /// Corner-rounding details for tangential junctions.
    pub corner: Option<CornerModel1Result>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockAnalysis {
    pub index: usize,
    pub source_line: usize,
    pub rapid: bool,
    pub length: f64,
    pub programmed_feed: f64,
    /// Shortest block processable at the programmed feed, mm.
    pub min_length: f64,
    /// Highest feed the controller sustains on this block, mm/s.
    #[serde(with = "crate::serde_inf")]
    pub feed_cap: f64,
    pub length_class: LengthClass,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SeverityHistogram {
    #[serde(rename = "None")]
    pub none: usize,
    #[serde(rename = "Moderate")]
    pub moderate: usize,
    #[serde(rename = "High")]
    pub high: usize,
    #[serde(rename = "Severe")]
    pub severe: usize,
}

impl SeverityHistogram {
    pub fn add(&mut self, class: SeverityClass) {
        *self.slot(class) += 1;
    }

    pub fn get(&self, class: SeverityClass) -> usize {
        match class {
            SeverityClass::None => self.none,
            SeverityClass::Moderate => self.moderate,
            SeverityClass::High => self.high,
            SeverityClass::Severe => self.severe,
        }
    }

    fn slot(&mut self, class: SeverityClass) -> &mut usize {
        match class {
            SeverityClass::None => &mut self.none,
            SeverityClass::Moderate => &mut self.moderate,
            SeverityClass::High => &mut self.high,
            SeverityClass::Severe => &mut self.severe,
        }
    }

    pub fn total(&self) -> usize {
        self.none + self.moderate + self.high + self.severe
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct LengthHistogram {
    #[serde(rename = "Critical")]
    pub critical: usize,
    #[serde(rename = "Marginal")]
    pub marginal: usize,
    #[serde(rename = "Ok")]
    pub ok: usize,
}

impl LengthHistogram {
    pub fn add(&mut self, class: LengthClass) {
        match class {
            LengthClass::Critical => self.critical += 1,
            LengthClass::Marginal => self.marginal += 1,
            LengthClass::Ok => self.ok += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.critical + self.marginal + self.ok
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Histograms {
    pub severity: SeverityHistogram,
    pub length: LengthHistogram,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathSummary {
    pub block_count: usize,
    /// mm
    pub total_length: f64,
    /// Time at programmed feed with no kinematic losses, s.
    pub programmed_cycle_time: f64,
}

/// The full result of one analysis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub path: PathSummary,
    pub machine: MachineConfig,
    pub options: AnalyzeOptions,
    pub blocks: Vec<BlockAnalysis>,
    pub junctions: Vec<JunctionAnalysis>,
    pub histograms: Histograms,
    /// s
    pub estimated_cycle_time: f64,
    pub notes: Vec<String>,
}

impl Report {
    /// The junction with the largest reduction, first one on ties.
    pub fn worst_junction(&self) -> Option<&JunctionAnalysis> {
        self.junctions.iter().fold(None, |worst: Option<&JunctionAnalysis>, j| match worst {
            Some(w) if w.reduction_pct >= j.reduction_pct => Some(w),
            _ => Some(j),
        })
    }
}
