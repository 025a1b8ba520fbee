use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SeverityClass {
    None,
    Moderate,
    High,
    Severe,
}

impl SeverityClass {
    pub const ALL: [SeverityClass; 4] =
        [SeverityClass::None, SeverityClass::Moderate, SeverityClass::High, SeverityClass::Severe];

    pub fn name(self) -> &'static str {
        match self {
            SeverityClass::None => "None",
            SeverityClass::Moderate => "Moderate",
            SeverityClass::High => "High",
            SeverityClass::Severe => "Severe",
        }
    }
}

/// Lower edges (inclusive) of the Moderate, High and Severe classes, in
/// percent of feed reduction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeverityBins {
    pub moderate: f64,
    pub high: f64,
    pub severe: f64,
}

impl Default for SeverityBins {
    fn default() -> Self {
        SeverityBins { moderate: 10.0, high: 50.0, severe: 90.0 }
    }
}

impl SeverityBins {
    pub fn validate(&self) -> Result<(), String> {
        let ok = 0.0 < self.moderate
            && self.moderate < self.high
            && self.high < self.severe
            && self.severe <= 100.0;
        if ok {
            Ok(())
        } else {
            Err(format!(
                "severity bin edges must satisfy 0 < moderate < high < severe <= 100, got {}/{}/{}",
                self.moderate, self.high, self.severe
            ))
        }
    }

    pub fn classify(&self, reduction_pct: f64) -> SeverityClass {
        if reduction_pct >= self.severe {
            SeverityClass::Severe
        } else if reduction_pct >= self.high {
            SeverityClass::High
        } else if reduction_pct >= self.moderate {
            SeverityClass::Moderate
        } else {
            SeverityClass::None
        }
    }
}

/// Classifies a feed reduction with the default bins.
pub fn classify_severity(reduction_pct: f64) -> SeverityClass {
    SeverityBins::default().classify(reduction_pct)
}

/// Percentage by which `predicted` falls short of `programmed`, in [0, 100].
pub fn reduction_pct(predicted: f64, programmed: f64) -> f64 {
    if programmed <= 0.0 || predicted.is_nan() {
        return 0.0;
    }
    (100.0 * (1.0 - predicted / programmed)).clamp(0.0, 100.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LengthClass {
    /// Shorter than the minimal block length L.
    Critical,
    /// In [L, 2L).
    Marginal,
    Ok,
}

impl LengthClass {
    pub fn name(self) -> &'static str {
        match self {
            LengthClass::Critical => "Critical",
            LengthClass::Marginal => "Marginal",
            LengthClass::Ok => "Ok",
        }
    }
}
