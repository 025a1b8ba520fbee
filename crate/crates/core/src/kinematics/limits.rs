use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default interpolation time, s (Siemens 840D figure).
pub const DEFAULT_T_INT: f64 = 0.012;
/// Default curvature-discontinuity crossing time, s. Uncalibrated.
pub const DEFAULT_DELTA_T: f64 = 0.01;

/// Kinematic capacity of one axis in mm/s, mm/s² and mm/s³.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisLimits {
    pub vmax: f64,
    pub amax: f64,
    pub jmax: f64,
}

impl AxisLimits {
    pub const fn new(vmax: f64, amax: f64, jmax: f64) -> Self {
        Self { vmax, amax, jmax }
    }
}

/// Per-axis limits plus the controller and rounding parameters the models use.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MachineLimits {
    pub x: AxisLimits,
    pub y: AxisLimits,
    pub z: AxisLimits,
    /// Trajectory interpolation tolerance, mm.
    pub tit: f64,
    /// Interpolation time, s.
    pub t_int: f64,
    /// Elementary curvature-discontinuity crossing time, s.
    pub delta_t: f64,
}

/// Which per-axis capacity to read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitKind {
    Velocity,
    Acceleration,
    Jerk,
}

impl MachineLimits {
    /// The same limits on all three axes.
    pub fn uniform(axis: AxisLimits, tit: f64, t_int: f64, delta_t: f64) -> Self {
        Self { x: axis, y: axis, z: axis, tit, t_int, delta_t }
    }

    pub fn axes(&self) -> [AxisLimits; 3] {
        [self.x, self.y, self.z]
    }

    pub fn per_axis(&self, kind: LimitKind) -> [f64; 3] {
        self.axes().map(|a| match kind {
            LimitKind::Velocity => a.vmax,
            LimitKind::Acceleration => a.amax,
            LimitKind::Jerk => a.jmax,
        })
    }

    /// Multiplies every axis limit by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        let s = |a: AxisLimits| AxisLimits::new(a.vmax * factor, a.amax * factor, a.jmax * factor);
        Self { x: s(self.x), y: s(self.y), z: s(self.z), ..*self }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        self.to_config().validate()
    }

    pub fn to_config(&self) -> MachineConfig {
        let axis = |a: AxisLimits| AxisConfig {
            vmax_mm_min: a.vmax * 60.0,
            amax_m_s2: a.amax / 1000.0,
            jmax_m_s3: a.jmax / 1000.0,
        };
        MachineConfig {
            axes: AxesConfig { x: axis(self.x), y: axis(self.y), z: axis(self.z) },
            tit_mm: self.tit,
            t_int_s: self.t_int,
            delta_t_s: self.delta_t,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("machine config field `{field}`: {message}")]
pub struct ConfigError {
    /// Dotted path of the offending field, or empty for document-level errors.
    pub field: String,
    pub message: String,
}

/// One axis as written in the machine-config file.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisConfig {
    pub vmax_mm_min: f64,
    pub amax_m_s2: f64,
    pub jmax_m_s3: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxesConfig {
    pub x: AxisConfig,
    pub y: AxisConfig,
    pub z: AxisConfig,
}

/// The machine-config file schema, in the units machine builders quote.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MachineConfig {
    pub axes: AxesConfig,
    pub tit_mm: f64,
    #[serde(default = "default_t_int")]
    pub t_int_s: f64,
    #[serde(default = "default_delta_t")]
    pub delta_t_s: f64,
}

fn default_t_int() -> f64 {
    DEFAULT_T_INT
}

fn default_delta_t() -> f64 {
    DEFAULT_DELTA_T
}

impl MachineConfig {
    pub fn from_json(text: &str) -> Result<MachineConfig, ConfigError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let cfg: MachineConfig = serde_path_to_error::deserialize(de).map_err(|e| ConfigError {
            field: e.path().to_string(),
            message: e.inner().to_string(),
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let check = |field: String, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(ConfigError { field, message: format!("must be a positive number, got {v}") })
            }
        };
        for (name, a) in [("x", self.axes.x), ("y", self.axes.y), ("z", self.axes.z)] {
            check(format!("axes.{name}.vmax_mm_min"), a.vmax_mm_min)?;
            check(format!("axes.{name}.amax_m_s2"), a.amax_m_s2)?;
            check(format!("axes.{name}.jmax_m_s3"), a.jmax_m_s3)?;
        }
        check("tit_mm".into(), self.tit_mm)?;
        check("t_int_s".into(), self.t_int_s)?;
        check("delta_t_s".into(), self.delta_t_s)
    }

    /// Converts to internal mm/s units.
    pub fn limits(&self) -> MachineLimits {
        let axis = |a: AxisConfig| AxisLimits::new(a.vmax_mm_min / 60.0, a.amax_m_s2 * 1000.0, a.jmax_m_s3 * 1000.0);
        MachineLimits {
            x: axis(self.axes.x),
            y: axis(self.axes.y),
            z: axis(self.axes.z),
            tit: self.tit_mm,
            t_int: self.t_int_s,
            delta_t: self.delta_t_s,
        }
    }
}

impl TryFrom<MachineConfig> for MachineLimits {
    type Error = ConfigError;
    fn try_from(cfg: MachineConfig) -> Result<Self, ConfigError> {
        cfg.validate()?;
        Ok(cfg.limits())
    }
}
