//! Machine-behaviour models: corner crossing at tangential discontinuities,
//! crossing of curvature discontinuities, and the controller's block
//! processing capacity.

mod capacity;
mod limits;
mod models;

use thiserror::Error;

pub use capacity::{along, directional_capacity, AXIS_EPS};
pub(crate) use capacity::swept;
pub use limits::{
    AxesConfig, AxisConfig, AxisLimits, ConfigError, LimitKind, MachineConfig, MachineLimits, DEFAULT_DELTA_T,
    DEFAULT_T_INT,
};
pub use models::{
    block_feed_cap, corner_radius, min_block_length, model1_junction_feed, model2_arc_arc_feed, model2_seg_arc_feed,
    tangential_jerk, tangential_vmax, Binding, CornerModel1Result, ExactLength, FeedLimit,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("model domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    Geometry(#[from] crate::geometry::GeometryError),
}
