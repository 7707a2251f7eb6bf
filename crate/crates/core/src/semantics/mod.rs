//! Pixel- and model-based semantics: selection state and clickability.

mod clickability;
mod gbt;
mod tint;

pub use clickability::{
    calibrate_threshold, score_clickability, train_clickability, ClickabilityModel, LabeledIcon,
    TrainError, TrainingConfig,
};
pub use gbt::{fit, GbtModel, GbtParams, RegressionTree, TreeNode};
pub use tint::{
    extract_tint, select_segmented_state, select_tab_state, unique_color_outlier, QuantColor,
    TintError, TintProfile,
};
