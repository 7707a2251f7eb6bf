//! The single record housing every tunable constant of the pipeline.
//!
//! Each field is overridable from a TOML file and from CLI flags; the
//! defaults compiled in here are the reference operating point.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::UIType;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("failed to read config {0}: {1}")]
    Io(String, String),
    #[error("failed to parse config: {0}")]
    Parse(String),
    #[error("invalid config: {0}")]
    Invalid(String),
}

/// Every numeric constant used by the heuristics, in one auditable record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HeuristicConfig {
    /// Minimum detection confidence kept, per UI type. Types absent from the
    /// map are kept unconditionally.
    pub per_class_conf_threshold: BTreeMap<UIType, f64>,
    /// IoU at which per-class non-max suppression drops a detection.
    pub nms_iou: f64,
    /// IoU above which two detections in one dedup group are duplicates.
    pub dedup_iou: f64,
    /// Visually-similar type groups deduplicated against each other.
    pub dedup_groups: Vec<Vec<UIType>>,
    /// A tab-bar candidate must start inside the bottom fraction of the screen.
    pub tab_zone_fraction: f64,
    /// Maximum distance (fraction of screen height) between the bottom-most
    /// detection's bottom and a tab candidate's top.
    pub tab_height_tolerance: f64,
    /// Maximum vertical gap (fraction of screen height) between a picture and
    /// its subtitle text.
    pub subtitle_y_gap: f64,
    /// Minimum fraction of the subtitle's width that must overlap the picture.
    pub subtitle_x_overlap_min: f64,
    /// Containment fraction at which an annotation counts as inside a box.
    pub containment_match: f64,
    /// IoU at which an annotation counts as overlapping a box.
    pub overlap_match_iou: f64,
    /// Validation precision the clickability threshold is calibrated to.
    pub clickability_target_precision: f64,
    /// Minimum y-overlap, as a fraction of the text's height, for a text to
    /// sit on the same row as a segmented control.
    pub sc_row_y_overlap_min: f64,
    /// Containment fraction at which an element belongs to a container.
    pub container_membership: f64,
    /// Color quantization depth, bits per channel.
    pub tint_quantization_bits: u8,
    /// Height of the bottom strip inspected for segmented-control selection
    /// bars, as a fraction of the segment's height.
    pub sc_bottom_strip_fraction: f64,
}

impl Default for HeuristicConfig {
    fn default() -> Self {
        Self {
            per_class_conf_threshold: UIType::DETECTOR_CLASSES
                .iter()
                .map(|&t| (t, 0.5))
                .collect(),
            nms_iou: 0.5,
            dedup_iou: 0.8,
            dedup_groups: vec![
                vec![UIType::Picture, UIType::Icon],
                vec![
                    UIType::SegmentedControl,
                    UIType::TextField,
                    UIType::Container,
                ],
            ],
            tab_zone_fraction: 0.20,
            tab_height_tolerance: 0.08,
            subtitle_y_gap: 0.03,
            subtitle_x_overlap_min: 0.5,
            containment_match: 0.85,
            overlap_match_iou: 0.05,
            clickability_target_precision: 0.90,
            sc_row_y_overlap_min: 0.5,
            container_membership: 0.85,
            tint_quantization_bits: 5,
            sc_bottom_strip_fraction: 0.2,
        }
    }
}

impl HeuristicConfig {
    /// Checks every field against its invariant.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let ratios: [(&str, f64); 11] = [
            ("nms_iou", self.nms_iou),
            ("dedup_iou", self.dedup_iou),
            ("tab_zone_fraction", self.tab_zone_fraction),
            ("tab_height_tolerance", self.tab_height_tolerance),
            ("subtitle_y_gap", self.subtitle_y_gap),
            ("subtitle_x_overlap_min", self.subtitle_x_overlap_min),
            ("containment_match", self.containment_match),
            ("overlap_match_iou", self.overlap_match_iou),
            (
                "clickability_target_precision",
                self.clickability_target_precision,
            ),
            ("container_membership", self.container_membership),
            ("sc_bottom_strip_fraction", self.sc_bottom_strip_fraction),
        ];
        for (name, value) in ratios {
            if !(0.0..=1.0).contains(&value) {
                return Err(ConfigError::Invalid(format!(
                    "{name} = {value} outside [0,1]"
                )));
            }
        }
        for (ty, value) in &self.per_class_conf_threshold {
            if !(0.0..=1.0).contains(value) {
                return Err(ConfigError::Invalid(format!(
                    "per_class_conf_threshold[{ty}] = {value} outside [0,1]"
                )));
            }
        }
        if self.nms_iou <= 0.0 {
            return Err(ConfigError::Invalid(
                "nms_iou must be positive".into(),
            ));
        }
        if self.sc_row_y_overlap_min < 0.0 {
            return Err(ConfigError::Invalid(
                "sc_row_y_overlap_min must be non-negative".into(),
            ));
        }
        if self.dedup_iou <= self.overlap_match_iou {
            return Err(ConfigError::Invalid(format!(
                "dedup_iou ({}) must exceed overlap_match_iou ({})",
                self.dedup_iou, self.overlap_match_iou
            )));
        }
        if !(1..=8).contains(&self.tint_quantization_bits) {
            return Err(ConfigError::Invalid(format!(
                "tint_quantization_bits = {} outside 1..=8",
                self.tint_quantization_bits
            )));
        }
        Ok(())
    }

    /// Size of one quantization bucket in 8-bit color units.
    pub fn quantization_step(&self) -> u16 {
        1u16 << (8 - self.tint_quantization_bits)
    }

    pub fn from_toml_str(text: &str) -> Result<Self, ConfigError> {
        let config: Self = toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string_pretty(self).expect("config serializes")
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::Io(path.display().to_string(), e.to_string()))?;
        Self::from_toml_str(&text)
    }

    /// Confidence threshold for one type; absent entries keep everything.
    pub fn conf_threshold(&self, ui_type: UIType) -> f64 {
        self.per_class_conf_threshold
            .get(&ui_type)
            .copied()
            .unwrap_or(0.0)
    }

    /// The dedup group containing `ui_type`, if any.
    pub fn dedup_group_of(&self, ui_type: UIType) -> Option<usize> {
        self.dedup_groups
            .iter()
            .position(|group| group.contains(&ui_type))
    }
}
