//! Icon clickability: training, precision-targeted threshold calibration,
//! and scoring.
//!
//! Only Icons go through the model. Types that are interactive by
//! construction bypass it as clickable; Text and Picture stay unset since
//! users infer their interactivity from alternative text.

use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::BBox;
use crate::model::{DetectedElement, UIType};
use crate::semantics::gbt::{fit, GbtModel, GbtParams};

#[derive(Debug, Error)]
pub enum TrainError {
    #[error("training data must contain both classes")]
    SingleClass,
    #[error("training data is empty")]
    Empty,
    #[error("failed to read model {0}: {1}")]
    Io(String, String),
    #[error("failed to parse model: {0}")]
    Parse(String),
}

/// One labeled icon for training.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledIcon {
    #[serde(rename = "box")]
    pub bounds: BBox,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub icon_class: Option<String>,
    pub clickable: bool,
}

/// Training knobs; the model family and these defaults are deliberately
/// small so fits stay desk-scale.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrainingConfig {
    pub tree_count: usize,
    pub max_depth: usize,
    pub learning_rate: f64,
    pub validation_fraction: f64,
    pub seed: u64,
}

impl Default for TrainingConfig {
    fn default() -> Self {
        Self {
            tree_count: 50,
            max_depth: 3,
            learning_rate: 0.1,
            validation_fraction: 0.2,
            seed: 0,
        }
    }
}

/// A calibrated clickability model: the ensemble, its icon vocabulary, and
/// the decision threshold with the validation stats behind it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClickabilityModel {
    pub model: GbtModel,
    pub icon_vocab: Vec<String>,
    pub threshold: f64,
    pub target_precision: f64,
    pub achieved_precision: f64,
    pub achieved_recall: f64,
    /// Set when no threshold reached the target precision; the threshold then
    /// sits at the max-precision point instead.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision_warning: Option<String>,
}

impl ClickabilityModel {
    /// Feature vector: normalized center, size, then a one-hot icon class
    /// with a trailing unknown slot.
    pub fn features(&self, bounds: &BBox, icon_class: Option<&str>) -> Vec<f64> {
        features_for(&self.icon_vocab, bounds, icon_class)
    }

    pub fn score(&self, bounds: &BBox, icon_class: Option<&str>) -> f64 {
        self.model.score(&self.features(bounds, icon_class))
    }

    pub fn save_json(&self, path: &Path) -> Result<(), TrainError> {
        let json = serde_json::to_string_pretty(self).expect("model serializes");
        std::fs::write(path, json)
            .map_err(|e| TrainError::Io(path.display().to_string(), e.to_string()))
    }

    pub fn load_json(path: &Path) -> Result<Self, TrainError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| TrainError::Io(path.display().to_string(), e.to_string()))?;
        serde_json::from_str(&text).map_err(|e| TrainError::Parse(e.to_string()))
    }
}

fn features_for(vocab: &[String], bounds: &BBox, icon_class: Option<&str>) -> Vec<f64> {
    let (cx, cy) = bounds.center();
    let mut features = vec![cx, cy, bounds.width(), bounds.height()];
    let mut one_hot = vec![0.0; vocab.len() + 1];
    let slot = icon_class
        .and_then(|c| vocab.iter().position(|v| v == c))
        .unwrap_or(vocab.len());
    one_hot[slot] = 1.0;
    features.extend(one_hot);
    features
}

/// Precision and recall of "positive iff score >= threshold".
fn precision_recall(scores: &[(f64, bool)], threshold: f64) -> (f64, f64) {
    let mut tp = 0usize;
    let mut fp = 0usize;
    let mut fn_ = 0usize;
    for &(score, label) in scores {
        let positive = score >= threshold;
        match (positive, label) {
            (true, true) => tp += 1,
            (true, false) => fp += 1,
            (false, true) => fn_ += 1,
            (false, false) => {}
        }
    }
    let precision = if tp + fp == 0 {
        1.0
    } else {
        tp as f64 / (tp + fp) as f64
    };
    let recall = if tp + fn_ == 0 {
        0.0
    } else {
        tp as f64 / (tp + fn_) as f64
    };
    (precision, recall)
}

/// Scans every observed validation score as a threshold candidate and picks
/// the smallest one whose precision reaches the target (maximum recall under
/// the precision constraint). Falls back to the max-precision point with a
/// warning when the target is unreachable.
pub fn calibrate_threshold(
    scores: &[(f64, bool)],
    target_precision: f64,
) -> (f64, f64, f64, Option<String>) {
    let mut candidates: Vec<f64> = scores.iter().map(|&(s, _)| s).collect();
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();

    let mut feasible: Option<(f64, f64, f64)> = None;
    for &threshold in &candidates {
        let (precision, recall) = precision_recall(scores, threshold);
        if precision >= target_precision {
            feasible = Some((threshold, precision, recall));
            break;
        }
    }
    if let Some((threshold, precision, recall)) = feasible {
        return (threshold, precision, recall, None);
    }

    let mut best = (1.0, 0.0, 0.0);
    for &threshold in &candidates {
        let (precision, recall) = precision_recall(scores, threshold);
        if precision > best.1 + 1e-12 {
            best = (threshold, precision, recall);
        }
    }
    let warning = format!(
        "no threshold reaches precision {target_precision}; using max-precision point {:.4}",
        best.1
    );
    (best.0, best.1, best.2, Some(warning))
}

/// Trains and calibrates a clickability model on labeled icons.
pub fn train_clickability(
    data: &[LabeledIcon],
    target_precision: f64,
    config: &TrainingConfig,
) -> Result<ClickabilityModel, TrainError> {
    if data.is_empty() {
        return Err(TrainError::Empty);
    }
    let positives = data.iter().filter(|d| d.clickable).count();
    if positives == 0 || positives == data.len() {
        return Err(TrainError::SingleClass);
    }

    let mut vocab: Vec<String> = data.iter().filter_map(|d| d.icon_class.clone()).collect();
    vocab.sort();
    vocab.dedup();

    let mut indices: Vec<usize> = (0..data.len()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    indices.shuffle(&mut rng);
    let validation_len = ((data.len() as f64 * config.validation_fraction).round() as usize)
        .clamp(1, data.len() - 1);
    let (validation_idx, train_idx) = indices.split_at(validation_len);

    let features: Vec<Vec<f64>> = train_idx
        .iter()
        .map(|&i| features_for(&vocab, &data[i].bounds, data[i].icon_class.as_deref()))
        .collect();
    let labels: Vec<bool> = train_idx.iter().map(|&i| data[i].clickable).collect();
    if labels.iter().all(|&l| l) || labels.iter().all(|&l| !l) {
        return Err(TrainError::SingleClass);
    }
    let params = GbtParams {
        tree_count: config.tree_count,
        max_depth: config.max_depth,
        learning_rate: config.learning_rate,
    };
    let model = fit(&features, &labels, &params);

    let validation_scores: Vec<(f64, bool)> = validation_idx
        .iter()
        .map(|&i| {
            let f = features_for(&vocab, &data[i].bounds, data[i].icon_class.as_deref());
            (model.score(&f), data[i].clickable)
        })
        .collect();
    let (threshold, precision, recall, warning) =
        calibrate_threshold(&validation_scores, target_precision);

    Ok(ClickabilityModel {
        model,
        icon_vocab: vocab,
        threshold,
        target_precision,
        achieved_precision: precision,
        achieved_recall: recall,
        precision_warning: warning,
    })
}

/// Clickability flag for one element.
///
/// Icons consult the model; intrinsically interactive types are clickable;
/// everything else stays unset.
pub fn score_clickability(
    model: Option<&ClickabilityModel>,
    element: &DetectedElement,
) -> Option<bool> {
    match element.ui_type {
        UIType::Icon => model
            .map(|m| m.score(&element.bounds, element.icon_class.as_deref()) >= m.threshold),
        t if t.intrinsically_clickable() => Some(true),
        _ => None,
    }
}
