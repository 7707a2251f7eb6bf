//! Detection refinement: confidence filtering, duplicate removal,
//! segmented-control repair, and OCR merge.
//!
//! Stage order is filter → per-class NMS → cross-class dedup → repair →
//! OCR merge; every operation preserves the input order of survivors and is
//! idempotent.

use serde::{Deserialize, Serialize};

use crate::config::HeuristicConfig;
use crate::geometry::{containment_fraction, iou, y_overlap, BBox};
use crate::model::{DetectedElement, UIType};

/// One OCR line: a box plus the recognized string.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OcrLine {
    #[serde(rename = "box")]
    pub bounds: BBox,
    pub text: String,
}

/// Keeps elements whose confidence reaches their type's threshold.
///
/// Types without a configured threshold are kept unconditionally.
pub fn filter_by_confidence(
    elements: &[DetectedElement],
    config: &HeuristicConfig,
) -> Vec<DetectedElement> {
    elements
        .iter()
        .filter(|e| e.confidence >= config.conf_threshold(e.ui_type))
        .cloned()
        .collect()
}

/// Greedy per-class non-max suppression.
///
/// Within each class, detections are visited in descending confidence and
/// kept iff their IoU with every already-kept detection of the class stays
/// below `iou_threshold`. Survivors come back in their input order.
pub fn nms_within_class(
    elements: &[DetectedElement],
    iou_threshold: f64,
) -> Vec<DetectedElement> {
    suppress(elements, iou_threshold, |e| Some(e.ui_type as usize), false)
}

/// Cross-class duplicate removal within visually similar type groups.
///
/// Within each dedup group, greedy confidence-descending suppression removes
/// a detection whose IoU with a kept detection of any class in the group
/// exceeds `dedup_iou`. Nested detections at or below the threshold survive.
pub fn dedup_cross_class(
    elements: &[DetectedElement],
    config: &HeuristicConfig,
) -> Vec<DetectedElement> {
    suppress(
        elements,
        config.dedup_iou,
        |e| config.dedup_group_of(e.ui_type),
        true,
    )
}

// Shared greedy suppression. `strict` picks between IoU > threshold
// (cross-class dedup) and IoU >= threshold (classic NMS keeps only pairs
// strictly under the threshold).
fn suppress(
    elements: &[DetectedElement],
    threshold: f64,
    group_of: impl Fn(&DetectedElement) -> Option<usize>,
    strict: bool,
) -> Vec<DetectedElement> {
    let mut order: Vec<usize> = (0..elements.len())
        .filter(|&i| group_of(&elements[i]).is_some())
        .collect();
    order.sort_by(|&a, &b| {
        elements[b]
            .confidence
            .partial_cmp(&elements[a].confidence)
            .unwrap()
            .then(a.cmp(&b))
    });

    let mut removed = vec![false; elements.len()];
    let mut kept_by_group: Vec<Vec<usize>> = Vec::new();
    for &i in &order {
        let group = group_of(&elements[i]).unwrap();
        if group >= kept_by_group.len() {
            kept_by_group.resize(group + 1, Vec::new());
        }
        let duplicate = kept_by_group[group].iter().any(|&k| {
            let overlap = iou(&elements[i].bounds, &elements[k].bounds);
            if strict {
                overlap > threshold
            } else {
                overlap >= threshold
            }
        });
        if duplicate {
            removed[i] = true;
        } else {
            kept_by_group[group].push(i);
        }
    }

    elements
        .iter()
        .enumerate()
        .filter(|(i, _)| !removed[*i])
        .map(|(_, e)| e.clone())
        .collect()
}

/// Retypes stray Text detections on a segmented-control row.
///
/// A Text that shares a row with some segmented control (y-overlap at least
/// `sc_row_y_overlap_min` of the text's height) but is not contained by any
/// segmented control becomes a segmented control itself. Retyped texts can
/// anchor further texts, so the rule runs to a fixpoint.
pub fn repair_segmented_controls(
    elements: &[DetectedElement],
    config: &HeuristicConfig,
) -> Vec<DetectedElement> {
    let mut repaired = elements.to_vec();
    loop {
        let sc_boxes: Vec<BBox> = repaired
            .iter()
            .filter(|e| e.ui_type == UIType::SegmentedControl)
            .map(|e| e.bounds)
            .collect();
        if sc_boxes.is_empty() {
            return repaired;
        }
        let mut changed = false;
        for e in &mut repaired {
            if e.ui_type != UIType::Text {
                continue;
            }
            let min_overlap = config.sc_row_y_overlap_min * e.bounds.height();
            let on_row = sc_boxes
                .iter()
                .any(|sc| y_overlap(&e.bounds, sc) >= min_overlap);
            let contained = sc_boxes
                .iter()
                .any(|sc| containment_fraction(&e.bounds, sc) >= config.containment_match);
            if on_row && !contained {
                e.ui_type = UIType::SegmentedControl;
                changed = true;
            }
        }
        if !changed {
            return repaired;
        }
    }
}

/// Folds OCR lines into the detection set.
///
/// A line with zero intersection area against every detection becomes a new
/// Text element with confidence 1.0. A line that overlaps something instead
/// donates its string to the best-IoU overlapping Text element, provided
/// that element still lacks text; otherwise the line is dropped. Picking the
/// target independently of payload state keeps the operation idempotent.
pub fn merge_ocr(elements: &[DetectedElement], ocr: &[OcrLine]) -> Vec<DetectedElement> {
    let mut merged: Vec<DetectedElement> = elements.to_vec();
    let mut next_ocr_index = 0usize;

    for line in ocr {
        let overlaps_any = merged
            .iter()
            .any(|e| line.bounds.intersection_area(&e.bounds) > 0.0);
        if !overlaps_any {
            let id = fresh_ocr_id(&merged, &mut next_ocr_index);
            let mut element = DetectedElement::new(id, line.bounds, UIType::Text, 1.0);
            element.text = Some(line.text.clone());
            merged.push(element);
            continue;
        }
        let recipient = merged
            .iter_mut()
            .filter(|e| {
                e.ui_type == UIType::Text
                    && line.bounds.intersection_area(&e.bounds) > 0.0
            })
            .max_by(|a, b| {
                iou(&line.bounds, &a.bounds)
                    .partial_cmp(&iou(&line.bounds, &b.bounds))
                    .unwrap()
            });
        if let Some(text_element) = recipient {
            if text_element.text.as_deref().map_or(true, str::is_empty) {
                text_element.text = Some(line.text.clone());
            }
        }
    }
    merged
}

fn fresh_ocr_id(elements: &[DetectedElement], next: &mut usize) -> String {
    loop {
        let candidate = format!("ocr-{next}");
        *next += 1;
        if !elements.iter().any(|e| e.id == candidate) {
            return candidate;
        }
    }
}

/// Runs the full refinement stage in order.
pub fn refine(
    elements: &[DetectedElement],
    ocr: &[OcrLine],
    config: &HeuristicConfig,
) -> Vec<DetectedElement> {
    let filtered = filter_by_confidence(elements, config);
    let nms = nms_within_class(&filtered, config.nms_iou);
    let dedup = dedup_cross_class(&nms, config);
    let repaired = repair_segmented_controls(&dedup, config);
    merge_ocr(&repaired, ocr)
}
