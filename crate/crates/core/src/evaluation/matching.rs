//! Greedy detection-to-ground-truth matching.

use crate::geometry::{center_in, iou};
use crate::model::DetectedElement;

/// How a prediction may claim a ground truth of its class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchCriterion {
    /// Strict IoU above one half, the common detection-benchmark rule.
    IouOverHalf,
    /// The prediction's center lies inside the ground-truth box; among hits
    /// the best-IoU one is taken. More relaxed for manipulable targets.
    CenterHit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatchSpec {
    pub criterion: MatchCriterion,
}

impl MatchSpec {
    pub fn iou_over_half() -> Self {
        Self {
            criterion: MatchCriterion::IouOverHalf,
        }
    }

    pub fn center_hit() -> Self {
        Self {
            criterion: MatchCriterion::CenterHit,
        }
    }

    pub fn satisfied(&self, pred: &DetectedElement, gt: &DetectedElement) -> bool {
        match self.criterion {
            MatchCriterion::IouOverHalf => iou(&pred.bounds, &gt.bounds) > 0.5,
            MatchCriterion::CenterHit => center_in(&pred.bounds, &gt.bounds),
        }
    }
}

/// Index pairs plus leftovers from one matching pass.
#[derive(Debug, Clone, PartialEq)]
pub struct MatchResult {
    /// `(pred_index, gt_index)` pairs.
    pub pairs: Vec<(usize, usize)>,
    pub unmatched_preds: Vec<usize>,
    pub unmatched_gts: Vec<usize>,
}

/// Matches same-class predictions to ground truths, one-to-one.
///
/// Predictions are visited in descending confidence; each takes the best-IoU
/// unmatched ground truth of its class that satisfies the criterion.
pub fn match_detections(
    preds: &[DetectedElement],
    gts: &[DetectedElement],
    spec: &MatchSpec,
) -> MatchResult {
    let mut order: Vec<usize> = (0..preds.len()).collect();
    order.sort_by(|&a, &b| {
        preds[b]
            .confidence
            .partial_cmp(&preds[a].confidence)
            .unwrap()
            .then(a.cmp(&b))
    });

    let mut gt_taken = vec![false; gts.len()];
    let mut pairs = Vec::new();
    let mut unmatched_preds = Vec::new();
    for &p in &order {
        let best = gts
            .iter()
            .enumerate()
            .filter(|(g, gt)| {
                !gt_taken[*g] && gt.ui_type == preds[p].ui_type && spec.satisfied(&preds[p], gt)
            })
            .max_by(|a, b| {
                iou(&preds[p].bounds, &a.1.bounds)
                    .total_cmp(&iou(&preds[p].bounds, &b.1.bounds))
                    .then_with(|| b.0.cmp(&a.0))
            })
            .map(|(g, _)| g);
        match best {
            Some(g) => {
                gt_taken[g] = true;
                pairs.push((p, g));
            }
            None => unmatched_preds.push(p),
        }
    }
    let unmatched_gts = (0..gts.len()).filter(|&g| !gt_taken[g]).collect();
    MatchResult {
        pairs,
        unmatched_preds,
        unmatched_gts,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::BBox;
    use crate::model::UIType;

    fn bx(l: f64, t: f64, r: f64, b: f64) -> BBox {
        BBox::new(l, t, r, b).unwrap()
    }

    fn el(id: &str, bounds: BBox, conf: f64) -> DetectedElement {
        DetectedElement::new(id, bounds, UIType::Icon, conf)
    }

    #[test]
    fn exact_prediction_matches_its_ground_truth() {
        let gt = vec![el("g", bx(0.1, 0.1, 0.3, 0.3), 1.0)];
        let pred = vec![el("p", bx(0.1, 0.1, 0.3, 0.3), 0.9)];
        let result = match_detections(&pred, &gt, &MatchSpec::iou_over_half());
        assert_eq!(result.pairs, vec![(0, 0)]);
        assert!(result.unmatched_preds.is_empty());
        assert!(result.unmatched_gts.is_empty());
    }

    #[test]
    fn duplicate_prediction_loses_to_the_confident_one() {
        let gt = vec![el("g", bx(0.1, 0.1, 0.3, 0.3), 1.0)];
        let preds = vec![
            el("weak", bx(0.1, 0.1, 0.3, 0.3), 0.6),
            el("strong", bx(0.1, 0.1, 0.3, 0.3), 0.9),
        ];
        let result = match_detections(&preds, &gt, &MatchSpec::iou_over_half());
        assert_eq!(result.pairs, vec![(1, 0)]);
        assert_eq!(result.unmatched_preds, vec![0]);
    }

    #[test]
    fn center_hit_accepts_loose_boxes_that_iou_rejects() {
        // Prediction much larger than the target but centered on it.
        let gt = vec![el("g", bx(0.4, 0.4, 0.6, 0.6), 1.0)];
        let pred = vec![el("p", bx(0.2, 0.2, 0.8, 0.8), 0.9)];
        let strict = match_detections(&pred, &gt, &MatchSpec::iou_over_half());
        assert!(strict.pairs.is_empty());
        let relaxed = match_detections(&pred, &gt, &MatchSpec::center_hit());
        assert_eq!(relaxed.pairs, vec![(0, 0)]);
    }

    #[test]
    fn shuffled_triple_matches_each_to_its_own_box() {
        // Three predictions jittered around three ground truths; greedy must
        // recover the same assignment exhaustive search would.
        let gts = vec![
            el("g0", bx(0.05, 0.05, 0.25, 0.25), 1.0),
            el("g1", bx(0.4, 0.4, 0.6, 0.6), 1.0),
            el("g2", bx(0.7, 0.7, 0.9, 0.9), 1.0),
        ];
        let preds = vec![
            el("p2", bx(0.71, 0.7, 0.91, 0.9), 0.7),
            el("p0", bx(0.06, 0.05, 0.26, 0.25), 0.9),
            el("p1", bx(0.4, 0.41, 0.6, 0.61), 0.8),
        ];
        let result = match_detections(&preds, &gts, &MatchSpec::iou_over_half());
        let mut pairs = result.pairs.clone();
        pairs.sort();
        assert_eq!(pairs, vec![(0, 2), (1, 0), (2, 1)]);
    }

    #[test]
    fn cross_class_pairs_never_match() {
        let gt = vec![DetectedElement::new(
            "g",
            bx(0.1, 0.1, 0.3, 0.3),
            UIType::Picture,
            1.0,
        )];
        let pred = vec![el("p", bx(0.1, 0.1, 0.3, 0.3), 0.9)];
        let result = match_detections(&pred, &gt, &MatchSpec::iou_over_half());
        assert!(result.pairs.is_empty());
        assert_eq!(result.unmatched_preds, vec![0]);
        assert_eq!(result.unmatched_gts, vec![0]);
    }
}
