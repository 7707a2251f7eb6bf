//! Average precision over a detection corpus.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::evaluation::matching::MatchSpec;
use crate::evaluation::EvalPair;
use crate::geometry::iou;
use crate::model::UIType;

/// One point of a precision-recall curve, sampled at a ranked prediction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrPoint {
    pub confidence: f64,
    pub precision: f64,
    pub recall: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassAp {
    pub ui_type: UIType,
    /// `None` when the class has no ground truth; excluded from means.
    pub ap: Option<f64>,
    pub gt_count: usize,
    pub pred_count: usize,
    pub pr_curve: Vec<PrPoint>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApReport {
    pub per_class: Vec<ClassAp>,
    /// Unweighted mean over classes with defined AP.
    pub mean_ap: Option<f64>,
    /// Mean weighted by ground-truth frequency.
    pub weighted_mean_ap: Option<f64>,
}

// Ranked prediction outcomes for one class across the corpus: confidence
// descending with a true-positive flag each, plus the class ground-truth
// count.
pub(crate) fn ranked_outcomes(
    pairs: &[EvalPair<'_>],
    spec: &MatchSpec,
    ui_type: UIType,
) -> (Vec<(f64, bool)>, usize) {
    struct Entry {
        confidence: f64,
        screen: usize,
        pred: usize,
    }
    let mut entries = Vec::new();
    let mut gt_count = 0usize;
    for (s, pair) in pairs.iter().enumerate() {
        gt_count += pair.gts.iter().filter(|g| g.ui_type == ui_type).count();
        for (p, pred) in pair.preds.iter().enumerate() {
            if pred.ui_type == ui_type {
                entries.push(Entry {
                    confidence: pred.confidence,
                    screen: s,
                    pred: p,
                });
            }
        }
    }
    entries.sort_by(|a, b| {
        b.confidence
            .total_cmp(&a.confidence)
            .then_with(|| a.screen.cmp(&b.screen))
            .then_with(|| a.pred.cmp(&b.pred))
    });

    let mut taken: Vec<Vec<bool>> = pairs.iter().map(|p| vec![false; p.gts.len()]).collect();
    let mut outcomes = Vec::with_capacity(entries.len());
    for entry in entries {
        let pair = &pairs[entry.screen];
        let pred = &pair.preds[entry.pred];
        let best = pair
            .gts
            .iter()
            .enumerate()
            .filter(|(g, gt)| {
                !taken[entry.screen][*g] && gt.ui_type == ui_type && spec.satisfied(pred, gt)
            })
            .max_by(|a, b| {
                iou(&pred.bounds, &a.1.bounds)
                    .total_cmp(&iou(&pred.bounds, &b.1.bounds))
                    .then_with(|| b.0.cmp(&a.0))
            })
            .map(|(g, _)| g);
        match best {
            Some(g) => {
                taken[entry.screen][g] = true;
                outcomes.push((entry.confidence, true));
            }
            None => outcomes.push((entry.confidence, false)),
        }
    }
    (outcomes, gt_count)
}

/// Area under the all-points interpolated precision-recall curve.
///
/// `outcomes` must be ranked by descending confidence; `gt_count` must be
/// positive.
pub fn ap_from_outcomes(outcomes: &[(f64, bool)], gt_count: usize) -> f64 {
    let mut recalls = Vec::with_capacity(outcomes.len());
    let mut precisions = Vec::with_capacity(outcomes.len());
    let mut tp = 0usize;
    for (rank, &(_, hit)) in outcomes.iter().enumerate() {
        if hit {
            tp += 1;
        }
        precisions.push(tp as f64 / (rank + 1) as f64);
        recalls.push(tp as f64 / gt_count as f64);
    }
    // Precision envelope from the right, then integrate recall steps.
    let mut envelope = precisions.clone();
    for i in (0..envelope.len().saturating_sub(1)).rev() {
        envelope[i] = envelope[i].max(envelope[i + 1]);
    }
    let mut ap = 0.0;
    let mut previous_recall = 0.0;
    for i in 0..recalls.len() {
        if recalls[i] > previous_recall {
            ap += (recalls[i] - previous_recall) * envelope[i];
            previous_recall = recalls[i];
        }
    }
    ap
}

fn pr_curve(outcomes: &[(f64, bool)], gt_count: usize) -> Vec<PrPoint> {
    let mut curve = Vec::with_capacity(outcomes.len());
    let mut tp = 0usize;
    for (rank, &(confidence, hit)) in outcomes.iter().enumerate() {
        if hit {
            tp += 1;
        }
        curve.push(PrPoint {
            confidence,
            precision: tp as f64 / (rank + 1) as f64,
            recall: if gt_count == 0 {
                0.0
            } else {
                tp as f64 / gt_count as f64
            },
        });
    }
    curve
}

/// Per-class AP with unweighted and ground-truth-frequency-weighted means.
pub fn average_precision(pairs: &[EvalPair<'_>], spec: &MatchSpec) -> ApReport {
    let mut classes: BTreeMap<UIType, ()> = BTreeMap::new();
    for pair in pairs {
        for e in pair.preds.iter().chain(pair.gts.iter()) {
            classes.insert(e.ui_type, ());
        }
    }

    let mut per_class = Vec::new();
    for (&ui_type, _) in &classes {
        let (outcomes, gt_count) = ranked_outcomes(pairs, spec, ui_type);
        let ap = (gt_count > 0).then(|| ap_from_outcomes(&outcomes, gt_count));
        per_class.push(ClassAp {
            ui_type,
            ap,
            gt_count,
            pred_count: outcomes.len(),
            pr_curve: pr_curve(&outcomes, gt_count),
        });
    }

    let defined: Vec<&ClassAp> = per_class.iter().filter(|c| c.ap.is_some()).collect();
    let mean_ap = (!defined.is_empty())
        .then(|| defined.iter().map(|c| c.ap.unwrap()).sum::<f64>() / defined.len() as f64);
    let total_gt: usize = defined.iter().map(|c| c.gt_count).sum();
    let weighted_mean_ap = (total_gt > 0).then(|| {
        defined
            .iter()
            .map(|c| c.ap.unwrap() * c.gt_count as f64)
            .sum::<f64>()
            / total_gt as f64
    });

    ApReport {
        per_class,
        mean_ap,
        weighted_mean_ap,
    }
}

/// Brute-force reference: for each achieved recall level, scan every rank
/// prefix for the best precision at or beyond that recall. Quadratic and
/// independent of the envelope implementation above.
pub fn ap_rank_walk_oracle(outcomes: &[(f64, bool)], gt_count: usize) -> f64 {
    let n = outcomes.len();
    let mut recall_at = vec![0.0; n];
    let mut precision_at = vec![0.0; n];
    let mut tp = 0usize;
    for i in 0..n {
        if outcomes[i].1 {
            tp += 1;
        }
        precision_at[i] = tp as f64 / (i + 1) as f64;
        recall_at[i] = tp as f64 / gt_count as f64;
    }
    let mut levels: Vec<f64> = recall_at
        .iter()
        .copied()
        .filter(|&r| r > 0.0)
        .collect();
    levels.sort_by(f64::total_cmp);
    levels.dedup();

    let mut ap = 0.0;
    let mut previous = 0.0;
    for &level in &levels {
        let best = (0..n)
            .filter(|&i| recall_at[i] >= level)
            .map(|i| precision_at[i])
            .fold(0.0, f64::max);
        ap += (level - previous) * best;
        previous = level;
    }
    ap
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::BBox;
    use crate::model::DetectedElement;

    fn bx(l: f64, t: f64, r: f64, b: f64) -> BBox {
        BBox::new(l, t, r, b).unwrap()
    }

    fn el(id: &str, bounds: BBox, conf: f64) -> DetectedElement {
        DetectedElement::new(id, bounds, UIType::Icon, conf)
    }

    #[test]
    fn perfect_detector_scores_one() {
        let gts = vec![
            el("g0", bx(0.1, 0.1, 0.3, 0.3), 1.0),
            el("g1", bx(0.5, 0.5, 0.7, 0.7), 1.0),
        ];
        let preds = vec![
            el("p0", bx(0.1, 0.1, 0.3, 0.3), 0.9),
            el("p1", bx(0.5, 0.5, 0.7, 0.7), 0.8),
        ];
        let pairs = [EvalPair {
            screen_id: "s0",
            preds: &preds,
            gts: &gts,
        }];
        let report = average_precision(&pairs, &MatchSpec::iou_over_half());
        assert_eq!(report.mean_ap, Some(1.0));
    }

    #[test]
    fn zero_true_positives_score_zero() {
        let gts = vec![el("g0", bx(0.1, 0.1, 0.3, 0.3), 1.0)];
        let preds = vec![el("p0", bx(0.6, 0.6, 0.8, 0.8), 0.9)];
        let pairs = [EvalPair {
            screen_id: "s0",
            preds: &preds,
            gts: &gts,
        }];
        let report = average_precision(&pairs, &MatchSpec::iou_over_half());
        assert_eq!(report.mean_ap, Some(0.0));
    }

    #[test]
    fn interleaved_ranks_give_five_sixths() {
        // Ranks TP, FP, TP over two ground truths: all-points AP is 5/6.
        let outcomes = vec![(0.9, true), (0.8, false), (0.7, true)];
        assert!((ap_from_outcomes(&outcomes, 2) - 5.0 / 6.0).abs() < 1e-12);
        assert!((ap_rank_walk_oracle(&outcomes, 2) - 5.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn class_without_ground_truth_is_excluded_from_means() {
        let gts = vec![el("g0", bx(0.1, 0.1, 0.3, 0.3), 1.0)];
        let preds = vec![
            el("p0", bx(0.1, 0.1, 0.3, 0.3), 0.9),
            DetectedElement::new("stray", bx(0.5, 0.5, 0.7, 0.7), UIType::Slider, 0.8),
        ];
        let pairs = [EvalPair {
            screen_id: "s0",
            preds: &preds,
            gts: &gts,
        }];
        let report = average_precision(&pairs, &MatchSpec::iou_over_half());
        let slider = report
            .per_class
            .iter()
            .find(|c| c.ui_type == UIType::Slider)
            .unwrap();
        assert_eq!(slider.ap, None);
        assert_eq!(report.mean_ap, Some(1.0));
    }

    #[test]
    fn weighted_mean_is_weighted_by_gt_frequency() {
        // Icon: 3 GTs all found (AP 1); Text: 1 GT missed (AP 0).
        let mut gts = vec![
            el("g0", bx(0.05, 0.05, 0.15, 0.15), 1.0),
            el("g1", bx(0.3, 0.3, 0.4, 0.4), 1.0),
            el("g2", bx(0.6, 0.6, 0.7, 0.7), 1.0),
        ];
        gts.push(DetectedElement::new(
            "t0",
            bx(0.8, 0.8, 0.95, 0.9),
            UIType::Text,
            1.0,
        ));
        let preds = vec![
            el("p0", bx(0.05, 0.05, 0.15, 0.15), 0.9),
            el("p1", bx(0.3, 0.3, 0.4, 0.4), 0.8),
            el("p2", bx(0.6, 0.6, 0.7, 0.7), 0.7),
        ];
        let pairs = [EvalPair {
            screen_id: "s0",
            preds: &preds,
            gts: &gts,
        }];
        let report = average_precision(&pairs, &MatchSpec::iou_over_half());
        assert_eq!(report.mean_ap, Some(0.5));
        assert!((report.weighted_mean_ap.unwrap() - 0.75).abs() < 1e-12);
    }
}
