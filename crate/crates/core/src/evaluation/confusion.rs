//! Class confusion over spatially matched detections.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::evaluation::EvalPair;
use crate::geometry::iou;
use crate::model::UIType;

/// Confusion counts keyed by (ground-truth class, predicted class), with
/// margins for misses, class-agnostic false positives, and duplicates.
///
/// Every unmatched prediction lands in `no_gt`; the `duplicate` margin is the
/// informational subset whose box hit an already-claimed ground truth, keyed
/// by that ground truth's class.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub cells: BTreeMap<UIType, BTreeMap<UIType, usize>>,
    pub missed: BTreeMap<UIType, usize>,
    pub no_gt: BTreeMap<UIType, usize>,
    pub duplicate: BTreeMap<UIType, usize>,
}

impl ConfusionMatrix {
    pub fn cell(&self, gt: UIType, pred: UIType) -> usize {
        self.cells
            .get(&gt)
            .and_then(|row| row.get(&pred))
            .copied()
            .unwrap_or(0)
    }

    /// All classes appearing anywhere in the matrix, sorted.
    pub fn classes(&self) -> Vec<UIType> {
        let mut set: std::collections::BTreeSet<UIType> = std::collections::BTreeSet::new();
        for (gt, row) in &self.cells {
            set.insert(*gt);
            set.extend(row.keys().copied());
        }
        set.extend(self.missed.keys().copied());
        set.extend(self.no_gt.keys().copied());
        set.extend(self.duplicate.keys().copied());
        set.into_iter().collect()
    }

    /// Matched count for a ground-truth class (row sum).
    pub fn row_sum(&self, gt: UIType) -> usize {
        self.cells
            .get(&gt)
            .map(|row| row.values().sum())
            .unwrap_or(0)
    }

    /// Matched count for a predicted class (column sum).
    pub fn column_sum(&self, pred: UIType) -> usize {
        self.cells
            .values()
            .map(|row| row.get(&pred).copied().unwrap_or(0))
            .sum()
    }
}

/// Builds the confusion matrix by matching boxes spatially (IoU > 0.5)
/// regardless of class, greedy by confidence.
pub fn confusion_matrix(pairs: &[EvalPair<'_>]) -> ConfusionMatrix {
    let mut matrix = ConfusionMatrix::default();
    for pair in pairs {
        let mut order: Vec<usize> = (0..pair.preds.len()).collect();
        order.sort_by(|&a, &b| {
            pair.preds[b]
                .confidence
                .total_cmp(&pair.preds[a].confidence)
                .then(a.cmp(&b))
        });
        let mut taken = vec![false; pair.gts.len()];
        for &p in &order {
            let pred = &pair.preds[p];
            let best_free = pair
                .gts
                .iter()
                .enumerate()
                .filter(|(g, gt)| !taken[*g] && iou(&pred.bounds, &gt.bounds) > 0.5)
                .max_by(|a, b| {
                    iou(&pred.bounds, &a.1.bounds)
                        .total_cmp(&iou(&pred.bounds, &b.1.bounds))
                        .then_with(|| b.0.cmp(&a.0))
                })
                .map(|(g, _)| g);
            match best_free {
                Some(g) => {
                    taken[g] = true;
                    *matrix
                        .cells
                        .entry(pair.gts[g].ui_type)
                        .or_default()
                        .entry(pred.ui_type)
                        .or_insert(0) += 1;
                }
                None => {
                    *matrix.no_gt.entry(pred.ui_type).or_insert(0) += 1;
                    // A taken ground truth under this box means a duplicate.
                    let duplicated = pair
                        .gts
                        .iter()
                        .enumerate()
                        .filter(|(g, gt)| taken[*g] && iou(&pred.bounds, &gt.bounds) > 0.5)
                        .max_by(|a, b| {
                            iou(&pred.bounds, &a.1.bounds)
                                .total_cmp(&iou(&pred.bounds, &b.1.bounds))
                                .then_with(|| b.0.cmp(&a.0))
                        })
                        .map(|(_, gt)| gt.ui_type);
                    if let Some(gt_type) = duplicated {
                        *matrix.duplicate.entry(gt_type).or_insert(0) += 1;
                    }
                }
            }
        }
        for (g, gt) in pair.gts.iter().enumerate() {
            if !taken[g] {
                *matrix.missed.entry(gt.ui_type).or_insert(0) += 1;
            }
        }
    }
    matrix
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::BBox;
    use crate::model::DetectedElement;

    fn bx(l: f64, t: f64, r: f64, b: f64) -> BBox {
        BBox::new(l, t, r, b).unwrap()
    }

    fn el(id: &str, bounds: BBox, ty: UIType, conf: f64) -> DetectedElement {
        DetectedElement::new(id, bounds, ty, conf)
    }

    #[test]
    fn all_correct_predictions_fill_the_diagonal() {
        let gts = vec![
            el("g0", bx(0.1, 0.1, 0.3, 0.3), UIType::Icon, 1.0),
            el("g1", bx(0.5, 0.5, 0.7, 0.7), UIType::Text, 1.0),
        ];
        let preds = vec![
            el("p0", bx(0.1, 0.1, 0.3, 0.3), UIType::Icon, 0.9),
            el("p1", bx(0.5, 0.5, 0.7, 0.7), UIType::Text, 0.9),
        ];
        let matrix = confusion_matrix(&[EvalPair {
            screen_id: "s0",
            preds: &preds,
            gts: &gts,
        }]);
        assert_eq!(matrix.cell(UIType::Icon, UIType::Icon), 1);
        assert_eq!(matrix.cell(UIType::Text, UIType::Text), 1);
        assert!(matrix.missed.is_empty());
        assert!(matrix.no_gt.is_empty());
    }

    #[test]
    fn misclassified_checkbox_lands_off_diagonal() {
        let gts = vec![el(
            "g0",
            bx(0.1, 0.1, 0.2, 0.2),
            UIType::CheckboxSelected,
            1.0,
        )];
        let preds = vec![el("p0", bx(0.1, 0.1, 0.2, 0.2), UIType::Icon, 0.9)];
        let matrix = confusion_matrix(&[EvalPair {
            screen_id: "s0",
            preds: &preds,
            gts: &gts,
        }]);
        assert_eq!(matrix.cell(UIType::CheckboxSelected, UIType::Icon), 1);
    }

    #[test]
    fn margins_balance_per_class() {
        let gts = vec![
            el("g0", bx(0.1, 0.1, 0.3, 0.3), UIType::Icon, 1.0),
            el("g1", bx(0.5, 0.5, 0.7, 0.7), UIType::Icon, 1.0),
        ];
        let preds = vec![
            el("p0", bx(0.1, 0.1, 0.3, 0.3), UIType::Icon, 0.9),
            // Duplicate of g0.
            el("p1", bx(0.1, 0.1, 0.3, 0.3), UIType::Icon, 0.8),
            // No ground truth at all.
            el("p2", bx(0.8, 0.05, 0.95, 0.2), UIType::Icon, 0.7),
        ];
        let matrix = confusion_matrix(&[EvalPair {
            screen_id: "s0",
            preds: &preds,
            gts: &gts,
        }]);
        // Row: matched + missed = GT count.
        assert_eq!(
            matrix.row_sum(UIType::Icon) + matrix.missed[&UIType::Icon],
            2
        );
        // Column: matched + no-GT = prediction count.
        assert_eq!(
            matrix.column_sum(UIType::Icon) + matrix.no_gt[&UIType::Icon],
            3
        );
        assert_eq!(matrix.duplicate[&UIType::Icon], 1);
    }
}
