//! Per-class confidence threshold selection by F-beta sweep.

use serde::{Deserialize, Serialize};

use crate::evaluation::ap::ranked_outcomes;
use crate::evaluation::matching::MatchSpec;
use crate::evaluation::EvalPair;
use crate::model::UIType;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassThreshold {
    pub ui_type: UIType,
    pub threshold: f64,
    pub f_beta: f64,
    pub precision: f64,
    pub recall: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

fn f_beta(precision: f64, recall: f64, beta: f64) -> f64 {
    let b2 = beta * beta;
    let denominator = b2 * precision + recall;
    if denominator == 0.0 {
        0.0
    } else {
        (1.0 + b2) * precision * recall / denominator
    }
}

/// Picks, per class, the confidence threshold maximizing F-beta on the
/// tuning corpus. `beta > 1` favors recall; `beta < 1` favors precision.
/// Ties resolve to the smallest threshold (maximum recall).
pub fn tune_thresholds(
    pairs: &[EvalPair<'_>],
    spec: &MatchSpec,
    beta: f64,
) -> Vec<ClassThreshold> {
    let mut classes: std::collections::BTreeSet<UIType> = std::collections::BTreeSet::new();
    for pair in pairs {
        for e in pair.preds.iter().chain(pair.gts.iter()) {
            classes.insert(e.ui_type);
        }
    }

    let mut out = Vec::new();
    for ui_type in classes {
        let (outcomes, gt_count) = ranked_outcomes(pairs, spec, ui_type);
        if outcomes.is_empty() {
            out.push(ClassThreshold {
                ui_type,
                threshold: 0.0,
                f_beta: 0.0,
                precision: 0.0,
                recall: 0.0,
                warning: Some("no predictions for this class".into()),
            });
            continue;
        }
        if gt_count == 0 {
            out.push(ClassThreshold {
                ui_type,
                threshold: 0.0,
                f_beta: 0.0,
                precision: 0.0,
                recall: 0.0,
                warning: Some("no ground truth for this class".into()),
            });
            continue;
        }

        // Greedy matching is prefix-consistent, so thresholding the ranked
        // list at each observed confidence is an exhaustive sweep.
        let mut best: Option<ClassThreshold> = None;
        let mut tp = 0usize;
        for (rank, &(confidence, hit)) in outcomes.iter().enumerate() {
            if hit {
                tp += 1;
            }
            // Candidate threshold = this confidence; ties in confidence mean
            // the later (larger) prefix is the real candidate set.
            if rank + 1 < outcomes.len() && outcomes[rank + 1].0 == confidence {
                continue;
            }
            let precision = tp as f64 / (rank + 1) as f64;
            let recall = tp as f64 / gt_count as f64;
            let score = f_beta(precision, recall, beta);
            let better = match &best {
                None => true,
                // Strictly better, or equal but at the lower threshold.
                Some(b) => {
                    score > b.f_beta + 1e-12
                        || (score >= b.f_beta - 1e-12 && confidence < b.threshold)
                }
            };
            if better {
                best = Some(ClassThreshold {
                    ui_type,
                    threshold: confidence,
                    f_beta: score,
                    precision,
                    recall,
                    warning: None,
                });
            }
        }
        out.push(best.expect("outcomes nonempty"));
    }
    out
}
