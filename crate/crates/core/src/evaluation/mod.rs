//! Measurement machinery: detection matching, average precision, confusion,
//! threshold tuning, grouping/ordering quality, and gap analysis.

mod ap;
mod confusion;
mod gap;
mod matching;
mod stats;
mod tuning;

pub use ap::{
    ap_from_outcomes, ap_rank_walk_oracle, average_precision, ApReport, ClassAp, PrPoint,
};
pub use confusion::{confusion_matrix, ConfusionMatrix};
pub use gap::{
    gap_analysis, gap_report, AnnotationOutcome, GapCategory, GapReport, GapScreenReport,
    FULLSCREEN_AREA, HISTOGRAM_LABELS,
};
pub use matching::{match_detections, MatchCriterion, MatchResult, MatchSpec};
pub use stats::{
    grouping_metrics, ordering_metrics, GroupingStats, KindStats, OrderingStats, ScreenOrdering,
    StatsError,
};
pub use tuning::{tune_thresholds, ClassThreshold};

use crate::model::DetectedElement;

/// Aligned predictions and ground truths for one screen.
#[derive(Debug, Clone, Copy)]
pub struct EvalPair<'a> {
    pub screen_id: &'a str,
    pub preds: &'a [DetectedElement],
    pub gts: &'a [DetectedElement],
}
