//! Grouping and ordering quality against ground-truth trees.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{AccessibilityNode, AccessibilityTree, GroupKind};
use crate::structure::insertion_distance;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StatsError {
    #[error("screen {0}: produced and truth trees cover different element ids")]
    IdMismatch(String),
    #[error("screen {0}: produced and truth orders are not permutations of each other")]
    SetMismatch(String),
    #[error("produced and truth corpora pair different screens ({0} vs {1})")]
    ScreenMismatch(String, String),
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct KindStats {
    pub produced: usize,
    pub truth: usize,
    pub correct: usize,
}

/// Corpus-level grouping quality.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct GroupingStats {
    pub screens: usize,
    pub elements: usize,
    pub produced_top_level: usize,
    pub truth_top_level: usize,
    pub produced_groups: usize,
    pub truth_groups: usize,
    /// Produced groups whose kind and full leaf set match a truth group.
    pub correctly_grouped: usize,
    /// Produced groups with no exact truth counterpart.
    pub incorrectly_grouped: usize,
    /// Truth groups with no exact produced counterpart.
    pub should_have_grouped: usize,
    /// `1 - top_level / elements`, the paper's navigation-reduction measure.
    pub reduction_produced: f64,
    pub reduction_truth: f64,
    pub per_kind: BTreeMap<GroupKind, KindStats>,
}

// Every group in the tree as (kind, full leaf-id set), nested included.
fn collect_groups(tree: &AccessibilityTree) -> Vec<(GroupKind, BTreeSet<String>)> {
    fn walk(node: &AccessibilityNode, out: &mut Vec<(GroupKind, BTreeSet<String>)>) {
        if let AccessibilityNode::Group { kind, children, .. } = node {
            let leaves: BTreeSet<String> =
                node.leaves().iter().map(|e| e.id.clone()).collect();
            out.push((*kind, leaves));
            for child in children {
                walk(child, out);
            }
        }
    }
    let mut out = Vec::new();
    for node in &tree.nodes {
        walk(node, &mut out);
    }
    out
}

/// Compares produced trees against truth trees paired one-to-one.
pub fn grouping_metrics(
    produced: &[AccessibilityTree],
    truth: &[AccessibilityTree],
) -> Result<GroupingStats, StatsError> {
    let mut stats = GroupingStats::default();
    for (p, t) in produced.iter().zip(truth.iter()) {
        if p.screen_id != t.screen_id {
            return Err(StatsError::ScreenMismatch(
                p.screen_id.clone(),
                t.screen_id.clone(),
            ));
        }
        let p_ids: BTreeSet<String> = p.leaf_ids().into_iter().collect();
        let t_ids: BTreeSet<String> = t.leaf_ids().into_iter().collect();
        if p_ids != t_ids {
            return Err(StatsError::IdMismatch(p.screen_id.clone()));
        }

        stats.screens += 1;
        stats.elements += p_ids.len();
        stats.produced_top_level += p.nodes.len();
        stats.truth_top_level += t.nodes.len();

        let p_groups = collect_groups(p);
        let t_groups = collect_groups(t);
        stats.produced_groups += p_groups.len();
        stats.truth_groups += t_groups.len();
        for (kind, members) in &p_groups {
            let entry = stats.per_kind.entry(*kind).or_default();
            entry.produced += 1;
            if t_groups.iter().any(|(tk, tm)| tk == kind && tm == members) {
                entry.correct += 1;
                stats.correctly_grouped += 1;
            } else {
                stats.incorrectly_grouped += 1;
            }
        }
        for (kind, members) in &t_groups {
            stats.per_kind.entry(*kind).or_default().truth += 1;
            if !p_groups.iter().any(|(pk, pm)| pk == kind && pm == members) {
                stats.should_have_grouped += 1;
            }
        }
    }
    if stats.elements > 0 {
        stats.reduction_produced = 1.0 - stats.produced_top_level as f64 / stats.elements as f64;
        stats.reduction_truth = 1.0 - stats.truth_top_level as f64 / stats.elements as f64;
    }
    Ok(stats)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScreenOrdering {
    pub screen_id: String,
    pub elements: usize,
    pub distance: usize,
}

/// Corpus-level navigation-order quality.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct OrderingStats {
    pub screens: usize,
    pub perfect: usize,
    /// Screens with strictly fewer than one insertion step per ten elements.
    pub under_one_per_ten: usize,
    pub mean_distance: f64,
    pub fraction_perfect: f64,
    pub fraction_under_one_per_ten: f64,
    pub per_screen: Vec<ScreenOrdering>,
}

/// Insertion distance between flattened navigation orders, aggregated.
pub fn ordering_metrics(
    produced: &[AccessibilityTree],
    truth: &[AccessibilityTree],
) -> Result<OrderingStats, StatsError> {
    let mut stats = OrderingStats::default();
    let mut total = 0usize;
    for (p, t) in produced.iter().zip(truth.iter()) {
        if p.screen_id != t.screen_id {
            return Err(StatsError::ScreenMismatch(
                p.screen_id.clone(),
                t.screen_id.clone(),
            ));
        }
        let p_order = p.leaf_ids();
        let t_order = t.leaf_ids();
        let distance = insertion_distance(&p_order, &t_order)
            .map_err(|_| StatsError::SetMismatch(p.screen_id.clone()))?;
        stats.screens += 1;
        total += distance;
        if distance == 0 {
            stats.perfect += 1;
        }
        if (distance as f64) < p_order.len() as f64 / 10.0 {
            stats.under_one_per_ten += 1;
        }
        stats.per_screen.push(ScreenOrdering {
            screen_id: p.screen_id.clone(),
            elements: p_order.len(),
            distance,
        });
    }
    if stats.screens > 0 {
        stats.mean_distance = total as f64 / stats.screens as f64;
        stats.fraction_perfect = stats.perfect as f64 / stats.screens as f64;
        stats.fraction_under_one_per_ten = stats.under_one_per_ten as f64 / stats.screens as f64;
    }
    Ok(stats)
}
