//! Depth-limited gradient boosted regression trees for binary targets.
//!
//! Trees are fit to logistic-loss gradients with Newton leaf values; split
//! search is exhaustive over pre-sorted feature columns, so fitting is
//! deterministic for a fixed data order.

use serde::{Deserialize, Serialize};

const LAMBDA: f64 = 1.0;
const MIN_CHILD: usize = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum TreeNode {
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
    Leaf {
        value: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegressionTree {
    nodes: Vec<TreeNode>,
}

impl RegressionTree {
    pub fn predict(&self, features: &[f64]) -> f64 {
        let mut at = 0;
        loop {
            match &self.nodes[at] {
                TreeNode::Leaf { value } => return *value,
                TreeNode::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    at = if features[*feature] < *threshold {
                        *left
                    } else {
                        *right
                    };
                }
            }
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }
}

pub struct GbtParams {
    pub tree_count: usize,
    pub max_depth: usize,
    pub learning_rate: f64,
}

impl Default for GbtParams {
    fn default() -> Self {
        Self {
            tree_count: 50,
            max_depth: 3,
            learning_rate: 0.1,
        }
    }
}

/// A fitted boosted ensemble. Scores are probabilities in `[0,1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GbtModel {
    pub base_score: f64,
    pub learning_rate: f64,
    pub trees: Vec<RegressionTree>,
}

impl GbtModel {
    pub fn score(&self, features: &[f64]) -> f64 {
        let raw: f64 = self.base_score
            + self.learning_rate
                * self
                    .trees
                    .iter()
                    .map(|t| t.predict(features))
                    .sum::<f64>();
        sigmoid(raw)
    }
}

fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

/// Fits an ensemble on rows of `features` against binary `labels`.
pub fn fit(features: &[Vec<f64>], labels: &[bool], params: &GbtParams) -> GbtModel {
    assert_eq!(features.len(), labels.len());
    let n = features.len();
    let positives = labels.iter().filter(|&&y| y).count();
    let prior = ((positives as f64 + 0.5) / (n as f64 - positives as f64 + 0.5)).ln();

    let feature_count = features.first().map_or(0, Vec::len);
    // Column-sorted sample indices, computed once and reused by every split.
    let sorted: Vec<Vec<u32>> = (0..feature_count)
        .map(|f| {
            let mut idx: Vec<u32> = (0..n as u32).collect();
            idx.sort_by(|&a, &b| features[a as usize][f].total_cmp(&features[b as usize][f]));
            idx
        })
        .collect();

    let mut raw = vec![prior; n];
    let mut trees = Vec::with_capacity(params.tree_count);
    for _ in 0..params.tree_count {
        let mut grad = vec![0.0; n];
        let mut hess = vec![0.0; n];
        for i in 0..n {
            let p = sigmoid(raw[i]);
            grad[i] = if labels[i] { 1.0 - p } else { -p };
            hess[i] = (p * (1.0 - p)).max(1e-12);
        }
        let mut builder = TreeBuilder {
            features,
            sorted: &sorted,
            grad: &grad,
            hess: &hess,
            nodes: Vec::new(),
        };
        let mask = vec![true; n];
        builder.build(&mask, n, params.max_depth);
        let tree = RegressionTree {
            nodes: builder.nodes,
        };
        for i in 0..n {
            raw[i] += params.learning_rate * tree.predict(&features[i]);
        }
        trees.push(tree);
    }

    GbtModel {
        base_score: prior,
        learning_rate: params.learning_rate,
        trees,
    }
}

struct TreeBuilder<'a> {
    features: &'a [Vec<f64>],
    sorted: &'a [Vec<u32>],
    grad: &'a [f64],
    hess: &'a [f64],
    nodes: Vec<TreeNode>,
}

struct Split {
    feature: usize,
    threshold: f64,
    gain: f64,
}

impl TreeBuilder<'_> {
    fn build(&mut self, mask: &[bool], count: usize, depth: usize) -> usize {
        let (g_total, h_total) = self.sums(mask);
        if depth == 0 || count < 2 * MIN_CHILD {
            return self.leaf(g_total, h_total);
        }
        let Some(split) = self.best_split(mask, g_total, h_total) else {
            return self.leaf(g_total, h_total);
        };

        let mut left_mask = vec![false; mask.len()];
        let mut right_mask = vec![false; mask.len()];
        let (mut left_count, mut right_count) = (0, 0);
        for (i, &in_node) in mask.iter().enumerate() {
            if !in_node {
                continue;
            }
            if self.features[i][split.feature] < split.threshold {
                left_mask[i] = true;
                left_count += 1;
            } else {
                right_mask[i] = true;
                right_count += 1;
            }
        }

        let at = self.nodes.len();
        self.nodes.push(TreeNode::Leaf { value: 0.0 });
        let left = self.build(&left_mask, left_count, depth - 1);
        let right = self.build(&right_mask, right_count, depth - 1);
        self.nodes[at] = TreeNode::Split {
            feature: split.feature,
            threshold: split.threshold,
            left,
            right,
        };
        at
    }

    fn sums(&self, mask: &[bool]) -> (f64, f64) {
        let mut g = 0.0;
        let mut h = 0.0;
        for (i, &in_node) in mask.iter().enumerate() {
            if in_node {
                g += self.grad[i];
                h += self.hess[i];
            }
        }
        (g, h)
    }

    fn leaf(&mut self, g: f64, h: f64) -> usize {
        self.nodes.push(TreeNode::Leaf {
            value: g / (h + LAMBDA),
        });
        self.nodes.len() - 1
    }

    fn best_split(&self, mask: &[bool], g_total: f64, h_total: f64) -> Option<Split> {
        let score_total = g_total * g_total / (h_total + LAMBDA);
        let mut best: Option<Split> = None;
        for (feature, order) in self.sorted.iter().enumerate() {
            let mut g_left = 0.0;
            let mut h_left = 0.0;
            let mut n_left = 0usize;
            let mut previous: Option<f64> = None;
            for &raw_index in order {
                let i = raw_index as usize;
                if !mask[i] {
                    continue;
                }
                let value = self.features[i][feature];
                if let Some(prev) = previous {
                    if value > prev && n_left >= MIN_CHILD {
                        let g_right = g_total - g_left;
                        let h_right = h_total - h_left;
                        let gain = g_left * g_left / (h_left + LAMBDA)
                            + g_right * g_right / (h_right + LAMBDA)
                            - score_total;
                        let threshold = (prev + value) / 2.0;
                        let better = match &best {
                            Some(b) => gain > b.gain + 1e-12,
                            None => gain > 1e-12,
                        };
                        if better {
                            best = Some(Split {
                                feature,
                                threshold,
                                gain,
                            });
                        }
                    }
                }
                g_left += self.grad[i];
                h_left += self.hess[i];
                n_left += 1;
                previous = Some(value);
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn learns_a_single_threshold_rule() {
        let features: Vec<Vec<f64>> = (0..200)
            .map(|i| vec![i as f64 / 200.0, (i % 7) as f64])
            .collect();
        let labels: Vec<bool> = (0..200).map(|i| i as f64 / 200.0 > 0.35).collect();
        let model = fit(&features, &labels, &GbtParams::default());
        let correct = features
            .iter()
            .zip(&labels)
            .filter(|(x, &y)| (model.score(x) >= 0.5) == y)
            .count();
        assert!(correct >= 198, "only {correct}/200 correct");
    }

    #[test]
    fn learns_an_axis_aligned_region() {
        // Positive iff x > 0.7 and y < 0.3: needs depth two.
        let mut features = Vec::new();
        let mut labels = Vec::new();
        for xi in 0..20 {
            for yi in 0..20 {
                let x = xi as f64 / 20.0;
                let y = yi as f64 / 20.0;
                features.push(vec![x, y]);
                labels.push(x > 0.7 && y < 0.3);
            }
        }
        let model = fit(&features, &labels, &GbtParams::default());
        let correct = features
            .iter()
            .zip(&labels)
            .filter(|(x, &y)| (model.score(x) >= 0.5) == y)
            .count();
        assert!(correct as f64 / 400.0 >= 0.98);
    }

    #[test]
    fn fitting_is_deterministic() {
        let features: Vec<Vec<f64>> = (0..50).map(|i| vec![(i * 37 % 50) as f64]).collect();
        let labels: Vec<bool> = (0..50).map(|i| i % 3 == 0).collect();
        let a = fit(&features, &labels, &GbtParams::default());
        let b = fit(&features, &labels, &GbtParams::default());
        assert_eq!(a, b);
    }

    #[test]
    fn serde_round_trip_preserves_scores() {
        let features: Vec<Vec<f64>> = (0..60).map(|i| vec![i as f64, (i % 5) as f64]).collect();
        let labels: Vec<bool> = (0..60).map(|i| i > 30).collect();
        let model = fit(&features, &labels, &GbtParams::default());
        let json = serde_json::to_string(&model).unwrap();
        let parsed: GbtModel = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed, model);
    }
}
