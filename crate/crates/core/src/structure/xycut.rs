//! Recursive XY-cut ordering.
//!
//! The screen is split along Y wherever a horizontal line crosses no box,
//! each band is split along X the same way, and the alternation recurses.
//! A region that cannot be cut on either axis is ordered top-to-bottom with
//! left-to-right tie-breaking.

use crate::geometry::BBox;
use crate::model::AccessibilityNode;

/// Whitespace narrower than this does not count as a cut, and tops closer
/// than this count as tied.
pub const CUT_EPSILON: f64 = 1e-6;

#[derive(Clone, Copy, PartialEq)]
enum Axis {
    Y,
    X,
}

impl Axis {
    fn other(self) -> Axis {
        match self {
            Axis::Y => Axis::X,
            Axis::X => Axis::Y,
        }
    }

    fn interval(self, b: &BBox) -> (f64, f64) {
        match self {
            Axis::Y => (b.top, b.bottom),
            Axis::X => (b.left, b.right),
        }
    }
}

/// Returns the indices of `boxes` in reading order.
pub fn reading_order(boxes: &[BBox]) -> Vec<usize> {
    let items: Vec<(usize, BBox)> = boxes.iter().copied().enumerate().collect();
    let mut out = Vec::with_capacity(items.len());
    order_region(&items, Axis::Y, &mut out);
    out
}

/// Orders nodes into reading order, recursing into each group's children.
pub fn order_nodes(nodes: Vec<AccessibilityNode>) -> Vec<AccessibilityNode> {
    let ordered_children: Vec<AccessibilityNode> = nodes
        .into_iter()
        .map(|node| match node {
            AccessibilityNode::Leaf(e) => AccessibilityNode::Leaf(e),
            AccessibilityNode::Group {
                kind,
                children,
                alt_text,
                clickable,
            } => AccessibilityNode::Group {
                kind,
                children: order_nodes(children),
                alt_text,
                clickable,
            },
        })
        .collect();
    let boxes: Vec<BBox> = ordered_children.iter().map(|n| n.bounds()).collect();
    let order = reading_order(&boxes);
    let mut slots: Vec<Option<AccessibilityNode>> =
        ordered_children.into_iter().map(Some).collect();
    order
        .into_iter()
        .map(|i| slots[i].take().expect("order is a permutation"))
        .collect()
}

fn order_region(items: &[(usize, BBox)], axis: Axis, out: &mut Vec<usize>) {
    if items.len() <= 1 {
        out.extend(items.iter().map(|(i, _)| *i));
        return;
    }
    if let Some(bands) = split(items, axis) {
        for band in bands {
            order_region(&band, axis.other(), out);
        }
    } else if let Some(bands) = split(items, axis.other()) {
        for band in bands {
            order_region(&band, axis, out);
        }
    } else {
        let mut rest: Vec<(usize, BBox)> = items.to_vec();
        // Tops within CUT_EPSILON tie; ties read left to right.
        rest.sort_by(|a, b| {
            let qa = (a.1.top / CUT_EPSILON).round() as i64;
            let qb = (b.1.top / CUT_EPSILON).round() as i64;
            qa.cmp(&qb)
                .then_with(|| a.1.left.total_cmp(&b.1.left))
                .then_with(|| a.0.cmp(&b.0))
        });
        out.extend(rest.iter().map(|(i, _)| *i));
    }
}

// Splits items into bands separated by whitespace wider than CUT_EPSILON on
// the given axis; None when no such gap exists.
fn split(items: &[(usize, BBox)], axis: Axis) -> Option<Vec<Vec<(usize, BBox)>>> {
    let mut intervals: Vec<(f64, f64)> = items.iter().map(|(_, b)| axis.interval(b)).collect();
    intervals.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut merged: Vec<(f64, f64)> = Vec::new();
    for (lo, hi) in intervals {
        match merged.last_mut() {
            Some(last) if lo <= last.1 + CUT_EPSILON => last.1 = last.1.max(hi),
            _ => merged.push((lo, hi)),
        }
    }
    if merged.len() <= 1 {
        return None;
    }
    let mut bands: Vec<Vec<(usize, BBox)>> = vec![Vec::new(); merged.len()];
    for &(index, b) in items {
        let (lo, _) = axis.interval(&b);
        let band = merged
            .iter()
            .position(|&(mlo, mhi)| lo >= mlo - CUT_EPSILON && lo <= mhi + CUT_EPSILON)
            .expect("every interval lies in a merged band");
        bands[band].push((index, b));
    }
    Some(bands)
}
