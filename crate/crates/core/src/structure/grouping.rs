//! Grouping heuristics: tab buttons, text blocks, picture subtitles, and
//! containers, composed into an accessibility tree.
//!
//! Heuristics run in precedence order tabs → text → subtitles → containers
//! with first-match-wins membership; containers additionally absorb whole
//! TextBlock and PictureWithSubtitle groups.

use crate::config::HeuristicConfig;
use crate::geometry::{
    bounding_union, containment_fraction, x_overlap, x_overlap_fraction, BBox,
};
use crate::model::{
    AccessibilityNode, AccessibilityTree, DetectedElement, GroupKind, Screen, UIType,
};
use crate::structure::xycut::order_nodes;

// Minimal union-find over element indices.
struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, i: usize) -> usize {
        if self.parent[i] != i {
            let root = self.find(self.parent[i]);
            self.parent[i] = root;
        }
        self.parent[i]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    // Components in first-seen order, restricted to flagged members.
    fn components(&mut self, flagged: &[bool]) -> Vec<Vec<usize>> {
        let mut by_root: Vec<(usize, Vec<usize>)> = Vec::new();
        for i in 0..self.parent.len() {
            if !flagged[i] {
                continue;
            }
            let root = self.find(i);
            match by_root.iter_mut().find(|(r, _)| *r == root) {
                Some((_, members)) => members.push(i),
                None => by_root.push((root, vec![i])),
            }
        }
        by_root.into_iter().map(|(_, members)| members).collect()
    }
}

/// Groups bottom-of-screen Icon and Text detections into tab buttons.
///
/// A candidate starts inside the bottom `tab_zone_fraction` of the screen and
/// sits within `tab_height_tolerance` of the bottom-most detection; candidates
/// with x-overlap merge into one tab button. A lone candidate still forms one.
pub fn group_tabs(elements: &[DetectedElement], config: &HeuristicConfig) -> Vec<Vec<usize>> {
    group_tabs_masked(elements, &vec![true; elements.len()], config)
}

fn group_tabs_masked(
    elements: &[DetectedElement],
    free: &[bool],
    config: &HeuristicConfig,
) -> Vec<Vec<usize>> {
    let Some(max_bottom) = elements
        .iter()
        .map(|e| e.bounds.bottom)
        .max_by(f64::total_cmp)
    else {
        return Vec::new();
    };
    let zone_top = 1.0 - config.tab_zone_fraction;
    let mut candidate = vec![false; elements.len()];
    for (i, e) in elements.iter().enumerate() {
        candidate[i] = free[i]
            && matches!(e.ui_type, UIType::Icon | UIType::Text)
            && e.bounds.top >= zone_top
            && max_bottom - e.bounds.top <= config.tab_height_tolerance;
    }
    let mut dsu = Dsu::new(elements.len());
    for i in 0..elements.len() {
        if !candidate[i] {
            continue;
        }
        for j in i + 1..elements.len() {
            if candidate[j] && x_overlap(&elements[i].bounds, &elements[j].bounds) > 0.0 {
                dsu.union(i, j);
            }
        }
    }
    dsu.components(&candidate)
}

/// Groups vertically adjacent text lines into multi-line blocks.
///
/// Two texts link when they have x-overlap and the vertical gap between them
/// is strictly less than the shorter line's height; the transitive closure
/// forms the blocks. Only components of two or more lines become groups.
pub fn group_text(elements: &[DetectedElement], config: &HeuristicConfig) -> Vec<Vec<usize>> {
    group_text_masked(elements, &vec![true; elements.len()], config)
}

fn group_text_masked(
    elements: &[DetectedElement],
    free: &[bool],
    _config: &HeuristicConfig,
) -> Vec<Vec<usize>> {
    let text: Vec<usize> = (0..elements.len())
        .filter(|&i| free[i] && elements[i].ui_type == UIType::Text)
        .collect();
    let mut dsu = Dsu::new(elements.len());
    let mut in_block = vec![false; elements.len()];
    for (pos, &a) in text.iter().enumerate() {
        for &b in &text[pos + 1..] {
            let (upper, lower) = if stacks_above(&elements[a].bounds, &elements[b].bounds) {
                (a, b)
            } else {
                (b, a)
            };
            let (ub, lb) = (&elements[upper].bounds, &elements[lower].bounds);
            if x_overlap(ub, lb) <= 0.0 {
                continue;
            }
            let gap = lb.top - ub.bottom;
            if gap < ub.height().min(lb.height()) {
                dsu.union(a, b);
                in_block[a] = true;
                in_block[b] = true;
            }
        }
    }
    dsu.components(&in_block)
}

fn stacks_above(a: &BBox, b: &BBox) -> bool {
    (a.top, a.left) <= (b.top, b.left)
}

/// Attaches subtitle texts below pictures.
///
/// Text `T1` joins picture `P` when at least `subtitle_x_overlap_min` of
/// `T1`'s width overlaps `P`, the vertical gap is inside `subtitle_y_gap`,
/// and `P` is nearer to `T1` than any detection below `T1`. A second line
/// `T2` may join by satisfying the same conditions against `T1`.
pub fn group_picture_subtitles(
    elements: &[DetectedElement],
    config: &HeuristicConfig,
) -> Vec<Vec<usize>> {
    group_picture_subtitles_masked(elements, &vec![true; elements.len()], config)
}

fn subtitle_conditions_hold(
    elements: &[DetectedElement],
    text: usize,
    anchor: usize,
    config: &HeuristicConfig,
) -> bool {
    let tb = &elements[text].bounds;
    let ab = &elements[anchor].bounds;
    if tb.top < ab.bottom {
        return false;
    }
    if x_overlap_fraction(tb, ab) < config.subtitle_x_overlap_min {
        return false;
    }
    let gap = tb.top - ab.bottom;
    if gap >= config.subtitle_y_gap {
        return false;
    }
    // The anchor above must be nearer than anything below the text.
    let nearest_below = elements
        .iter()
        .enumerate()
        .filter(|(i, e)| *i != text && e.bounds.top >= tb.bottom)
        .map(|(_, e)| e.bounds.top - tb.bottom)
        .min_by(f64::total_cmp);
    match nearest_below {
        Some(below_gap) => gap < below_gap,
        None => true,
    }
}

fn group_picture_subtitles_masked(
    elements: &[DetectedElement],
    free: &[bool],
    config: &HeuristicConfig,
) -> Vec<Vec<usize>> {
    let pictures: Vec<usize> = (0..elements.len())
        .filter(|&i| free[i] && elements[i].ui_type == UIType::Picture)
        .collect();
    let mut texts: Vec<usize> = (0..elements.len())
        .filter(|&i| free[i] && elements[i].ui_type == UIType::Text)
        .collect();

    // Candidate (text -> chosen picture): nearest wins, ties to the
    // vertically nearer then earlier-in-reading-order picture.
    let mut choice: Vec<(usize, usize, f64)> = Vec::new();
    for &t in &texts {
        let best = pictures
            .iter()
            .filter(|&&p| subtitle_conditions_hold(elements, t, p, config))
            .map(|&p| {
                let gap = elements[t].bounds.top - elements[p].bounds.bottom;
                (p, gap)
            })
            .min_by(|a, b| {
                a.1.total_cmp(&b.1)
                    .then_with(|| elements[a.0].bounds.top.total_cmp(&elements[b.0].bounds.top))
                    .then_with(|| elements[a.0].bounds.left.total_cmp(&elements[b.0].bounds.left))
                    .then_with(|| a.0.cmp(&b.0))
            });
        if let Some((p, gap)) = best {
            choice.push((t, p, gap));
        }
    }

    let mut groups = Vec::new();
    for &p in &pictures {
        // One subtitle per picture: the nearest qualifying text.
        let t1 = choice
            .iter()
            .filter(|(t, cp, _)| *cp == p && texts.contains(t))
            .min_by(|a, b| {
                a.2.total_cmp(&b.2)
                    .then_with(|| elements[a.0].bounds.left.total_cmp(&elements[b.0].bounds.left))
                    .then_with(|| a.0.cmp(&b.0))
            })
            .map(|&(t, _, _)| t);
        let Some(t1) = t1 else { continue };
        texts.retain(|&t| t != t1);
        let mut members = vec![p, t1];

        // Optional second line directly below the first.
        let t2 = texts
            .iter()
            .filter(|&&t| subtitle_conditions_hold(elements, t, t1, config))
            .min_by(|&&a, &&b| {
                let ga = elements[a].bounds.top - elements[t1].bounds.bottom;
                let gb = elements[b].bounds.top - elements[t1].bounds.bottom;
                ga.total_cmp(&gb)
                    .then_with(|| elements[a].bounds.left.total_cmp(&elements[b].bounds.left))
                    .then_with(|| a.cmp(&b))
            })
            .copied();
        if let Some(t2) = t2 {
            texts.retain(|&t| t != t2);
            members.push(t2);
        }
        groups.push(members);
    }
    groups
}

/// A planned container group: the container element plus the element and
/// group units that fall inside it.
#[derive(Debug, Clone, PartialEq)]
pub struct ContainerPlan {
    pub container: usize,
    pub element_members: Vec<usize>,
    pub group_members: Vec<usize>,
}

/// Assigns loose elements and absorbable groups to their smallest enclosing
/// container. Containers that collect no members stay plain elements and may
/// themselves join an enclosing container.
fn plan_containers(
    elements: &[DetectedElement],
    free: &[bool],
    groups: &[(GroupKind, Vec<usize>)],
    config: &HeuristicConfig,
) -> Vec<ContainerPlan> {
    let mut containers: Vec<usize> = (0..elements.len())
        .filter(|&i| free[i] && elements[i].ui_type == UIType::Container)
        .collect();
    containers.sort_by(|&a, &b| {
        elements[a]
            .bounds
            .area()
            .total_cmp(&elements[b].bounds.area())
            .then_with(|| a.cmp(&b))
    });
    if containers.is_empty() {
        return Vec::new();
    }

    let smallest_host = |bbox: &BBox, exclude: Option<usize>| -> Option<usize> {
        containers
            .iter()
            .copied()
            .filter(|&c| Some(c) != exclude)
            .find(|&c| containment_fraction(bbox, &elements[c].bounds) >= config.container_membership)
    };

    let mut plans: Vec<ContainerPlan> = containers
        .iter()
        .map(|&c| ContainerPlan {
            container: c,
            element_members: Vec::new(),
            group_members: Vec::new(),
        })
        .collect();
    let position_of = |c: usize, plans: &[ContainerPlan]| -> usize {
        plans.iter().position(|p| p.container == c).unwrap()
    };

    for i in 0..elements.len() {
        if !free[i] || elements[i].ui_type == UIType::Container {
            continue;
        }
        if let Some(host) = smallest_host(&elements[i].bounds, None) {
            let at = position_of(host, &plans);
            plans[at].element_members.push(i);
        }
    }
    for (gi, (kind, members)) in groups.iter().enumerate() {
        if matches!(kind, GroupKind::TabButton) {
            continue;
        }
        let gbox = bounding_union(members.iter().map(|&m| &elements[m].bounds))
            .expect("groups are nonempty");
        if let Some(host) = smallest_host(&gbox, None) {
            let at = position_of(host, &plans);
            plans[at].group_members.push(gi);
        }
    }

    // Ascending by area: an empty container joins its smallest enclosing
    // larger container as a plain member; a populated one stays top-level.
    for pos in 0..plans.len() {
        let plan = &plans[pos];
        if !plan.element_members.is_empty() || !plan.group_members.is_empty() {
            continue;
        }
        let c = plan.container;
        let host = containers[pos + 1..].iter().copied().find(|&other| {
            containment_fraction(&elements[c].bounds, &elements[other].bounds)
                >= config.container_membership
        });
        if let Some(host) = host {
            let at = position_of(host, &plans);
            plans[at].element_members.push(c);
        }
    }

    plans
        .into_iter()
        .filter(|p| !p.element_members.is_empty() || !p.group_members.is_empty())
        .collect()
}

/// Container grouping over loose elements only; used for direct testing.
pub fn group_containers(
    elements: &[DetectedElement],
    config: &HeuristicConfig,
) -> Vec<ContainerPlan> {
    plan_containers(elements, &vec![true; elements.len()], &[], config)
}

/// Applies all grouping heuristics and XY-cut ordering to a refined screen.
///
/// Elements are expected to carry their semantics outputs (selection state,
/// clickability) already; grouping only arranges them.
pub fn build_tree(screen: &Screen, config: &HeuristicConfig) -> AccessibilityTree {
    let elements = &screen.elements;
    let mut free = vec![true; elements.len()];
    let mut flat_groups: Vec<(GroupKind, Vec<usize>)> = Vec::new();

    for members in group_tabs_masked(elements, &free, config) {
        for &m in &members {
            free[m] = false;
        }
        flat_groups.push((GroupKind::TabButton, members));
    }
    for members in group_text_masked(elements, &free, config) {
        for &m in &members {
            free[m] = false;
        }
        flat_groups.push((GroupKind::TextBlock, members));
    }
    for members in group_picture_subtitles_masked(elements, &free, config) {
        for &m in &members {
            free[m] = false;
        }
        flat_groups.push((GroupKind::PictureWithSubtitle, members));
    }

    let container_plans = plan_containers(elements, &free, &flat_groups, config);

    let mut element_taken = vec![false; elements.len()];
    let mut group_taken = vec![false; flat_groups.len()];
    let mut top: Vec<AccessibilityNode> = Vec::new();

    let make_flat_group = |gi: usize| -> AccessibilityNode {
        let (kind, members) = &flat_groups[gi];
        AccessibilityNode::Group {
            kind: *kind,
            children: members
                .iter()
                .map(|&m| AccessibilityNode::Leaf(elements[m].clone()))
                .collect(),
            alt_text: String::new(),
            clickable: false,
        }
    };

    for plan in &container_plans {
        let mut children = vec![AccessibilityNode::Leaf(elements[plan.container].clone())];
        element_taken[plan.container] = true;
        for &m in &plan.element_members {
            children.push(AccessibilityNode::Leaf(elements[m].clone()));
            element_taken[m] = true;
        }
        for &gi in &plan.group_members {
            children.push(make_flat_group(gi));
            group_taken[gi] = true;
            for &m in &flat_groups[gi].1 {
                element_taken[m] = true;
            }
        }
        top.push(AccessibilityNode::Group {
            kind: GroupKind::Container,
            children,
            alt_text: String::new(),
            clickable: false,
        });
    }
    for gi in 0..flat_groups.len() {
        if group_taken[gi] {
            continue;
        }
        for &m in &flat_groups[gi].1 {
            element_taken[m] = true;
        }
        top.push(make_flat_group(gi));
    }
    for (i, e) in elements.iter().enumerate() {
        if !element_taken[i] {
            top.push(AccessibilityNode::Leaf(e.clone()));
        }
    }

    let ordered = order_nodes(top);
    let nodes = ordered.into_iter().map(finalize_node).collect();
    AccessibilityTree {
        screen_id: screen.screen_id.clone(),
        nodes,
    }
}

// Fills alt text and clickability bottom-up once navigation order is fixed.
pub(crate) fn finalize_node(node: AccessibilityNode) -> AccessibilityNode {
    match node {
        AccessibilityNode::Leaf(e) => AccessibilityNode::Leaf(e),
        AccessibilityNode::Group { kind, children, .. } => {
            let children: Vec<AccessibilityNode> =
                children.into_iter().map(finalize_node).collect();
            let alt_text = children
                .iter()
                .map(AccessibilityNode::alt_text)
                .filter(|t| !t.is_empty())
                .collect::<Vec<_>>()
                .join(", ");
            let clickable = children
                .iter()
                .any(|c| c.clickable() == Some(true));
            AccessibilityNode::Group {
                kind,
                children,
                alt_text,
                clickable,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bx(l: f64, t: f64, r: f64, b: f64) -> BBox {
        BBox::new(l, t, r, b).unwrap()
    }

    fn el(id: &str, bounds: BBox, ui_type: UIType) -> DetectedElement {
        DetectedElement::new(id, bounds, ui_type, 0.9)
    }

    fn config() -> HeuristicConfig {
        HeuristicConfig::default()
    }

    fn screen_of(elements: Vec<DetectedElement>) -> Screen {
        let mut s = Screen::new("s0", 390, 844);
        s.elements = elements;
        s
    }

    #[test]
    fn tab_bar_of_icon_label_pairs_forms_one_button_each() {
        let mut elements = Vec::new();
        for i in 0..4 {
            let x = 0.05 + i as f64 * 0.24;
            elements.push(el(
                &format!("icon{i}"),
                bx(x, 0.90, x + 0.10, 0.95),
                UIType::Icon,
            ));
            elements.push(el(
                &format!("label{i}"),
                bx(x - 0.01, 0.955, x + 0.11, 0.98),
                UIType::Text,
            ));
        }
        let groups = group_tabs(&elements, &config());
        assert_eq!(groups.len(), 4);
        assert!(groups.iter().all(|g| g.len() == 2));
    }

    #[test]
    fn top_of_screen_icons_never_group_as_tabs() {
        let elements = vec![
            el("a", bx(0.1, 0.05, 0.2, 0.1), UIType::Icon),
            el("b", bx(0.3, 0.05, 0.4, 0.1), UIType::Icon),
        ];
        assert!(group_tabs(&elements, &config()).is_empty());
    }

    #[test]
    fn lone_bottom_text_still_forms_a_tab_button() {
        let elements = vec![
            el("body", bx(0.1, 0.2, 0.9, 0.3), UIType::Text),
            el("t", bx(0.4, 0.93, 0.6, 0.97), UIType::Text),
        ];
        let groups = group_tabs(&elements, &config());
        assert_eq!(groups, vec![vec![1]]);
    }

    #[test]
    fn deep_candidates_above_tolerance_stay_out() {
        // Candidate starts in the zone but too far above the bottom-most one.
        let elements = vec![
            el("high", bx(0.1, 0.82, 0.3, 0.86), UIType::Icon),
            el("low", bx(0.5, 0.955, 0.7, 0.99), UIType::Icon),
        ];
        let groups = group_tabs(&elements, &config());
        assert_eq!(groups, vec![vec![1]]);
    }

    #[test]
    fn stacked_lines_group_and_boundary_gap_does_not() {
        // Dyadic coordinates keep the boundary comparison exact.
        let line_h = 0.0625;
        let a = el("a", bx(0.125, 0.125, 0.875, 0.125 + line_h), UIType::Text);
        let close = el("b", bx(0.125, 0.21875, 0.875, 0.21875 + line_h), UIType::Text);
        let groups = group_text(&[a.clone(), close], &config());
        assert_eq!(groups, vec![vec![0, 1]]);

        // Gap exactly equal to the min height: strictly-less rule rejects it.
        let exact = el("b", bx(0.125, 0.25, 0.875, 0.25 + line_h), UIType::Text);
        assert!(group_text(&[a.clone(), exact], &config()).is_empty());

        let beside = el("b", bx(0.125, 0.125, 0.875, 0.125 + line_h), UIType::Text);
        let far_left = el("a", bx(0.0, 0.125, 0.0625, 0.125 + line_h), UIType::Text);
        assert!(group_text(&[far_left, beside], &config()).is_empty());
    }

    #[test]
    fn multi_line_paragraph_groups_transitively() {
        let mut elements = Vec::new();
        for i in 0..4 {
            let top = 0.1 + i as f64 * 0.05;
            elements.push(el(
                &format!("l{i}"),
                bx(0.1, top, 0.9, top + 0.04),
                UIType::Text,
            ));
        }
        let groups = group_text(&elements, &config());
        assert_eq!(groups, vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn close_caption_groups_with_picture_but_distant_does_not() {
        let p = el("p", bx(0.2, 0.1, 0.8, 0.4), UIType::Picture);
        let close = el("t", bx(0.3, 0.41, 0.7, 0.44), UIType::Text);
        let groups = group_picture_subtitles(&[p.clone(), close], &config());
        assert_eq!(groups, vec![vec![0, 1]]);

        let distant = el("t", bx(0.3, 0.45, 0.7, 0.48), UIType::Text);
        assert!(group_picture_subtitles(&[p, distant], &config()).is_empty());
    }

    #[test]
    fn second_subtitle_line_joins_when_conditions_repeat() {
        let p = el("p", bx(0.2, 0.1, 0.8, 0.4), UIType::Picture);
        let t1 = el("t1", bx(0.3, 0.41, 0.7, 0.44), UIType::Text);
        let t2 = el("t2", bx(0.3, 0.455, 0.7, 0.485), UIType::Text);
        let groups = group_picture_subtitles(&[p, t1, t2], &config());
        assert_eq!(groups, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn equidistant_caption_binds_to_earlier_picture() {
        let p1 = el("p1", bx(0.0, 0.1, 0.4, 0.4), UIType::Picture);
        let p2 = el("p2", bx(0.4, 0.1, 0.8, 0.4), UIType::Picture);
        let caption = el("t", bx(0.2, 0.41, 0.6, 0.44), UIType::Text);
        let groups = group_picture_subtitles(&[p1, p2, caption], &config());
        assert_eq!(groups, vec![vec![0, 2]]);
    }

    #[test]
    fn caption_with_nearer_content_below_stays_loose() {
        let p = el("p", bx(0.2, 0.1, 0.8, 0.4), UIType::Picture);
        // Gap to picture above: 0.02; gap to icon below: 0.005.
        let t = el("t", bx(0.3, 0.42, 0.7, 0.45), UIType::Text);
        let icon = el("i", bx(0.3, 0.455, 0.5, 0.50), UIType::Icon);
        assert!(group_picture_subtitles(&[p, t, icon], &config()).is_empty());
    }

    #[test]
    fn container_groups_its_contents() {
        let elements = vec![
            el("c", bx(0.05, 0.1, 0.95, 0.2), UIType::Container),
            el("icon", bx(0.08, 0.12, 0.16, 0.18), UIType::Icon),
            el("label", bx(0.2, 0.12, 0.6, 0.18), UIType::Text),
            el("chevron", bx(0.88, 0.13, 0.93, 0.17), UIType::Icon),
            el("outside", bx(0.1, 0.5, 0.9, 0.6), UIType::Text),
        ];
        let plans = group_containers(&elements, &config());
        assert_eq!(plans.len(), 1);
        assert_eq!(plans[0].container, 0);
        assert_eq!(plans[0].element_members, vec![1, 2, 3]);
    }

    #[test]
    fn empty_container_stays_leaf_and_half_contained_stays_out() {
        let elements = vec![
            el("c", bx(0.1, 0.1, 0.5, 0.3), UIType::Container),
            // Straddles the right edge at 50% containment.
            el("straddle", bx(0.3, 0.15, 0.7, 0.25), UIType::Icon),
        ];
        assert!(group_containers(&elements, &config()).is_empty());
        let tree = build_tree(&screen_of(elements), &config());
        assert_eq!(tree.nodes.len(), 2);
        assert!(tree.nodes.iter().all(|n| !n.is_group()));
    }

    #[test]
    fn empty_container_joins_enclosing_container() {
        let elements = vec![
            el("outer", bx(0.05, 0.1, 0.95, 0.4), UIType::Container),
            el("inner", bx(0.1, 0.15, 0.5, 0.35), UIType::Container),
            el("label", bx(0.55, 0.2, 0.9, 0.3), UIType::Text),
        ];
        let plans = group_containers(&elements, &config());
        assert_eq!(plans.len(), 1);
        assert_eq!(plans[0].container, 0);
        let mut members = plans[0].element_members.clone();
        members.sort_unstable();
        assert_eq!(members, vec![1, 2]);
    }

    #[test]
    fn containers_absorb_text_blocks_whole() {
        let elements = vec![
            el("c", bx(0.05, 0.1, 0.95, 0.3), UIType::Container),
            el("l1", bx(0.1, 0.12, 0.9, 0.16), UIType::Text),
            el("l2", bx(0.1, 0.17, 0.9, 0.21), UIType::Text),
        ];
        let tree = build_tree(&screen_of(elements), &config());
        assert_eq!(tree.nodes.len(), 1);
        let AccessibilityNode::Group { kind, children, .. } = &tree.nodes[0] else {
            panic!("expected container group");
        };
        assert_eq!(*kind, GroupKind::Container);
        // Container leaf plus one TextBlock subgroup.
        assert_eq!(children.len(), 2);
        assert!(children.iter().any(|c| matches!(
            c,
            AccessibilityNode::Group { kind: GroupKind::TextBlock, .. }
        )));
    }

    #[test]
    fn tree_keeps_every_element_exactly_once() {
        let mut elements = Vec::new();
        // Five container rows of three members each: twenty elements total.
        for r in 0..5 {
            let top = 0.05 + r as f64 * 0.14;
            elements.push(el(
                &format!("c{r}"),
                bx(0.05, top, 0.95, top + 0.10),
                UIType::Container,
            ));
            elements.push(el(
                &format!("i{r}"),
                bx(0.08, top + 0.02, 0.16, top + 0.08),
                UIType::Icon,
            ));
            elements.push(el(
                &format!("t{r}"),
                bx(0.2, top + 0.02, 0.6, top + 0.08),
                UIType::Text,
            ));
            elements.push(el(
                &format!("v{r}"),
                bx(0.85, top + 0.03, 0.92, top + 0.07),
                UIType::Icon,
            ));
        }
        let screen = screen_of(elements.clone());
        let tree = build_tree(&screen, &config());
        assert_eq!(tree.nodes.len(), 5);
        let mut ids = tree.leaf_ids();
        ids.sort();
        let mut expected: Vec<String> = elements.iter().map(|e| e.id.clone()).collect();
        expected.sort();
        assert_eq!(ids, expected);
    }

    #[test]
    fn tab_bar_orders_last_and_alt_text_concatenates() {
        let mut title = el("title", bx(0.1, 0.05, 0.9, 0.09), UIType::Text);
        title.text = Some("World Clock".into());
        let mut icon = el("tab-icon", bx(0.42, 0.92, 0.50, 0.955), UIType::Icon);
        icon.icon_class = Some("clock".into());
        icon.clickable = Some(true);
        let mut label = el("tab-label", bx(0.41, 0.96, 0.51, 0.985), UIType::Text);
        label.text = Some("Clocks".into());
        let screen = screen_of(vec![label, title, icon]);
        let tree = build_tree(&screen, &config());
        assert_eq!(tree.nodes.len(), 2);
        assert!(!tree.nodes[0].is_group());
        let AccessibilityNode::Group {
            kind,
            alt_text,
            clickable,
            ..
        } = &tree.nodes[1]
        else {
            panic!("expected tab group last");
        };
        assert_eq!(*kind, GroupKind::TabButton);
        assert_eq!(alt_text, "clock, Clocks");
        assert!(*clickable);
    }

    #[test]
    fn empty_screen_builds_empty_tree() {
        let tree = build_tree(&screen_of(vec![]), &config());
        assert!(tree.nodes.is_empty());
    }
}
