//! End-to-end per-screen pipeline: validation, refinement, semantics,
//! structure, with per-stage element accounting.

use serde::{Deserialize, Serialize};

use crate::config::HeuristicConfig;
use crate::geometry::{bounding_union, y_overlap};
use crate::model::{
    validate_screen, AccessibilityTree, DetectedElement, Screen, ScreenError, UIType,
};
use crate::refinement::{
    dedup_cross_class, filter_by_confidence, merge_ocr, nms_within_class,
    repair_segmented_controls, OcrLine,
};
use crate::semantics::{
    score_clickability, select_segmented_state, select_tab_state, ClickabilityModel,
};
use crate::structure::{build_tree, group_tabs};

/// Element accounting for one stage: `input = output + removed - added`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageCount {
    pub stage: String,
    pub input: usize,
    pub output: usize,
    pub removed: usize,
    pub added: usize,
}

impl StageCount {
    pub fn balances(&self) -> bool {
        self.input + self.added == self.output + self.removed
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScreenDiagnostics {
    pub screen_id: String,
    pub stages: Vec<StageCount>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineOutput {
    pub tree: AccessibilityTree,
    /// Elements after refinement and semantics, in pipeline order.
    pub elements: Vec<DetectedElement>,
    pub diagnostics: ScreenDiagnostics,
}

fn stage(
    name: &str,
    input: usize,
    output: usize,
    added: usize,
) -> StageCount {
    StageCount {
        stage: name.to_string(),
        input,
        output,
        removed: input + added - output,
        added,
    }
}

/// Runs the full pipeline on one screen.
///
/// The screen's raster, when present, feeds selection-state detection; the
/// clickability model, when present, scores icons.
pub fn process_screen(
    screen: &Screen,
    ocr: &[OcrLine],
    config: &HeuristicConfig,
    clickability: Option<&ClickabilityModel>,
) -> Result<PipelineOutput, Vec<ScreenError>> {
    let (normalized, validation_warnings) = validate_screen(screen)?;
    let mut stages = Vec::new();

    let filtered = filter_by_confidence(&normalized.elements, config);
    stages.push(stage("filter", normalized.elements.len(), filtered.len(), 0));

    let suppressed = nms_within_class(&filtered, config.nms_iou);
    stages.push(stage("nms", filtered.len(), suppressed.len(), 0));

    let deduped = dedup_cross_class(&suppressed, config);
    stages.push(stage("dedup", suppressed.len(), deduped.len(), 0));

    let repaired = repair_segmented_controls(&deduped, config);
    stages.push(stage("repair", deduped.len(), repaired.len(), 0));

    let merged = merge_ocr(&repaired, ocr);
    stages.push(stage(
        "ocr-merge",
        repaired.len(),
        merged.len(),
        merged.len() - repaired.len(),
    ));

    let mut elements = merged;
    apply_selection_states(&mut elements, &normalized, config);
    for element in &mut elements {
        if let Some(flag) = score_clickability(clickability, element) {
            element.clickable = Some(flag);
        }
    }
    stages.push(stage("semantics", elements.len(), elements.len(), 0));

    let mut staged = normalized.clone();
    staged.elements = elements.clone();
    let tree = build_tree(&staged, config);
    stages.push(stage("structure", elements.len(), tree.leaves().len(), 0));

    Ok(PipelineOutput {
        tree,
        elements,
        diagnostics: ScreenDiagnostics {
            screen_id: normalized.screen_id.clone(),
            stages,
            warnings: validation_warnings.iter().map(|w| w.to_string()).collect(),
        },
    })
}

// Tab-bar and segmented-control selection, written onto the members.
fn apply_selection_states(
    elements: &mut [DetectedElement],
    screen: &Screen,
    config: &HeuristicConfig,
) {
    let raster = screen.raster.as_ref();

    let tab_groups = group_tabs(elements, config);
    if tab_groups.len() >= 2 {
        let boxes: Vec<_> = tab_groups
            .iter()
            .map(|members| {
                bounding_union(members.iter().map(|&m| &elements[m].bounds))
                    .expect("tab groups are nonempty")
            })
            .collect();
        let flags = select_tab_state(&boxes, raster, config);
        for (members, flag) in tab_groups.iter().zip(flags) {
            if let Some(selected) = flag {
                for &m in members {
                    elements[m].selected = Some(selected);
                }
            }
        }
    }

    for row in segmented_rows(elements) {
        let segments: Vec<DetectedElement> =
            row.iter().map(|&i| elements[i].clone()).collect();
        let flags = select_segmented_state(&segments, raster, config);
        for (&i, flag) in row.iter().zip(flags) {
            if let Some(selected) = flag {
                elements[i].selected = Some(selected);
            }
        }
    }
}

// Rows of segmented controls: transitive closure of y-overlap, members
// ordered left to right.
fn segmented_rows(elements: &[DetectedElement]) -> Vec<Vec<usize>> {
    let indices: Vec<usize> = (0..elements.len())
        .filter(|&i| elements[i].ui_type == UIType::SegmentedControl)
        .collect();
    let mut assigned = vec![false; indices.len()];
    let mut rows = Vec::new();
    for (k, &i) in indices.iter().enumerate() {
        if assigned[k] {
            continue;
        }
        let mut row = vec![i];
        assigned[k] = true;
        let mut grew = true;
        while grew {
            grew = false;
            for (m, &j) in indices.iter().enumerate() {
                if assigned[m] {
                    continue;
                }
                if row
                    .iter()
                    .any(|&r| y_overlap(&elements[r].bounds, &elements[j].bounds) > 0.0)
                {
                    row.push(j);
                    assigned[m] = true;
                    grew = true;
                }
            }
        }
        if row.len() >= 2 {
            row.sort_by(|&a, &b| {
                elements[a]
                    .bounds
                    .left
                    .total_cmp(&elements[b].bounds.left)
                    .then(a.cmp(&b))
            });
            rows.push(row);
        }
    }
    rows
}
