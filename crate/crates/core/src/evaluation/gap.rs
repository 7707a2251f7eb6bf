//! Gap analysis: how many human annotations have a counterpart among the
//! accessibility elements a screen actually exposes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::config::HeuristicConfig;
use crate::model::{Screen, UIType};

/// Fraction of screen area at which an exposed element counts as fullscreen
/// and is ignored.
pub const FULLSCREEN_AREA: f64 = 0.98;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GapCategory {
    /// Exactly one annotation inside the exposed box.
    Matched,
    /// Contained by an exposed box that holds other annotations too.
    ContainedAmbiguous,
    /// Overlaps an exposed box without being contained.
    OverlappingAmbiguous,
    /// No containment and no overlap above the IoU floor.
    Unmatched,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnnotationOutcome {
    pub annotation_id: String,
    pub ui_type: UIType,
    pub category: GapCategory,
    /// Set when the icon-alignment exception produced the match.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub via_icon_exception: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapScreenReport {
    pub screen_id: String,
    pub outcomes: Vec<AnnotationOutcome>,
    /// Percent of considered annotations that matched; `None` without any.
    pub match_percent: Option<f64>,
}

/// Categorizes one screen's annotations against its exposed elements.
///
/// Fullscreen exposed elements are excluded up front, and `Other`
/// annotations (advertisements, maps) are not considered. An unmatched Icon
/// that horizontally aligns with a matched, not independently clickable Text
/// annotation matches by exception.
pub fn gap_analysis(
    annotations: &Screen,
    exposed: &Screen,
    config: &HeuristicConfig,
) -> GapScreenReport {
    let exposed_boxes: Vec<&crate::model::DetectedElement> = exposed
        .elements
        .iter()
        .filter(|e| e.bounds.area() < FULLSCREEN_AREA)
        .collect();
    let considered: Vec<&crate::model::DetectedElement> = annotations
        .elements
        .iter()
        .filter(|a| a.ui_type != UIType::Other)
        .collect();

    // Containment counts per exposed box decide match uniqueness.
    let contained_counts: Vec<usize> = exposed_boxes
        .iter()
        .map(|b| {
            considered
                .iter()
                .filter(|a| {
                    crate::geometry::containment_fraction(&a.bounds, &b.bounds)
                        >= config.containment_match
                })
                .count()
        })
        .collect();

    let mut outcomes: Vec<AnnotationOutcome> = considered
        .iter()
        .map(|a| {
            let mut containers = exposed_boxes.iter().enumerate().filter(|(_, b)| {
                crate::geometry::containment_fraction(&a.bounds, &b.bounds)
                    >= config.containment_match
            });
            let category = if let Some((first, _)) = containers.next() {
                let uniquely = std::iter::once(first)
                    .chain(containers.map(|(i, _)| i))
                    .any(|i| contained_counts[i] == 1);
                if uniquely {
                    GapCategory::Matched
                } else {
                    GapCategory::ContainedAmbiguous
                }
            } else if exposed_boxes
                .iter()
                .any(|b| crate::geometry::iou(&a.bounds, &b.bounds) >= config.overlap_match_iou)
            {
                GapCategory::OverlappingAmbiguous
            } else {
                GapCategory::Unmatched
            };
            AnnotationOutcome {
                annotation_id: a.id.clone(),
                ui_type: a.ui_type,
                category,
                via_icon_exception: false,
            }
        })
        .collect();

    // Icon-alignment exception: unmatched icons beside a matched text that
    // is not independently clickable ride along with that text's element.
    let matched_passive_texts: Vec<usize> = considered
        .iter()
        .enumerate()
        .filter(|(i, a)| {
            a.ui_type == UIType::Text
                && outcomes[*i].category == GapCategory::Matched
                && a.clickable_annotated != Some(true)
        })
        .map(|(i, _)| i)
        .collect();
    for (i, annotation) in considered.iter().enumerate() {
        if annotation.ui_type != UIType::Icon || outcomes[i].category != GapCategory::Unmatched {
            continue;
        }
        let aligned = matched_passive_texts.iter().any(|&t| {
            crate::geometry::y_overlap(&annotation.bounds, &considered[t].bounds) > 0.0
        });
        if aligned {
            outcomes[i].category = GapCategory::Matched;
            outcomes[i].via_icon_exception = true;
        }
    }

    let match_percent = (!outcomes.is_empty()).then(|| {
        let matched = outcomes
            .iter()
            .filter(|o| o.category == GapCategory::Matched)
            .count();
        100.0 * matched as f64 / outcomes.len() as f64
    });
    GapScreenReport {
        screen_id: annotations.screen_id.clone(),
        outcomes,
        match_percent,
    }
}

/// Match-percent histogram bins: exactly 0%, ten 10%-wide bins with the last
/// open below 100%, and exactly 100%.
pub const HISTOGRAM_LABELS: [&str; 12] = [
    "0%",
    "(0,10]%",
    "(10,20]%",
    "(20,30]%",
    "(30,40]%",
    "(40,50]%",
    "(50,60]%",
    "(60,70]%",
    "(70,80]%",
    "(80,90]%",
    "(90,100)%",
    "100%",
];

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct GapReport {
    pub screens: Vec<GapScreenReport>,
    pub totals: BTreeMap<GapCategory, usize>,
    pub unmatched_by_type: BTreeMap<UIType, usize>,
    /// Screen counts per `HISTOGRAM_LABELS` bin.
    pub histogram: Vec<usize>,
    /// Fraction of screens with at least one annotation that found no match.
    pub screens_with_unmatched: f64,
}

/// Aggregates per-screen reports into the corpus-level analysis.
pub fn gap_report(screens: Vec<GapScreenReport>) -> GapReport {
    let mut totals: BTreeMap<GapCategory, usize> = BTreeMap::new();
    let mut unmatched_by_type: BTreeMap<UIType, usize> = BTreeMap::new();
    let mut histogram = vec![0usize; HISTOGRAM_LABELS.len()];
    let mut with_unmatched = 0usize;
    let mut with_annotations = 0usize;

    for screen in &screens {
        for outcome in &screen.outcomes {
            *totals.entry(outcome.category).or_insert(0) += 1;
            if outcome.category == GapCategory::Unmatched {
                *unmatched_by_type.entry(outcome.ui_type).or_insert(0) += 1;
            }
        }
        let Some(percent) = screen.match_percent else {
            continue;
        };
        with_annotations += 1;
        if screen
            .outcomes
            .iter()
            .any(|o| o.category != GapCategory::Matched)
        {
            with_unmatched += 1;
        }
        let bin = if percent <= 0.0 {
            0
        } else if percent >= 100.0 {
            11
        } else if percent > 90.0 {
            10
        } else {
            // (0,10] -> 1 ... (80,90] -> 9
            ((percent - 1e-9) / 10.0) as usize + 1
        };
        histogram[bin] += 1;
    }

    GapReport {
        screens,
        totals,
        unmatched_by_type,
        histogram,
        screens_with_unmatched: if with_annotations == 0 {
            0.0
        } else {
            with_unmatched as f64 / with_annotations as f64
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::BBox;
    use crate::model::DetectedElement;

    fn bx(l: f64, t: f64, r: f64, b: f64) -> BBox {
        BBox::new(l, t, r, b).unwrap()
    }

    fn screen(id: &str, elements: Vec<DetectedElement>) -> Screen {
        let mut s = Screen::new(id, 390, 844);
        s.elements = elements;
        s
    }

    fn annotation(id: &str, bounds: BBox, ty: UIType) -> DetectedElement {
        DetectedElement::new(id, bounds, ty, 1.0)
    }

    #[test]
    fn lone_contained_annotation_matches() {
        let ann = screen(
            "s0",
            vec![annotation("a0", bx(0.2, 0.2, 0.4, 0.3), UIType::Text)],
        );
        let exposed = screen(
            "s0",
            vec![annotation("x0", bx(0.15, 0.15, 0.45, 0.35), UIType::Other)],
        );
        let report = gap_analysis(&ann, &exposed, &HeuristicConfig::default());
        assert_eq!(report.outcomes[0].category, GapCategory::Matched);
        assert_eq!(report.match_percent, Some(100.0));
    }

    #[test]
    fn boxes_below_both_floors_stay_unmatched() {
        // Containment 0.84 and IoU below 0.05 against everything.
        let ann = screen(
            "s0",
            vec![annotation("a0", bx(0.0, 0.0, 0.5, 0.2), UIType::Picture)],
        );
        let exposed = screen(
            "s0",
            vec![annotation("x0", bx(0.42, 0.16, 0.9, 0.9), UIType::Other)],
        );
        let report = gap_analysis(&ann, &exposed, &HeuristicConfig::default());
        assert_eq!(report.outcomes[0].category, GapCategory::Unmatched);
    }

    #[test]
    fn shared_container_is_ambiguous() {
        let ann = screen(
            "s0",
            vec![
                annotation("a0", bx(0.2, 0.2, 0.4, 0.25), UIType::Text),
                annotation("a1", bx(0.2, 0.3, 0.4, 0.35), UIType::Text),
            ],
        );
        let exposed = screen(
            "s0",
            vec![annotation("x0", bx(0.1, 0.1, 0.5, 0.4), UIType::Other)],
        );
        let report = gap_analysis(&ann, &exposed, &HeuristicConfig::default());
        assert!(report
            .outcomes
            .iter()
            .all(|o| o.category == GapCategory::ContainedAmbiguous));
    }

    #[test]
    fn fullscreen_exposed_elements_are_ignored() {
        let ann = screen(
            "s0",
            vec![annotation("a0", bx(0.2, 0.2, 0.4, 0.3), UIType::Text)],
        );
        let exposed = screen(
            "s0",
            vec![annotation("x0", bx(0.0, 0.0, 1.0, 1.0), UIType::Other)],
        );
        let report = gap_analysis(&ann, &exposed, &HeuristicConfig::default());
        assert_eq!(report.outcomes[0].category, GapCategory::Unmatched);
    }

    #[test]
    fn icon_beside_matched_passive_text_matches_by_exception() {
        let mut text = annotation("t", bx(0.3, 0.2, 0.7, 0.26), UIType::Text);
        text.clickable_annotated = Some(false);
        let icon = annotation("i", bx(0.08, 0.2, 0.16, 0.26), UIType::Icon);
        let ann = screen("s0", vec![text, icon]);
        let exposed = screen(
            "s0",
            vec![annotation("x0", bx(0.28, 0.18, 0.72, 0.28), UIType::Other)],
        );
        let report = gap_analysis(&ann, &exposed, &HeuristicConfig::default());
        assert_eq!(report.outcomes[1].category, GapCategory::Matched);
        assert!(report.outcomes[1].via_icon_exception);

        // The same icon next to an independently clickable text stays out.
        let mut clickable_text = annotation("t", bx(0.3, 0.2, 0.7, 0.26), UIType::Text);
        clickable_text.clickable_annotated = Some(true);
        let ann2 = screen("s0", vec![clickable_text, annotation("i", bx(0.08, 0.2, 0.16, 0.26), UIType::Icon)]);
        let report2 = gap_analysis(&ann2, &exposed, &HeuristicConfig::default());
        assert_eq!(report2.outcomes[1].category, GapCategory::Unmatched);
    }

    #[test]
    fn histogram_separates_exact_bounds() {
        let mk = |id: &str, percent_matched: usize, total: usize| {
            let mut outcomes = Vec::new();
            for i in 0..total {
                outcomes.push(AnnotationOutcome {
                    annotation_id: format!("a{i}"),
                    ui_type: UIType::Text,
                    category: if i < percent_matched {
                        GapCategory::Matched
                    } else {
                        GapCategory::Unmatched
                    },
                    via_icon_exception: false,
                });
            }
            GapScreenReport {
                screen_id: id.into(),
                outcomes,
                match_percent: Some(100.0 * percent_matched as f64 / total as f64),
            }
        };
        let report = gap_report(vec![
            mk("zero", 0, 4),
            mk("all", 4, 4),
            mk("half", 2, 4),
            mk("nearly", 19, 20),
        ]);
        assert_eq!(report.histogram[0], 1);
        assert_eq!(report.histogram[11], 1);
        assert_eq!(report.histogram[5], 1); // 50% -> (40,50]
        assert_eq!(report.histogram[10], 1); // 95% -> (90,100)
        assert_eq!(report.screens_with_unmatched, 0.75);
    }
}
