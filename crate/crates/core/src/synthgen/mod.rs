//! Deterministic synthetic screen generator.
//!
//! Produces ground-truth screens (elements, groups, navigation order,
//! selection states, clickability, flat-color rasters) plus a detector-noise
//! model, so every pipeline stage can be tested against known answers. The
//! generator and the heuristics share their constants through
//! [`HeuristicConfig`], and layouts stay XY-cut separable by construction
//! except where templates intentionally nest.

mod noise;
mod templates;

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::HeuristicConfig;
use crate::geometry::BBox;
use crate::model::{AccessibilityTree, Raster, Screen, UIType};
use crate::semantics::LabeledIcon;

pub use noise::apply_noise;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("infeasible generator spec: {0}")]
    InfeasibleSpec(String),
}

/// Relative weight of each screen template in a corpus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TemplateMix {
    pub tab_bar: f64,
    pub list: f64,
    pub article: f64,
    pub picture_grid: f64,
    pub segmented: f64,
}

impl Default for TemplateMix {
    fn default() -> Self {
        Self {
            tab_bar: 1.0,
            list: 1.0,
            article: 1.0,
            picture_grid: 1.0,
            segmented: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TemplateKind {
    TabBar,
    List,
    Article,
    PictureGrid,
    Segmented,
}

/// Detector-noise model applied to truth detections.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct NoiseSpec {
    /// Box jitter standard deviation as a fraction of each box dimension.
    pub box_jitter_sigma: f64,
    /// Per-class drop probability; classes absent fall back to the default.
    pub drop_prob: BTreeMap<UIType, f64>,
    pub default_drop_prob: f64,
    /// Probability of emitting a second, jittered copy of a detection.
    pub duplicate_prob: f64,
    /// Class-confusion rules applied independently per detection.
    pub confusion: Vec<ConfusionRule>,
    /// Standard deviation of the confidence perturbation.
    pub confidence_sigma: f64,
}

impl Default for NoiseSpec {
    fn default() -> Self {
        Self {
            box_jitter_sigma: 0.0,
            drop_prob: BTreeMap::new(),
            default_drop_prob: 0.0,
            duplicate_prob: 0.0,
            confusion: Vec::new(),
            confidence_sigma: 0.0,
        }
    }
}

impl NoiseSpec {
    pub fn is_zero(&self) -> bool {
        self.box_jitter_sigma == 0.0
            && self.default_drop_prob == 0.0
            && self.drop_prob.values().all(|&p| p == 0.0)
            && self.duplicate_prob == 0.0
            && self.confusion.iter().all(|r| r.prob == 0.0)
            && self.confidence_sigma == 0.0
    }

    pub fn drop_for(&self, ui_type: UIType) -> f64 {
        self.drop_prob
            .get(&ui_type)
            .copied()
            .unwrap_or(self.default_drop_prob)
    }

    /// A mild all-around noise preset.
    pub fn mild() -> Self {
        Self {
            box_jitter_sigma: 0.04,
            drop_prob: BTreeMap::new(),
            default_drop_prob: 0.05,
            duplicate_prob: 0.1,
            confusion: vec![
                ConfusionRule {
                    from: UIType::Icon,
                    to: UIType::Picture,
                    prob: 0.08,
                },
                ConfusionRule {
                    from: UIType::Picture,
                    to: UIType::Icon,
                    prob: 0.08,
                },
                ConfusionRule {
                    from: UIType::SegmentedControl,
                    to: UIType::Text,
                    prob: 0.1,
                },
                ConfusionRule {
                    from: UIType::CheckboxSelected,
                    to: UIType::Icon,
                    prob: 0.1,
                },
            ],
            confidence_sigma: 0.12,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfusionRule {
    pub from: UIType,
    pub to: UIType,
    pub prob: f64,
}

/// Full generator configuration; deterministic given `seed`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GenSpec {
    pub seed: u64,
    pub screens: usize,
    pub width_px: u32,
    pub height_px: u32,
    /// Content rows per screen, inclusive range.
    pub min_rows: usize,
    pub max_rows: usize,
    pub template_mix: TemplateMix,
    pub noise: NoiseSpec,
    pub render_rasters: bool,
    /// Render selection accents within one quantization step of their base
    /// color, making selection undetectable from pixels.
    pub below_step_contrast: bool,
}

impl Default for GenSpec {
    fn default() -> Self {
        Self {
            seed: 0,
            screens: 50,
            width_px: 390,
            height_px: 844,
            min_rows: 2,
            max_rows: 5,
            template_mix: TemplateMix::default(),
            noise: NoiseSpec::default(),
            render_rasters: true,
            below_step_contrast: false,
        }
    }
}

impl GenSpec {
    pub fn validate(&self) -> Result<(), GenError> {
        if self.screens == 0 {
            return Err(GenError::InfeasibleSpec("zero screens requested".into()));
        }
        if self.width_px == 0 || self.height_px == 0 {
            return Err(GenError::InfeasibleSpec("zero raster dimensions".into()));
        }
        let weights = [
            self.template_mix.tab_bar,
            self.template_mix.list,
            self.template_mix.article,
            self.template_mix.picture_grid,
            self.template_mix.segmented,
        ];
        if weights.iter().any(|&w| w < 0.0) || weights.iter().sum::<f64>() <= 0.0 {
            return Err(GenError::InfeasibleSpec(
                "template mix needs a positive total weight".into(),
            ));
        }
        if self.min_rows == 0 || self.min_rows > self.max_rows {
            return Err(GenError::InfeasibleSpec(format!(
                "bad row range {}..={}",
                self.min_rows, self.max_rows
            )));
        }
        if self.max_rows > templates::MAX_CONTENT_ROWS {
            return Err(GenError::InfeasibleSpec(format!(
                "{} rows cannot fit above the tab zone (max {})",
                self.max_rows,
                templates::MAX_CONTENT_ROWS
            )));
        }
        let probabilities = [
            self.noise.default_drop_prob,
            self.noise.duplicate_prob,
        ];
        for p in probabilities
            .into_iter()
            .chain(self.noise.drop_prob.values().copied())
            .chain(self.noise.confusion.iter().map(|r| r.prob))
        {
            if !(0.0..=1.0).contains(&p) {
                return Err(GenError::InfeasibleSpec(format!(
                    "probability {p} outside [0,1]"
                )));
            }
        }
        if self.noise.box_jitter_sigma < 0.0 || self.noise.confidence_sigma < 0.0 {
            return Err(GenError::InfeasibleSpec("negative noise sigma".into()));
        }
        Ok(())
    }
}

/// Which control a screen's selection ground truth describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SelectionControl {
    TabBar,
    SegmentedRow,
}

/// Ground-truth selection state for one screen's stateful control.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionTruth {
    pub control: SelectionControl,
    /// Element ids per member, in left-to-right order. Tab members list the
    /// ids of the icon and optional label; segments are singletons.
    pub members: Vec<Vec<String>>,
    pub selected: usize,
    /// False when the accent was rendered within one quantization step.
    pub detectable: bool,
}

/// Flat-color paint instructions for one screen's raster.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PaintPlan {
    pub background: [u8; 4],
    /// Inset glyph fill per element id.
    pub fills: Vec<(String, [u8; 4])>,
    /// Extra rectangles (selection bars and similar).
    pub extras: Vec<(BBox, [u8; 4])>,
}

/// One generated screen with every ground truth the tests need.
#[derive(Debug, Clone, PartialEq)]
pub struct ScreenTruth {
    pub screen: Screen,
    pub tree: AccessibilityTree,
    pub template: TemplateKind,
    pub selection: Option<SelectionTruth>,
    /// Ground-truth clickability per element id (icons and intrinsics).
    pub clickable: BTreeMap<String, bool>,
    pub paint: PaintPlan,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Corpus {
    pub truth: Vec<ScreenTruth>,
    pub noisy: Vec<Screen>,
}

// SplitMix64; gives every screen an independent, stable stream.
fn mix_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_mul(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Generates truth screens, trees, labels, rasters, and noisy detections.
pub fn generate_corpus(spec: &GenSpec) -> Result<Corpus, GenError> {
    generate_corpus_with(spec, &HeuristicConfig::default())
}

/// As [`generate_corpus`] but sharing explicit heuristic constants.
pub fn generate_corpus_with(
    spec: &GenSpec,
    config: &HeuristicConfig,
) -> Result<Corpus, GenError> {
    spec.validate()?;
    let mut truth = Vec::with_capacity(spec.screens);
    let mut noisy = Vec::with_capacity(spec.screens);
    for index in 0..spec.screens {
        let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(spec.seed, index as u64));
        let mut screen_truth = templates::generate_screen(spec, config, index, &mut rng);
        if spec.render_rasters {
            let raster = render_raster(&screen_truth.screen, &screen_truth.paint);
            screen_truth.screen.raster = Some(raster);
        }
        let mut noisy_screen = apply_noise(&screen_truth.screen, &spec.noise, &mut rng);
        noisy_screen.raster = screen_truth.screen.raster.clone();
        truth.push(screen_truth);
        noisy.push(noisy_screen);
    }
    Ok(Corpus { truth, noisy })
}

/// Renders the screen's flat-color raster from its paint plan.
pub fn render_raster(screen: &Screen, paint: &PaintPlan) -> Raster {
    let (w, h) = (screen.width_px, screen.height_px);
    let mut raster = Raster::filled(w, h, paint.background);
    let to_px = |b: &BBox| {
        let x0 = (b.left * f64::from(w)).round() as u32;
        let x1 = (b.right * f64::from(w)).round() as u32;
        let y0 = (b.top * f64::from(h)).round() as u32;
        let y1 = (b.bottom * f64::from(h)).round() as u32;
        (x0, y0, x1.max(x0 + 1), y1.max(y0 + 1))
    };
    for (id, color) in &paint.fills {
        if let Some(element) = screen.elements.iter().find(|e| &e.id == id) {
            // Glyphs are painted inset so the surrounding background stays
            // the most frequent color inside any detection crop.
            let b = element.bounds;
            let inset = BBox {
                left: b.left + b.width() * 0.25,
                top: b.top + b.height() * 0.25,
                right: b.right - b.width() * 0.25,
                bottom: b.bottom - b.height() * 0.25,
            };
            let (x0, y0, x1, y1) = to_px(&inset);
            raster.fill_rect(x0, y0, x1, y1, *color);
        }
    }
    for (bounds, color) in &paint.extras {
        let (x0, y0, x1, y1) = to_px(bounds);
        raster.fill_rect(x0, y0, x1, y1, *color);
    }
    raster
}

/// Synthesizes a labeled icon set with a planted clickability rule:
/// an icon is clickable when it sits in the top-right region or carries a
/// navigation icon class; `flip_prob` of labels are inverted as noise.
pub fn generate_clickability_dataset(seed: u64, count: usize, flip_prob: f64) -> Vec<LabeledIcon> {
    let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, 0xC11C));
    let vocab = templates::ICON_VOCAB;
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let w = rng.gen_range(0.03..0.12);
        let h = rng.gen_range(0.03..0.12);
        let left = rng.gen_range(0.0..1.0 - w);
        let top = rng.gen_range(0.0..1.0 - h);
        let bounds = BBox::new(left, top, left + w, top + h).unwrap();
        let icon_class = vocab[rng.gen_range(0..vocab.len())].to_string();
        let mut clickable = planted_clickability_rule(&bounds, &icon_class);
        if flip_prob > 0.0 && rng.gen_bool(flip_prob) {
            clickable = !clickable;
        }
        out.push(LabeledIcon {
            bounds,
            icon_class: Some(icon_class),
            clickable,
        });
    }
    out
}

/// The generator's ground-truth clickability rule for icons.
pub fn planted_clickability_rule(bounds: &BBox, icon_class: &str) -> bool {
    let (cx, cy) = bounds.center();
    (cx > 0.7 && cy < 0.3) || matches!(icon_class, "back" | "close")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::refinement;

    #[test]
    fn fixed_seed_reproduces_byte_identical_output() {
        let spec = GenSpec {
            screens: 6,
            noise: NoiseSpec::mild(),
            width_px: 130,
            height_px: 282,
            ..GenSpec::default()
        };
        let a = generate_corpus(&spec).unwrap();
        let b = generate_corpus(&spec).unwrap();
        assert_eq!(a, b);
        let json_a = serde_json::to_vec(&a.noisy).unwrap();
        let json_b = serde_json::to_vec(&b.noisy).unwrap();
        assert_eq!(json_a, json_b);
    }

    #[test]
    fn zero_noise_keeps_detections_equal_to_truth() {
        let spec = GenSpec {
            screens: 8,
            render_rasters: false,
            ..GenSpec::default()
        };
        let corpus = generate_corpus(&spec).unwrap();
        for (truth, noisy) in corpus.truth.iter().zip(&corpus.noisy) {
            assert_eq!(truth.screen.elements, noisy.elements);
        }
    }

    #[test]
    fn full_duplicate_probability_doubles_every_icon() {
        let mut noise = NoiseSpec::default();
        noise.duplicate_prob = 1.0;
        let spec = GenSpec {
            screens: 6,
            noise,
            render_rasters: false,
            ..GenSpec::default()
        };
        let corpus = generate_corpus(&spec).unwrap();
        for (truth, noisy) in corpus.truth.iter().zip(&corpus.noisy) {
            for e in &truth.screen.elements {
                let copies = noisy
                    .elements
                    .iter()
                    .filter(|n| n.id == e.id || n.id == format!("{}-dup", e.id))
                    .count();
                assert!(copies >= 2, "element {} not duplicated", e.id);
            }
        }
    }

    #[test]
    fn truth_trees_cover_every_element_once() {
        let spec = GenSpec {
            screens: 12,
            render_rasters: false,
            ..GenSpec::default()
        };
        let corpus = generate_corpus(&spec).unwrap();
        for truth in &corpus.truth {
            let mut ids = truth.tree.leaf_ids();
            ids.sort();
            let mut expected: Vec<String> = truth
                .screen
                .elements
                .iter()
                .map(|e| e.id.clone())
                .collect();
            expected.sort();
            assert_eq!(ids, expected, "screen {}", truth.screen.screen_id);
        }
    }

    #[test]
    fn truth_screens_pass_refinement_unchanged() {
        let spec = GenSpec {
            screens: 12,
            render_rasters: false,
            ..GenSpec::default()
        };
        let config = HeuristicConfig::default();
        let corpus = generate_corpus(&spec).unwrap();
        for truth in &corpus.truth {
            let refined = refinement::refine(&truth.screen.elements, &[], &config);
            assert_eq!(refined, truth.screen.elements);
        }
    }

    #[test]
    fn infeasible_specs_are_rejected() {
        let mut spec = GenSpec::default();
        spec.screens = 0;
        assert!(generate_corpus(&spec).is_err());
        let mut spec = GenSpec::default();
        spec.max_rows = 40;
        assert!(generate_corpus(&spec).is_err());
        let mut spec = GenSpec::default();
        spec.noise.duplicate_prob = 1.5;
        assert!(generate_corpus(&spec).is_err());
    }

    #[test]
    fn clickability_dataset_is_deterministic_and_balanced() {
        let a = generate_clickability_dataset(7, 500, 0.02);
        let b = generate_clickability_dataset(7, 500, 0.02);
        assert_eq!(a, b);
        let positives = a.iter().filter(|d| d.clickable).count();
        assert!(positives > 25 && positives < 475);
    }
}
