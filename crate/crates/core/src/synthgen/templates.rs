//! Screen templates: tab-bar, list, article, picture-grid, and
//! segmented-control screens.
//!
//! Every template keeps rows inside XY-cut-separable bands, keeps unrelated
//! texts farther apart than their heights, and keeps non-tab content out of
//! the tab zone, so the intended groups are exactly the ones the heuristics
//! recover. Several rows deliberately sit at 0.9x or 1.1x of a threshold to
//! exercise boundaries.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::config::HeuristicConfig;
use crate::geometry::BBox;
use crate::model::{
    AccessibilityNode, AccessibilityTree, DetectedElement, GroupKind, Screen, UIType,
};
use crate::structure::finalize_node;
use crate::synthgen::{
    planted_clickability_rule, GenSpec, PaintPlan, ScreenTruth, SelectionControl, SelectionTruth,
    TemplateKind,
};

pub(crate) const MAX_CONTENT_ROWS: usize = 7;

pub(crate) const ICON_VOCAB: [&str; 12] = [
    "back", "close", "menu", "search", "settings", "share", "star", "home", "profile", "cart",
    "chevron", "info",
];

const WORDS: [&str; 20] = [
    "alarm", "world", "clock", "today", "weather", "news", "home", "profile", "settings",
    "search", "music", "photos", "mail", "notes", "maps", "stocks", "browse", "library", "radio",
    "listen",
];

const BG: [u8; 4] = [248, 248, 248, 255];
const INK_TEXT: [u8; 4] = [96, 96, 96, 255];
const INK_ICON: [u8; 4] = [64, 64, 64, 255];
const PICTURE_FILL: [u8; 4] = [136, 168, 200, 255];
const CONTAINER_FILL: [u8; 4] = [232, 232, 232, 255];
const FIELD_FILL: [u8; 4] = [216, 216, 224, 255];
const WIDGET_INK: [u8; 4] = [128, 128, 136, 255];
const ACCENT: [u8; 4] = [248, 112, 0, 255];

const LEFT: f64 = 0.05;
const RIGHT: f64 = 0.95;
const CONTENT_TOP: f64 = 0.05;
const CONTENT_BOTTOM: f64 = 0.78;
const ROW_GAP: f64 = 0.045;
const LINE_H: f64 = 0.025;
const TITLE_H: f64 = 0.034;

// Accent within one quantization step of its base color: invisible after
// quantization at the default 5 bits.
fn below_step(base: [u8; 4]) -> [u8; 4] {
    [base[0] + 3, base[1] + 3, base[2] + 3, 255]
}

enum Seed {
    Leaf(usize),
    Group(GroupKind, Vec<Seed>),
}

struct Builder {
    elements: Vec<DetectedElement>,
    seeds: Vec<Seed>,
    fills: Vec<(String, [u8; 4])>,
    extras: Vec<(BBox, [u8; 4])>,
    selection: Option<SelectionTruth>,
}

impl Builder {
    fn new() -> Self {
        Self {
            elements: Vec::new(),
            seeds: Vec::new(),
            fills: Vec::new(),
            extras: Vec::new(),
            selection: None,
        }
    }

    fn add(&mut self, bounds: BBox, ui_type: UIType, fill: [u8; 4]) -> usize {
        let id = format!("e{}", self.elements.len());
        self.fills.push((id.clone(), fill));
        self.elements
            .push(DetectedElement::new(id, bounds, ui_type, 1.0));
        self.elements.len() - 1
    }

    fn add_text(&mut self, bounds: BBox, rng: &mut ChaCha8Rng) -> usize {
        let i = self.add(bounds, UIType::Text, INK_TEXT);
        self.elements[i].text = Some(words(rng));
        i
    }

    fn add_icon(&mut self, bounds: BBox, rng: &mut ChaCha8Rng) -> usize {
        let i = self.add(bounds, UIType::Icon, INK_ICON);
        self.elements[i].icon_class =
            Some(ICON_VOCAB[rng.gen_range(0..ICON_VOCAB.len())].to_string());
        i
    }
}

fn words(rng: &mut ChaCha8Rng) -> String {
    let n = rng.gen_range(1..=3);
    (0..n)
        .map(|_| WORDS[rng.gen_range(0..WORDS.len())])
        .collect::<Vec<_>>()
        .join(" ")
}

fn bx(l: f64, t: f64, r: f64, b: f64) -> BBox {
    BBox::new(l, t, r, b).expect("template boxes are valid")
}

fn pick_template(spec: &GenSpec, rng: &mut ChaCha8Rng) -> TemplateKind {
    let mix = &spec.template_mix;
    let weights = [
        (TemplateKind::TabBar, mix.tab_bar),
        (TemplateKind::List, mix.list),
        (TemplateKind::Article, mix.article),
        (TemplateKind::PictureGrid, mix.picture_grid),
        (TemplateKind::Segmented, mix.segmented),
    ];
    let total: f64 = weights.iter().map(|(_, w)| w).sum();
    let mut draw = rng.gen_range(0.0..total);
    for (kind, w) in weights {
        if draw < w {
            return kind;
        }
        draw -= w;
    }
    TemplateKind::Article
}

pub(crate) fn generate_screen(
    spec: &GenSpec,
    config: &HeuristicConfig,
    index: usize,
    rng: &mut ChaCha8Rng,
) -> ScreenTruth {
    let template = pick_template(spec, rng);
    let mut builder = Builder::new();
    let rows = rng.gen_range(spec.min_rows..=spec.max_rows);

    match template {
        TemplateKind::TabBar => {
            content_rows(&mut builder, rows, rng, &[RowKind::Title, RowKind::Paragraph, RowKind::Container, RowKind::LoosePair, RowKind::Widget]);
            if rng.gen_bool(0.2) {
                // In the tab zone but farther above the bottom-most
                // detection than the tolerance allows: never a tab.
                let i = builder.add_icon(bx(0.47, 0.80, 0.51, 0.84), rng);
                builder.seeds.push(Seed::Leaf(i));
            }
            tab_bar(&mut builder, spec, rng);
        }
        TemplateKind::List => {
            content_rows(&mut builder, rows, rng, &[RowKind::Title, RowKind::Container, RowKind::Container, RowKind::Field]);
        }
        TemplateKind::Article => {
            content_rows(&mut builder, rows, rng, &[RowKind::Title, RowKind::Paragraph, RowKind::Paragraph, RowKind::LoosePair, RowKind::Widget]);
        }
        TemplateKind::PictureGrid => {
            picture_grid(&mut builder, rows.min(3), config, rng);
        }
        TemplateKind::Segmented => {
            segmented_screen(&mut builder, spec, rows, rng);
        }
    }

    // Ground-truth clickability from the planted rule, recorded beside the
    // screen: detections never carry inference-side fields.
    let mut clickable = std::collections::BTreeMap::new();
    for element in &builder.elements {
        let truth = match element.ui_type {
            UIType::Icon => Some(planted_clickability_rule(
                &element.bounds,
                element.icon_class.as_deref().unwrap_or("unknown"),
            )),
            t if t.intrinsically_clickable() => Some(true),
            _ => None,
        };
        if let Some(flag) = truth {
            clickable.insert(element.id.clone(), flag);
        }
    }

    let screen_id = format!("synth-{index:05}");
    let mut screen = Screen::new(screen_id.clone(), spec.width_px, spec.height_px);
    screen.elements = builder.elements.clone();

    let nodes: Vec<AccessibilityNode> = builder
        .seeds
        .iter()
        .map(|seed| finalize_node(seed_to_node(seed, &builder.elements)))
        .collect();
    let tree = AccessibilityTree {
        screen_id,
        nodes,
    };

    ScreenTruth {
        screen,
        tree,
        template,
        selection: builder.selection,
        clickable,
        paint: PaintPlan {
            background: BG,
            fills: builder.fills,
            extras: builder.extras,
        },
    }
}

fn seed_to_node(seed: &Seed, elements: &[DetectedElement]) -> AccessibilityNode {
    match seed {
        Seed::Leaf(i) => AccessibilityNode::Leaf(elements[*i].clone()),
        Seed::Group(kind, children) => AccessibilityNode::Group {
            kind: *kind,
            children: children.iter().map(|c| seed_to_node(c, elements)).collect(),
            alt_text: String::new(),
            clickable: false,
        },
    }
}

#[derive(Clone, Copy, PartialEq)]
enum RowKind {
    Title,
    Paragraph,
    LoosePair,
    Container,
    Field,
    Widget,
}

// Stacks content rows from CONTENT_TOP, stopping when the next row would
// cross into the reserved bottom zone.
fn content_rows(builder: &mut Builder, rows: usize, rng: &mut ChaCha8Rng, kinds: &[RowKind]) {
    let mut cursor = CONTENT_TOP;
    for row in 0..rows {
        let kind = if row == 0 {
            RowKind::Title
        } else {
            kinds[rng.gen_range(0..kinds.len())]
        };
        let Some(next) = emit_row(builder, kind, cursor, rng) else {
            break;
        };
        cursor = next + ROW_GAP;
    }
}

// Returns the bottom of the emitted row, or None when it does not fit.
fn emit_row(builder: &mut Builder, kind: RowKind, top: f64, rng: &mut ChaCha8Rng) -> Option<f64> {
    match kind {
        RowKind::Title => {
            let width = rng.gen_range(0.3..0.6);
            let bottom = top + TITLE_H;
            if bottom > CONTENT_BOTTOM {
                return None;
            }
            let i = builder.add_text(bx(LEFT, top, LEFT + width, bottom), rng);
            builder.seeds.push(Seed::Leaf(i));
            Some(bottom)
        }
        RowKind::Paragraph => {
            let lines = rng.gen_range(2..=4);
            // Gaps strictly under the line height, up to 0.9x at the edge.
            let gaps: Vec<f64> = (0..lines - 1)
                .map(|_| LINE_H * rng.gen_range(0.2..0.9))
                .collect();
            let height = lines as f64 * LINE_H + gaps.iter().sum::<f64>();
            if top + height > CONTENT_BOTTOM {
                return None;
            }
            let mut children = Vec::new();
            let mut y = top;
            for line in 0..lines {
                let width = rng.gen_range(0.5..0.85);
                let i = builder.add_text(bx(LEFT, y, LEFT + width, y + LINE_H), rng);
                children.push(Seed::Leaf(i));
                y += LINE_H;
                if line + 1 < lines {
                    y += gaps[line];
                }
            }
            builder.seeds.push(Seed::Group(GroupKind::TextBlock, children));
            Some(top + height)
        }
        RowKind::LoosePair => {
            // Gap at 1.1x the line height: stacked but not a block.
            let gap = LINE_H * 1.1;
            let bottom = top + 2.0 * LINE_H + gap;
            if bottom > CONTENT_BOTTOM {
                return None;
            }
            let a = builder.add_text(bx(LEFT, top, LEFT + 0.7, top + LINE_H), rng);
            let b = builder.add_text(
                bx(LEFT, top + LINE_H + gap, LEFT + 0.6, bottom),
                rng,
            );
            builder.seeds.push(Seed::Leaf(a));
            builder.seeds.push(Seed::Leaf(b));
            Some(bottom)
        }
        RowKind::Container => {
            let height = 0.09;
            let bottom = top + height;
            if bottom > CONTENT_BOTTOM {
                return None;
            }
            let container = builder.add(bx(LEFT, top, RIGHT, bottom), UIType::Container, CONTAINER_FILL);
            let member_top = top + 0.027;
            let member_bottom = top + 0.063;
            let icon = builder.add_icon(bx(0.08, member_top, 0.144, member_bottom), rng);
            let label_w = rng.gen_range(0.2..0.45);
            let label = builder.add_text(bx(0.17, member_top, 0.17 + label_w, member_bottom), rng);
            let mut children = vec![Seed::Leaf(container), Seed::Leaf(icon), Seed::Leaf(label)];
            let trailing_box = bx(0.88, member_top, 0.92, member_bottom);
            match rng.gen_range(0..10) {
                0..=4 => {
                    let chevron = builder.add_icon(trailing_box, rng);
                    children.push(Seed::Leaf(chevron));
                }
                5 | 6 => {
                    let ty = if rng.gen_bool(0.5) {
                        UIType::ToggleSelected
                    } else {
                        UIType::ToggleUnselected
                    };
                    let t = builder.add(trailing_box, ty, WIDGET_INK);
                    children.push(Seed::Leaf(t));
                }
                7 => {
                    let ty = if rng.gen_bool(0.5) {
                        UIType::CheckboxSelected
                    } else {
                        UIType::CheckboxUnselected
                    };
                    let c = builder.add(trailing_box, ty, WIDGET_INK);
                    children.push(Seed::Leaf(c));
                }
                _ => {}
            }
            builder.seeds.push(Seed::Group(GroupKind::Container, children));
            Some(bottom)
        }
        RowKind::Field => {
            let bottom = top + 0.055;
            if bottom > CONTENT_BOTTOM {
                return None;
            }
            let i = builder.add(bx(LEFT, top, RIGHT, bottom), UIType::TextField, FIELD_FILL);
            builder.seeds.push(Seed::Leaf(i));
            Some(bottom)
        }
        RowKind::Widget => {
            let (ty, height, left, right) = match rng.gen_range(0..10) {
                0..=3 => (UIType::Slider, 0.04, LEFT, RIGHT),
                4..=7 => (UIType::PageControl, 0.025, 0.35, 0.65),
                _ => (UIType::Dialog, 0.12, 0.15, 0.85),
            };
            let bottom = top + height;
            if bottom > CONTENT_BOTTOM {
                return None;
            }
            let i = builder.add(bx(left, top, right, bottom), ty, WIDGET_INK);
            builder.seeds.push(Seed::Leaf(i));
            Some(bottom)
        }
    }
}

fn tab_bar(builder: &mut Builder, spec: &GenSpec, rng: &mut ChaCha8Rng) {
    let n = rng.gen_range(3..=5);
    let selected = rng.gen_range(0..n);
    let slot = 0.9 / n as f64;
    // Some bars sit slightly higher, probing the height tolerance from the
    // inside (0.89x of it).
    let icon_top = if rng.gen_bool(0.3) { 0.903 } else { 0.910 };
    let mut members = Vec::new();
    for tab in 0..n {
        let cx = LEFT + slot * (tab as f64 + 0.5);
        let tint = if tab == selected {
            if spec.below_step_contrast {
                below_step(INK_ICON)
            } else {
                ACCENT
            }
        } else {
            INK_ICON
        };
        let icon = builder.add(bx(cx - 0.035, icon_top, cx + 0.035, 0.945), UIType::Icon, tint);
        builder.elements[icon].icon_class =
            Some(ICON_VOCAB[rng.gen_range(0..ICON_VOCAB.len())].to_string());
        let mut children = vec![Seed::Leaf(icon)];
        let mut ids = vec![builder.elements[icon].id.clone()];
        if rng.gen_bool(0.7) {
            let label = builder.add(bx(cx - 0.045, 0.952, cx + 0.045, 0.974), UIType::Text, tint);
            builder.elements[label].text = Some(words(rng));
            ids.push(builder.elements[label].id.clone());
            children.push(Seed::Leaf(label));
        }
        members.push(ids);
        builder.seeds.push(Seed::Group(GroupKind::TabButton, children));
    }
    builder.selection = Some(SelectionTruth {
        control: SelectionControl::TabBar,
        members,
        selected,
        detectable: !spec.below_step_contrast,
    });
}

fn picture_grid(builder: &mut Builder, rows: usize, config: &HeuristicConfig, rng: &mut ChaCha8Rng) {
    let mut cursor = CONTENT_TOP;
    if let Some(bottom) = emit_row(builder, RowKind::Title, cursor, rng) {
        cursor = bottom + ROW_GAP;
    }
    let gap_threshold = config.subtitle_y_gap;
    for _ in 0..rows.max(1) {
        let cells = rng.gen_range(2..=3);
        let cell_gap = 0.04;
        let cell_w = (0.9 - (cells as f64 - 1.0) * cell_gap) / cells as f64;
        let picture_h = 0.11;
        // One caption structure per row keeps condition-3 margins honest
        // between neighboring cells.
        let style = rng.gen_range(0..10);
        let caption_h = 0.022;
        let (caption_lines, gap1, gap2) = match style {
            0..=5 => (1, gap_threshold * rng.gen_range(0.2..0.9), 0.0),
            6 | 7 => (2, gap_threshold * rng.gen_range(0.2..0.7), 0.026),
            8 => (1, gap_threshold * 1.1, 0.0), // just over: stays loose
            _ => (0, 0.0, 0.0),
        };
        let loose = style == 8;
        let row_h = picture_h
            + if caption_lines >= 1 { gap1 + caption_h } else { 0.0 }
            + if caption_lines == 2 { gap2 + caption_h } else { 0.0 };
        if cursor + row_h > CONTENT_BOTTOM {
            break;
        }
        // Loose rows leave a full-width horizontal gap between the picture
        // band and the caption band, so reading order is pictures first.
        let mut loose_captions = Vec::new();
        for cell in 0..cells {
            let left = LEFT + cell as f64 * (cell_w + cell_gap);
            let right = left + cell_w;
            let picture = builder.add(
                bx(left, cursor, right, cursor + picture_h),
                UIType::Picture,
                PICTURE_FILL,
            );
            let caption_left = left + cell_w * 0.125;
            let caption_right = right - cell_w * 0.125;
            let mut seeds = vec![Seed::Leaf(picture)];
            let mut y = cursor + picture_h;
            for line in 0..caption_lines {
                let gap = if line == 0 { gap1 } else { gap2 };
                let t = builder.add_text(
                    bx(caption_left, y + gap, caption_right, y + gap + caption_h),
                    rng,
                );
                seeds.push(Seed::Leaf(t));
                y += gap + caption_h;
            }
            if loose {
                let mut it = seeds.into_iter();
                builder.seeds.push(it.next().expect("picture seed"));
                loose_captions.extend(it);
            } else if caption_lines == 0 {
                for seed in seeds {
                    builder.seeds.push(seed);
                }
            } else {
                builder
                    .seeds
                    .push(Seed::Group(GroupKind::PictureWithSubtitle, seeds));
            }
        }
        builder.seeds.extend(loose_captions);
        cursor += row_h + ROW_GAP;
    }
}

fn segmented_screen(builder: &mut Builder, spec: &GenSpec, rows: usize, rng: &mut ChaCha8Rng) {
    // Variants: tinted glyph, bottom bar, or a text label only on the
    // selected segment. Below-step corpora stick to pixel variants.
    let variant = if spec.below_step_contrast {
        rng.gen_range(0..2)
    } else {
        rng.gen_range(0..3)
    };
    // The color-outlier rules are ill-posed for pairs, so pixel variants
    // always render three or more segments.
    let n = if variant == 2 {
        rng.gen_range(2..=4)
    } else {
        rng.gen_range(3..=4)
    };
    let selected = rng.gen_range(0..n);
    let seg_gap = 0.02;
    let seg_w = (0.9 - (n as f64 - 1.0) * seg_gap) / n as f64;
    let seg_h = 0.05;
    let top = CONTENT_TOP;
    let mut members = Vec::new();
    for seg in 0..n {
        let left = LEFT + seg as f64 * (seg_w + seg_gap);
        let bounds = bx(left, top, left + seg_w, top + seg_h);
        let glyph = if variant == 0 && seg == selected {
            if spec.below_step_contrast {
                below_step(INK_TEXT)
            } else {
                ACCENT
            }
        } else {
            INK_TEXT
        };
        let i = builder.add(bounds, UIType::SegmentedControl, glyph);
        if variant == 2 && seg == selected {
            builder.elements[i].text = Some(words(rng));
        }
        if variant == 1 && seg == selected {
            let bar_color = if spec.below_step_contrast {
                below_step(BG)
            } else {
                ACCENT
            };
            builder.extras.push((
                bx(left, top + seg_h * 0.85, left + seg_w, top + seg_h),
                bar_color,
            ));
        }
        members.push(vec![builder.elements[i].id.clone()]);
        builder.seeds.push(Seed::Leaf(i));
    }
    builder.selection = Some(SelectionTruth {
        control: SelectionControl::SegmentedRow,
        members,
        selected,
        detectable: variant == 2 || !spec.below_step_contrast,
    });

    let mut cursor = top + seg_h + ROW_GAP;
    for row in 0..rows.saturating_sub(1) {
        let kind = if row == 0 { RowKind::Title } else { RowKind::Paragraph };
        let Some(bottom) = emit_row(builder, kind, cursor, rng) else {
            break;
        };
        cursor = bottom + ROW_GAP;
    }
}
