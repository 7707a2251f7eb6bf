//! Core data model: the element taxonomy, screens, rasters, and the
//! accessibility tree the pipeline emits.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::BBox;

/// UI element classes.
///
/// The first thirteen are detector classes; `TabButton` and `Other` appear
/// only in pipeline output or annotation data.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub enum UIType {
    CheckboxSelected,
    CheckboxUnselected,
    Container,
    Dialog,
    Icon,
    PageControl,
    Picture,
    SegmentedControl,
    Slider,
    Text,
    TextField,
    ToggleSelected,
    ToggleUnselected,
    TabButton,
    Other,
}

impl UIType {
    /// The thirteen classes a detector may emit.
    pub const DETECTOR_CLASSES: [UIType; 13] = [
        UIType::CheckboxSelected,
        UIType::CheckboxUnselected,
        UIType::Container,
        UIType::Dialog,
        UIType::Icon,
        UIType::PageControl,
        UIType::Picture,
        UIType::SegmentedControl,
        UIType::Slider,
        UIType::Text,
        UIType::TextField,
        UIType::ToggleSelected,
        UIType::ToggleUnselected,
    ];

    pub fn is_detector_class(self) -> bool {
        Self::DETECTOR_CLASSES.contains(&self)
    }

    /// Types that carry a selected/not-selected state.
    pub fn has_selection_semantics(self) -> bool {
        matches!(
            self,
            UIType::CheckboxSelected
                | UIType::CheckboxUnselected
                | UIType::ToggleSelected
                | UIType::ToggleUnselected
                | UIType::SegmentedControl
                | UIType::TabButton
        )
    }

    /// Types whose interactivity is implied by the type itself.
    pub fn intrinsically_clickable(self) -> bool {
        matches!(
            self,
            UIType::TextField
                | UIType::Slider
                | UIType::PageControl
                | UIType::CheckboxSelected
                | UIType::CheckboxUnselected
                | UIType::ToggleSelected
                | UIType::ToggleUnselected
                | UIType::SegmentedControl
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            UIType::CheckboxSelected => "CheckboxSelected",
            UIType::CheckboxUnselected => "CheckboxUnselected",
            UIType::Container => "Container",
            UIType::Dialog => "Dialog",
            UIType::Icon => "Icon",
            UIType::PageControl => "PageControl",
            UIType::Picture => "Picture",
            UIType::SegmentedControl => "SegmentedControl",
            UIType::Slider => "Slider",
            UIType::Text => "Text",
            UIType::TextField => "TextField",
            UIType::ToggleSelected => "ToggleSelected",
            UIType::ToggleUnselected => "ToggleUnselected",
            UIType::TabButton => "TabButton",
            UIType::Other => "Other",
        }
    }
}

impl fmt::Display for UIType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One detection on a screen.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectedElement {
    pub id: String,
    #[serde(rename = "box")]
    pub bounds: BBox,
    #[serde(rename = "type")]
    pub ui_type: UIType,
    pub confidence: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub text: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub icon_class: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub selected: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub clickable: Option<bool>,
    /// Human ground-truth clickability; present only in annotation data.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub clickable_annotated: Option<bool>,
}

impl DetectedElement {
    pub fn new(id: impl Into<String>, bounds: BBox, ui_type: UIType, confidence: f64) -> Self {
        Self {
            id: id.into(),
            bounds,
            ui_type,
            confidence,
            text: None,
            icon_class: None,
            selected: None,
            clickable: None,
            clickable_annotated: None,
        }
    }

    /// Spoken label: the OCR text when present, otherwise the icon class.
    pub fn spoken_text(&self) -> Option<&str> {
        self.text
            .as_deref()
            .filter(|t| !t.is_empty())
            .or(self.icon_class.as_deref().filter(|c| !c.is_empty()))
    }
}

/// An RGBA pixel grid. Stored row-major, 4 bytes per pixel.
#[derive(Debug, Clone, PartialEq)]
pub struct Raster {
    pub width: u32,
    pub height: u32,
    pub pixels: Vec<u8>,
}

impl Raster {
    pub fn filled(width: u32, height: u32, rgba: [u8; 4]) -> Self {
        let mut pixels = Vec::with_capacity((width * height * 4) as usize);
        for _ in 0..width * height {
            pixels.extend_from_slice(&rgba);
        }
        Self {
            width,
            height,
            pixels,
        }
    }

    pub fn get(&self, x: u32, y: u32) -> [u8; 4] {
        let i = ((y * self.width + x) * 4) as usize;
        [
            self.pixels[i],
            self.pixels[i + 1],
            self.pixels[i + 2],
            self.pixels[i + 3],
        ]
    }

    pub fn set(&mut self, x: u32, y: u32, rgba: [u8; 4]) {
        let i = ((y * self.width + x) * 4) as usize;
        self.pixels[i..i + 4].copy_from_slice(&rgba);
    }

    /// Fills the axis-aligned pixel rectangle `[x0,x1) × [y0,y1)`.
    pub fn fill_rect(&mut self, x0: u32, y0: u32, x1: u32, y1: u32, rgba: [u8; 4]) {
        for y in y0..y1.min(self.height) {
            for x in x0..x1.min(self.width) {
                self.set(x, y, rgba);
            }
        }
    }

    pub fn load_png(path: &Path) -> Result<Self, RasterError> {
        let img = image::open(path)
            .map_err(|e| RasterError::Decode(path.display().to_string(), e.to_string()))?
            .into_rgba8();
        Ok(Self {
            width: img.width(),
            height: img.height(),
            pixels: img.into_raw(),
        })
    }

    pub fn save_png(&self, path: &Path) -> Result<(), RasterError> {
        let img: image::RgbaImage =
            image::ImageBuffer::from_raw(self.width, self.height, self.pixels.clone())
                .expect("pixel buffer matches dimensions");
        img.save(path)
            .map_err(|e| RasterError::Encode(path.display().to_string(), e.to_string()))
    }
}

#[derive(Debug, Error)]
pub enum RasterError {
    #[error("failed to decode raster {0}: {1}")]
    Decode(String, String),
    #[error("failed to encode raster {0}: {1}")]
    Encode(String, String),
}

/// A set of detections plus screen dimensions and an optional raster.
///
/// The raster is referenced by a relative PNG path and loaded lazily; the
/// in-memory copy never serializes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Screen {
    pub screen_id: String,
    pub width_px: u32,
    pub height_px: u32,
    pub elements: Vec<DetectedElement>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub raster_path: Option<String>,
    #[serde(skip)]
    pub raster: Option<Raster>,
}

impl Screen {
    pub fn new(screen_id: impl Into<String>, width_px: u32, height_px: u32) -> Self {
        Self {
            screen_id: screen_id.into(),
            width_px,
            height_px,
            elements: Vec::new(),
            raster_path: None,
            raster: None,
        }
    }

    /// Loads the referenced raster relative to `base_dir` unless already present.
    pub fn ensure_raster(&mut self, base_dir: &Path) -> Result<(), RasterError> {
        if self.raster.is_some() {
            return Ok(());
        }
        if let Some(rel) = &self.raster_path {
            self.raster = Some(Raster::load_png(&base_dir.join(rel))?);
        }
        Ok(())
    }
}

/// Group kinds produced by the structure heuristics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GroupKind {
    TabButton,
    Container,
    TextBlock,
    PictureWithSubtitle,
}

impl GroupKind {
    pub fn name(self) -> &'static str {
        match self {
            GroupKind::TabButton => "TabButton",
            GroupKind::Container => "Container",
            GroupKind::TextBlock => "TextBlock",
            GroupKind::PictureWithSubtitle => "PictureWithSubtitle",
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A node of the accessibility tree: a leaf element or a group of nodes.
#[derive(Debug, Clone, PartialEq)]
pub enum AccessibilityNode {
    Leaf(DetectedElement),
    Group {
        kind: GroupKind,
        children: Vec<AccessibilityNode>,
        alt_text: String,
        clickable: bool,
    },
}

impl AccessibilityNode {
    /// The node's screen box; a group covers the union of its children.
    pub fn bounds(&self) -> BBox {
        match self {
            AccessibilityNode::Leaf(e) => e.bounds,
            AccessibilityNode::Group { children, .. } => {
                let mut it = children.iter().map(AccessibilityNode::bounds);
                let first = it.next().expect("groups are nonempty");
                it.fold(first, |acc, b| acc.union_with(&b))
            }
        }
    }

    /// Leaf elements in navigation order.
    pub fn leaves(&self) -> Vec<&DetectedElement> {
        match self {
            AccessibilityNode::Leaf(e) => vec![e],
            AccessibilityNode::Group { children, .. } => {
                children.iter().flat_map(|c| c.leaves()).collect()
            }
        }
    }

    pub fn is_group(&self) -> bool {
        matches!(self, AccessibilityNode::Group { .. })
    }

    /// Alt text spoken for the node: group alt text, or the leaf's label.
    pub fn alt_text(&self) -> String {
        match self {
            AccessibilityNode::Leaf(e) => e.spoken_text().unwrap_or("").to_string(),
            AccessibilityNode::Group { alt_text, .. } => alt_text.clone(),
        }
    }

    pub fn clickable(&self) -> Option<bool> {
        match self {
            AccessibilityNode::Leaf(e) => e.clickable,
            AccessibilityNode::Group { clickable, .. } => Some(*clickable),
        }
    }
}

/// Pipeline output for one screen: ordered top-level nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct AccessibilityTree {
    pub screen_id: String,
    pub nodes: Vec<AccessibilityNode>,
}

impl AccessibilityTree {
    /// All leaf elements in navigation order.
    pub fn leaves(&self) -> Vec<&DetectedElement> {
        self.nodes.iter().flat_map(|n| n.leaves()).collect()
    }

    /// Leaf element ids in navigation order.
    pub fn leaf_ids(&self) -> Vec<String> {
        self.leaves().iter().map(|e| e.id.clone()).collect()
    }
}

// The wire form of a tree node: one flat record for leaves and groups.
// A record with an `id` is a leaf; group records carry children instead.
#[derive(Serialize, Deserialize)]
struct NodeRecord {
    kind: String,
    #[serde(rename = "box")]
    bounds: BBox,
    alt_text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    clickable: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    id: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    confidence: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    text: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    icon_class: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    selected: Option<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    children: Vec<NodeRecord>,
}

impl From<&AccessibilityNode> for NodeRecord {
    fn from(node: &AccessibilityNode) -> Self {
        match node {
            AccessibilityNode::Leaf(e) => NodeRecord {
                kind: e.ui_type.name().to_string(),
                bounds: e.bounds,
                alt_text: node.alt_text(),
                clickable: e.clickable,
                id: Some(e.id.clone()),
                confidence: Some(e.confidence),
                text: e.text.clone(),
                icon_class: e.icon_class.clone(),
                selected: e.selected,
                children: Vec::new(),
            },
            AccessibilityNode::Group {
                kind,
                children,
                alt_text,
                clickable,
            } => NodeRecord {
                kind: kind.name().to_string(),
                bounds: node.bounds(),
                alt_text: alt_text.clone(),
                clickable: Some(*clickable),
                id: None,
                confidence: None,
                text: None,
                icon_class: None,
                selected: None,
                children: children.iter().map(NodeRecord::from).collect(),
            },
        }
    }
}

impl NodeRecord {
    fn into_node(self) -> Result<AccessibilityNode, String> {
        match self.id {
            Some(id) => {
                let ui_type = parse_ui_type(&self.kind)?;
                Ok(AccessibilityNode::Leaf(DetectedElement {
                    id,
                    bounds: self.bounds,
                    ui_type,
                    confidence: self.confidence.unwrap_or(1.0),
                    text: self.text,
                    icon_class: self.icon_class,
                    selected: self.selected,
                    clickable: self.clickable,
                    clickable_annotated: None,
                }))
            }
            None => {
                let kind = match self.kind.as_str() {
                    "TabButton" => GroupKind::TabButton,
                    "Container" => GroupKind::Container,
                    "TextBlock" => GroupKind::TextBlock,
                    "PictureWithSubtitle" => GroupKind::PictureWithSubtitle,
                    other => return Err(format!("unknown group kind {other:?}")),
                };
                if self.children.is_empty() {
                    return Err(format!("group node of kind {} has no children", self.kind));
                }
                let children = self
                    .children
                    .into_iter()
                    .map(NodeRecord::into_node)
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(AccessibilityNode::Group {
                    kind,
                    children,
                    alt_text: self.alt_text,
                    clickable: self.clickable.unwrap_or(false),
                })
            }
        }
    }
}

fn parse_ui_type(name: &str) -> Result<UIType, String> {
    serde_json::from_value(serde_json::Value::String(name.to_string()))
        .map_err(|_| format!("unknown UI type {name:?}"))
}

#[derive(Serialize, Deserialize)]
struct TreeRecord {
    screen_id: String,
    nodes: Vec<NodeRecord>,
}

impl Serialize for AccessibilityTree {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        TreeRecord {
            screen_id: self.screen_id.clone(),
            nodes: self.nodes.iter().map(NodeRecord::from).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for AccessibilityTree {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let record = TreeRecord::deserialize(deserializer)?;
        let nodes = record
            .nodes
            .into_iter()
            .map(NodeRecord::into_node)
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        Ok(AccessibilityTree {
            screen_id: record.screen_id,
            nodes,
        })
    }
}

/// Fatal screen validation failures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScreenError {
    #[error("screen {screen_id}: non-positive dimensions {width_px}x{height_px}")]
    NonPositiveDimensions {
        screen_id: String,
        width_px: u32,
        height_px: u32,
    },
    #[error("screen {screen_id}, element {id}: degenerate box")]
    DegenerateBox { screen_id: String, id: String },
    #[error("screen {screen_id}, element {id}: non-finite box coordinate")]
    NonFiniteBox { screen_id: String, id: String },
    #[error("screen {screen_id}, element {id}: confidence {confidence} outside [0,1]")]
    ConfidenceOutOfRange {
        screen_id: String,
        id: String,
        confidence: f64,
    },
}

/// Non-fatal validation findings; the screen is normalized and kept.
#[derive(Debug, Clone, PartialEq)]
pub enum ValidationWarning {
    EmptyScreen,
    BoxClamped { id: String },
    DuplicateId { original: String, renamed: String },
    NonDetectorType { id: String, ui_type: UIType },
    SelectedOnStatelessType { id: String, ui_type: UIType },
    IconClassOnNonIcon { id: String, ui_type: UIType },
}

impl fmt::Display for ValidationWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationWarning::EmptyScreen => write!(f, "screen has no elements"),
            ValidationWarning::BoxClamped { id } => {
                write!(f, "element {id}: box clamped into [0,1]")
            }
            ValidationWarning::DuplicateId { original, renamed } => {
                write!(f, "duplicate id {original} renamed to {renamed}")
            }
            ValidationWarning::NonDetectorType { id, ui_type } => {
                write!(f, "element {id}: {ui_type} is not a detector class")
            }
            ValidationWarning::SelectedOnStatelessType { id, ui_type } => {
                write!(f, "element {id}: selected flag dropped for stateless {ui_type}")
            }
            ValidationWarning::IconClassOnNonIcon { id, ui_type } => {
                write!(f, "element {id}: icon_class dropped for {ui_type}")
            }
        }
    }
}

/// Normalizes a screen or reports every violation found.
///
/// Boxes are clamped into the unit square, duplicate ids are renamed by
/// suffixing, and impossible fields are dropped; each repair emits a warning.
/// Degenerate boxes, non-finite coordinates, out-of-range confidences, and
/// zero screen dimensions are fatal.
pub fn validate_screen(screen: &Screen) -> Result<(Screen, Vec<ValidationWarning>), Vec<ScreenError>> {
    let mut errors = Vec::new();
    let mut warnings = Vec::new();

    if screen.width_px == 0 || screen.height_px == 0 {
        errors.push(ScreenError::NonPositiveDimensions {
            screen_id: screen.screen_id.clone(),
            width_px: screen.width_px,
            height_px: screen.height_px,
        });
    }
    if screen.elements.is_empty() {
        warnings.push(ValidationWarning::EmptyScreen);
    }

    let mut seen: BTreeSet<String> = BTreeSet::new();
    let mut normalized = screen.clone();
    for element in &mut normalized.elements {
        let b = element.bounds;
        if ![b.left, b.top, b.right, b.bottom].iter().all(|c| c.is_finite()) {
            errors.push(ScreenError::NonFiniteBox {
                screen_id: screen.screen_id.clone(),
                id: element.id.clone(),
            });
            continue;
        }
        if b.left >= b.right || b.top >= b.bottom {
            errors.push(ScreenError::DegenerateBox {
                screen_id: screen.screen_id.clone(),
                id: element.id.clone(),
            });
            continue;
        }
        if !b.in_unit_square() {
            match BBox::clamped(b.left, b.top, b.right, b.bottom) {
                Ok(clamped) => {
                    element.bounds = clamped;
                    warnings.push(ValidationWarning::BoxClamped {
                        id: element.id.clone(),
                    });
                }
                Err(_) => {
                    errors.push(ScreenError::DegenerateBox {
                        screen_id: screen.screen_id.clone(),
                        id: element.id.clone(),
                    });
                    continue;
                }
            }
        }
        if !(0.0..=1.0).contains(&element.confidence) {
            errors.push(ScreenError::ConfidenceOutOfRange {
                screen_id: screen.screen_id.clone(),
                id: element.id.clone(),
                confidence: element.confidence,
            });
        }
        if !element.ui_type.is_detector_class() {
            warnings.push(ValidationWarning::NonDetectorType {
                id: element.id.clone(),
                ui_type: element.ui_type,
            });
        }
        if element.selected.is_some() && !element.ui_type.has_selection_semantics() {
            warnings.push(ValidationWarning::SelectedOnStatelessType {
                id: element.id.clone(),
                ui_type: element.ui_type,
            });
            element.selected = None;
        }
        if element.icon_class.is_some() && element.ui_type != UIType::Icon {
            warnings.push(ValidationWarning::IconClassOnNonIcon {
                id: element.id.clone(),
                ui_type: element.ui_type,
            });
            element.icon_class = None;
        }
        if !seen.insert(element.id.clone()) {
            let original = element.id.clone();
            let mut n = 2;
            let mut candidate = format!("{original}__{n}");
            while seen.contains(&candidate) {
                n += 1;
                candidate = format!("{original}__{n}");
            }
            seen.insert(candidate.clone());
            warnings.push(ValidationWarning::DuplicateId {
                original,
                renamed: candidate.clone(),
            });
            element.id = candidate;
        }
    }

    if errors.is_empty() {
        Ok((normalized, warnings))
    } else {
        Err(errors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bx(l: f64, t: f64, r: f64, b: f64) -> BBox {
        BBox::new(l, t, r, b).unwrap()
    }

    fn screen_with(elements: Vec<DetectedElement>) -> Screen {
        Screen {
            screen_id: "s0".into(),
            width_px: 390,
            height_px: 844,
            elements,
            raster_path: None,
            raster: None,
        }
    }

    #[test]
    fn valid_screen_passes_unchanged() {
        let s = screen_with(vec![DetectedElement::new(
            "e0",
            bx(0.1, 0.1, 0.3, 0.2),
            UIType::Text,
            0.9,
        )]);
        let (normalized, warnings) = validate_screen(&s).unwrap();
        assert_eq!(normalized, s);
        assert!(warnings.is_empty());
    }

    #[test]
    fn degenerate_box_is_fatal() {
        let mut e = DetectedElement::new("e0", bx(0.1, 0.1, 0.3, 0.2), UIType::Text, 0.9);
        e.bounds = BBox {
            left: 0.5,
            top: 0.1,
            right: 0.2,
            bottom: 0.2,
        };
        let errs = validate_screen(&screen_with(vec![e])).unwrap_err();
        assert!(matches!(errs[0], ScreenError::DegenerateBox { .. }));
    }

    #[test]
    fn out_of_range_box_clamps_with_warning() {
        let mut e = DetectedElement::new("e0", bx(0.1, 0.1, 0.9, 0.2), UIType::Text, 0.9);
        e.bounds = BBox {
            left: 0.1,
            top: 0.1,
            right: 1.02,
            bottom: 0.2,
        };
        let (normalized, warnings) = validate_screen(&screen_with(vec![e])).unwrap();
        assert_eq!(normalized.elements[0].bounds.right, 1.0);
        assert!(matches!(warnings[0], ValidationWarning::BoxClamped { .. }));
    }

    #[test]
    fn duplicate_ids_get_suffixed() {
        let e = DetectedElement::new("e0", bx(0.1, 0.1, 0.3, 0.2), UIType::Text, 0.9);
        let (normalized, warnings) = validate_screen(&screen_with(vec![e.clone(), e])).unwrap();
        assert_eq!(normalized.elements[0].id, "e0");
        assert_eq!(normalized.elements[1].id, "e0__2");
        assert!(warnings
            .iter()
            .any(|w| matches!(w, ValidationWarning::DuplicateId { .. })));
    }

    #[test]
    fn empty_screen_is_a_warning_not_an_error() {
        let (_, warnings) = validate_screen(&screen_with(vec![])).unwrap();
        assert_eq!(warnings, vec![ValidationWarning::EmptyScreen]);
        let zero = Screen::new("s0", 0, 844);
        assert!(validate_screen(&zero).is_err());
    }

    #[test]
    fn screen_serde_round_trip() {
        let mut e = DetectedElement::new("e0", bx(0.1, 0.1, 0.3, 0.2), UIType::Icon, 0.75);
        e.icon_class = Some("gear".into());
        e.clickable = Some(true);
        let s = screen_with(vec![e]);
        let json = serde_json::to_string(&s).unwrap();
        let parsed: Screen = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed, s);
    }

    #[test]
    fn tree_serde_round_trip() {
        let leaf = DetectedElement::new("e0", bx(0.1, 0.1, 0.3, 0.2), UIType::Text, 1.0);
        let tree = AccessibilityTree {
            screen_id: "s0".into(),
            nodes: vec![
                AccessibilityNode::Group {
                    kind: GroupKind::TextBlock,
                    children: vec![AccessibilityNode::Leaf(leaf.clone())],
                    alt_text: "hello".into(),
                    clickable: false,
                },
                AccessibilityNode::Leaf(leaf),
            ],
        };
        let json = serde_json::to_string(&tree).unwrap();
        let parsed: AccessibilityTree = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed, tree);
    }

    #[test]
    fn group_bounds_are_child_union() {
        let a = DetectedElement::new("a", bx(0.1, 0.1, 0.2, 0.2), UIType::Text, 1.0);
        let b = DetectedElement::new("b", bx(0.3, 0.3, 0.5, 0.4), UIType::Text, 1.0);
        let g = AccessibilityNode::Group {
            kind: GroupKind::TextBlock,
            children: vec![AccessibilityNode::Leaf(a), AccessibilityNode::Leaf(b)],
            alt_text: String::new(),
            clickable: false,
        };
        assert_eq!(g.bounds(), bx(0.1, 0.1, 0.5, 0.4));
    }
}
