//! screentree turns raw per-screen UI-element detections (boxes, classes,
//! confidences, optionally the screenshot raster) into accessibility
//! metadata: deduplicated elements, selection state, clickability,
//! navigation groups, and reading order. It ships the full evaluation
//! machinery for such pipelines and a deterministic synthetic screen
//! generator that serves as the test oracle.
//!
//! The narrative guide lives in `book/`; its chapters compile and run as
//! doc-tests through the [`guide`] module.

pub mod config;
pub mod evaluation;
pub mod geometry;
pub mod io;
pub mod model;
pub mod pipeline;
pub mod refinement;
pub mod semantics;
pub mod structure;
pub mod synthgen;

mod guide;

pub use config::HeuristicConfig;
pub use geometry::BBox;
pub use model::{
    AccessibilityNode, AccessibilityTree, DetectedElement, GroupKind, Raster, Screen, UIType,
};
