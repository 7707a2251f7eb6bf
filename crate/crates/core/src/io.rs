//! File formats: screens, trees, OCR input, and corpus manifests.
//!
//! Screens files are JSON arrays of screen objects; OCR files map screen ids
//! to arrays of `{box, text}` lines; trees files are JSON arrays of tree
//! objects. Rasters are referenced by relative PNG path.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{AccessibilityTree, Screen};
use crate::refinement::OcrLine;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("failed to read {path}: {message}")]
    Read { path: String, message: String },
    #[error("failed to write {path}: {message}")]
    Write { path: String, message: String },
    #[error("schema violation in {path} at line {line}, column {column}: {message}")]
    Schema {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
}

fn parse<T: for<'de> Deserialize<'de>>(path: &Path, text: &str) -> Result<T, IoError> {
    serde_json::from_str(text).map_err(|e| IoError::Schema {
        path: path.display().to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn read_text(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|e| IoError::Read {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), IoError> {
    let json = serde_json::to_string_pretty(value).expect("value serializes");
    std::fs::write(path, json).map_err(|e| IoError::Write {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn load_screens(path: &Path) -> Result<Vec<Screen>, IoError> {
    parse(path, &read_text(path)?)
}

pub fn save_screens(path: &Path, screens: &[Screen]) -> Result<(), IoError> {
    write_json(path, &screens)
}

pub fn load_trees(path: &Path) -> Result<Vec<AccessibilityTree>, IoError> {
    parse(path, &read_text(path)?)
}

pub fn save_trees(path: &Path, trees: &[AccessibilityTree]) -> Result<(), IoError> {
    write_json(path, &trees)
}

/// OCR lines per screen id.
pub type OcrFile = BTreeMap<String, Vec<OcrLine>>;

pub fn load_ocr(path: &Path) -> Result<OcrFile, IoError> {
    parse(path, &read_text(path)?)
}

pub fn save_ocr(path: &Path, ocr: &OcrFile) -> Result<(), IoError> {
    write_json(path, ocr)
}

/// Corpus manifest listing the truth/noisy screen pairing and shared files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusManifest {
    pub seed: u64,
    pub screens: usize,
    pub truth_screens: String,
    pub noisy_screens: String,
    pub truth_trees: String,
    pub clickability_labels: String,
    pub selection_truth: String,
    pub raster_dir: Option<String>,
    pub entries: Vec<ManifestEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub screen_id: String,
    pub raster: Option<String>,
}

pub fn load_manifest(path: &Path) -> Result<CorpusManifest, IoError> {
    parse(path, &read_text(path)?)
}
