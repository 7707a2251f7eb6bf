//! Detector-noise simulation over ground-truth screens.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::geometry::BBox;
use crate::model::{DetectedElement, Screen};
use crate::synthgen::NoiseSpec;

// Box-Muller standard normal.
fn gauss(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.gen_range(1e-12..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

fn jitter_box(bounds: &BBox, sigma: f64, rng: &mut ChaCha8Rng) -> BBox {
    let w = bounds.width();
    let h = bounds.height();
    let l = bounds.left + gauss(rng) * sigma * w;
    let t = bounds.top + gauss(rng) * sigma * h;
    let r = bounds.right + gauss(rng) * sigma * w;
    let b = bounds.bottom + gauss(rng) * sigma * h;
    // Keep a sliver of the original box when jitter collapses it.
    match BBox::clamped(l, t, r, b) {
        Ok(jittered) => jittered,
        Err(_) => *bounds,
    }
}

/// Simulates detector output for one truth screen: drops, box jitter,
/// duplicates, class confusion, and confidence noise. Inference-side fields
/// (selection, clickability) never carry over from the truth.
pub fn apply_noise(truth: &Screen, noise: &NoiseSpec, rng: &mut ChaCha8Rng) -> Screen {
    let mut out = Screen::new(truth.screen_id.clone(), truth.width_px, truth.height_px);
    out.raster_path = truth.raster_path.clone();
    for element in &truth.elements {
        if rng.gen_bool(noise.drop_for(element.ui_type)) {
            continue;
        }
        let mut detection = detection_of(element);
        for rule in &noise.confusion {
            if detection.ui_type == rule.from && rng.gen_bool(rule.prob) {
                detection.ui_type = rule.to;
                break;
            }
        }
        detection.bounds = jitter_box(&element.bounds, noise.box_jitter_sigma, rng);
        detection.confidence =
            (1.0 - gauss(rng).abs() * noise.confidence_sigma).clamp(0.05, 1.0);
        out.elements.push(detection);

        if noise.duplicate_prob > 0.0 && rng.gen_bool(noise.duplicate_prob) {
            let mut duplicate = detection_of(element);
            duplicate.id = format!("{}-dup", element.id);
            duplicate.bounds = jitter_box(
                &element.bounds,
                (noise.box_jitter_sigma).max(0.01),
                rng,
            );
            duplicate.confidence =
                (0.65 - gauss(rng).abs() * noise.confidence_sigma).clamp(0.05, 0.9);
            out.elements.push(duplicate);
        }
    }
    out
}

// A detector sees boxes, classes, and payloads from the recognition engines;
// it does not see truth selection or clickability.
fn detection_of(element: &DetectedElement) -> DetectedElement {
    let mut d = element.clone();
    d.selected = None;
    d.clickable = None;
    d.clickable_annotated = None;
    d
}
