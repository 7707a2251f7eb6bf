//! Pixel-based selection state: tint extraction and outlier detection for
//! tab bars and segmented-control rows.

use thiserror::Error;

use crate::config::HeuristicConfig;
use crate::geometry::BBox;
use crate::model::{DetectedElement, Raster};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TintError {
    #[error("screen has no raster")]
    MissingRaster,
    #[error("box rounds to an empty pixel crop")]
    EmptyCrop,
}

/// Quantized RGB color, stored as the bucket floor of each channel.
pub type QuantColor = [u8; 3];

/// Dominant colors of one crop: the most frequent color is the background,
/// the second most frequent is the tint.
#[derive(Debug, Clone, PartialEq)]
pub struct TintProfile {
    pub background: QuantColor,
    pub tint: QuantColor,
    /// Pixel-count fraction of the tint color; 0 for monochrome crops.
    pub tint_weight: f64,
}

fn quantize(channel: u8, bits: u8) -> u8 {
    let shift = 8 - bits;
    (channel >> shift) << shift
}

/// Ranks the crop's quantized colors by frequency.
///
/// Monochrome crops report the single color as both background and tint with
/// weight zero.
pub fn extract_tint(
    raster: &Raster,
    bounds: &BBox,
    config: &HeuristicConfig,
) -> Result<TintProfile, TintError> {
    let bits = config.tint_quantization_bits;
    let x0 = (bounds.left * f64::from(raster.width)).floor().max(0.0) as u32;
    let x1 = ((bounds.right * f64::from(raster.width)).ceil() as u32).min(raster.width);
    let y0 = (bounds.top * f64::from(raster.height)).floor().max(0.0) as u32;
    let y1 = ((bounds.bottom * f64::from(raster.height)).ceil() as u32).min(raster.height);
    if x1 <= x0 || y1 <= y0 {
        return Err(TintError::EmptyCrop);
    }

    let mut counts: std::collections::BTreeMap<QuantColor, u64> = std::collections::BTreeMap::new();
    for y in y0..y1 {
        for x in x0..x1 {
            let [r, g, b, _] = raster.get(x, y);
            let key = [quantize(r, bits), quantize(g, bits), quantize(b, bits)];
            *counts.entry(key).or_insert(0) += 1;
        }
    }
    let total: u64 = counts.values().sum();
    let mut ranked: Vec<(QuantColor, u64)> = counts.into_iter().collect();
    // BTreeMap iteration already fixes color order; sort by count only.
    ranked.sort_by(|a, b| b.1.cmp(&a.1));

    let background = ranked[0].0;
    match ranked.get(1) {
        Some(&(tint, count)) => Ok(TintProfile {
            background,
            tint,
            tint_weight: count as f64 / total as f64,
        }),
        None => Ok(TintProfile {
            background,
            tint: background,
            tint_weight: 0.0,
        }),
    }
}

fn color_distance(a: &QuantColor, b: &QuantColor) -> f64 {
    let dr = f64::from(a[0]) - f64::from(b[0]);
    let dg = f64::from(a[1]) - f64::from(b[1]);
    let db = f64::from(a[2]) - f64::from(b[2]);
    (dr * dr + dg * dg + db * db).sqrt()
}

/// Index of the color whose summed distance to the others exceeds every
/// other color's by more than one quantization step; `None` when no color
/// stands out that far.
pub fn unique_color_outlier(colors: &[QuantColor], step: f64) -> Option<usize> {
    if colors.len() < 2 {
        return None;
    }
    let sums: Vec<f64> = colors
        .iter()
        .map(|a| colors.iter().map(|b| color_distance(a, b)).sum())
        .collect();
    let best = sums
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)?;
    let dominates = sums
        .iter()
        .enumerate()
        .all(|(i, &s)| i == best || sums[best] > s + step);
    dominates.then_some(best)
}

fn selection_flags(n: usize, selected: Option<usize>) -> Vec<Option<bool>> {
    match selected {
        Some(index) => (0..n).map(|i| Some(i == index)).collect(),
        None => vec![None; n],
    }
}

/// Marks the tab whose tint color is the row's unique outlier as selected.
///
/// Without a raster, with fewer than two tabs, or without a clear outlier,
/// every flag stays unset.
pub fn select_tab_state(
    tab_boxes: &[BBox],
    raster: Option<&Raster>,
    config: &HeuristicConfig,
) -> Vec<Option<bool>> {
    let n = tab_boxes.len();
    let Some(raster) = raster else {
        return vec![None; n];
    };
    if n < 2 {
        return vec![None; n];
    }
    let mut tints = Vec::with_capacity(n);
    for bounds in tab_boxes {
        match extract_tint(raster, bounds, config) {
            Ok(profile) => tints.push(profile.tint),
            Err(_) => return vec![None; n],
        }
    }
    let outlier = unique_color_outlier(&tints, f64::from(config.quantization_step()));
    selection_flags(n, outlier)
}

/// Selection state for one row of segmented controls.
///
/// Rules cascade: (1) tint outlier over the full segments, (2) outlier among
/// the dominant colors of each segment's bottom strip, (3) the only segment
/// carrying text. The first rule with a unique candidate wins; without a
/// raster only rule (3) runs.
pub fn select_segmented_state(
    segments: &[DetectedElement],
    raster: Option<&Raster>,
    config: &HeuristicConfig,
) -> Vec<Option<bool>> {
    let n = segments.len();
    if n < 2 {
        return vec![None; n];
    }
    let step = f64::from(config.quantization_step());

    if let Some(raster) = raster {
        let tints: Option<Vec<QuantColor>> = segments
            .iter()
            .map(|s| extract_tint(raster, &s.bounds, config).ok().map(|p| p.tint))
            .collect();
        if let Some(tints) = tints {
            if let Some(outlier) = unique_color_outlier(&tints, step) {
                return selection_flags(n, Some(outlier));
            }
        }

        let strip_colors: Option<Vec<QuantColor>> = segments
            .iter()
            .map(|s| {
                let b = s.bounds;
                let strip_top = b.bottom - b.height() * config.sc_bottom_strip_fraction;
                let strip = BBox::new(b.left, strip_top, b.right, b.bottom).ok()?;
                extract_tint(raster, &strip, config).ok().map(|p| p.background)
            })
            .collect();
        if let Some(colors) = strip_colors {
            if let Some(outlier) = unique_color_outlier(&colors, step) {
                return selection_flags(n, Some(outlier));
            }
        }
    }

    let with_text: Vec<usize> = segments
        .iter()
        .enumerate()
        .filter(|(_, s)| s.text.as_deref().is_some_and(|t| !t.is_empty()))
        .map(|(i, _)| i)
        .collect();
    if with_text.len() == 1 {
        return selection_flags(n, Some(with_text[0]));
    }
    vec![None; n]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::UIType;

    fn config() -> HeuristicConfig {
        HeuristicConfig::default()
    }

    fn bx(l: f64, t: f64, r: f64, b: f64) -> BBox {
        BBox::new(l, t, r, b).unwrap()
    }

    #[test]
    fn monochrome_crop_reports_zero_tint_weight() {
        let raster = Raster::filled(40, 40, [0, 0, 248, 255]);
        let profile = extract_tint(&raster, &bx(0.1, 0.1, 0.9, 0.9), &config()).unwrap();
        assert_eq!(profile.background, [0, 0, 248]);
        assert_eq!(profile.tint, profile.background);
        assert_eq!(profile.tint_weight, 0.0);
    }

    #[test]
    fn frequency_order_separates_background_and_tint() {
        // 90% white, 10% red.
        let mut raster = Raster::filled(40, 40, [248, 248, 248, 255]);
        raster.fill_rect(0, 0, 40, 4, [248, 0, 0, 255]);
        let profile = extract_tint(&raster, &bx(0.0, 0.0, 1.0, 1.0), &config()).unwrap();
        assert_eq!(profile.background, [248, 248, 248]);
        assert_eq!(profile.tint, [248, 0, 0]);
        assert!((profile.tint_weight - 0.1).abs() < 0.02);
    }

    #[test]
    fn tint_survives_sub_step_perturbation() {
        let mut a = Raster::filled(20, 20, [96, 96, 96, 255]);
        a.fill_rect(5, 5, 15, 15, [160, 32, 32, 255]);
        let mut b = Raster::filled(20, 20, [99, 97, 98, 255]);
        b.fill_rect(5, 5, 15, 15, [163, 35, 33, 255]);
        let pa = extract_tint(&a, &bx(0.0, 0.0, 1.0, 1.0), &config()).unwrap();
        let pb = extract_tint(&b, &bx(0.0, 0.0, 1.0, 1.0), &config()).unwrap();
        assert_eq!(pa.background, pb.background);
        assert_eq!(pa.tint, pb.tint);
    }

    #[test]
    fn gray_on_black_fixture_recovers_tint() {
        let mut raster = Raster::filled(30, 30, [0, 0, 0, 255]);
        raster.fill_rect(10, 10, 20, 20, [128, 128, 128, 255]);
        let profile = extract_tint(&raster, &bx(0.0, 0.0, 1.0, 1.0), &config()).unwrap();
        assert_eq!(profile.tint, [128, 128, 128]);
    }

    fn tab_bar_raster(n: u32, selected: usize, accent: [u8; 4]) -> (Raster, Vec<BBox>) {
        let (w, h) = (40 * n, 40);
        let mut raster = Raster::filled(w, h, [248, 248, 248, 255]);
        let mut boxes = Vec::new();
        for i in 0..n {
            let color = if i as usize == selected {
                accent
            } else {
                [96, 96, 96, 255]
            };
            // Icon glyph inside each tab cell.
            raster.fill_rect(40 * i + 12, 12, 40 * i + 28, 28, color);
            boxes.push(bx(
                f64::from(40 * i) / f64::from(w),
                0.0,
                f64::from(40 * (i + 1)) / f64::from(w),
                1.0,
            ));
        }
        (raster, boxes)
    }

    #[test]
    fn tinted_tab_among_gray_tabs_is_selected() {
        let (raster, boxes) = tab_bar_raster(4, 2, [248, 112, 0, 255]);
        let flags = select_tab_state(&boxes, Some(&raster), &config());
        assert_eq!(
            flags,
            vec![Some(false), Some(false), Some(true), Some(false)]
        );
    }

    #[test]
    fn identical_tabs_and_pairs_stay_unset() {
        let (raster, boxes) = tab_bar_raster(4, 0, [96, 96, 96, 255]);
        assert_eq!(select_tab_state(&boxes, Some(&raster), &config()), vec![None; 4]);

        let (raster2, boxes2) = tab_bar_raster(2, 0, [248, 112, 0, 255]);
        assert_eq!(
            select_tab_state(&boxes2, Some(&raster2), &config()),
            vec![None; 2]
        );
    }

    #[test]
    fn missing_raster_degrades_softly() {
        let (_, boxes) = tab_bar_raster(4, 1, [248, 112, 0, 255]);
        assert_eq!(select_tab_state(&boxes, None, &config()), vec![None; 4]);
    }

    fn segment_row(n: u32) -> (Raster, Vec<DetectedElement>) {
        let (w, h) = (50 * n, 30);
        let mut raster = Raster::filled(w, h, [248, 248, 248, 255]);
        let mut segments = Vec::new();
        for i in 0..n {
            // Gray label glyph in every segment.
            raster.fill_rect(50 * i + 15, 6, 50 * i + 35, 20, [96, 96, 96, 255]);
            segments.push(DetectedElement::new(
                format!("s{i}"),
                bx(
                    f64::from(50 * i) / f64::from(w),
                    0.0,
                    f64::from(50 * (i + 1)) / f64::from(w),
                    1.0,
                ),
                UIType::SegmentedControl,
                0.9,
            ));
        }
        (raster, segments)
    }

    #[test]
    fn bottom_bar_marks_the_selected_segment() {
        let (mut raster, segments) = segment_row(3);
        // Underline bar under the middle segment.
        raster.fill_rect(50, 26, 100, 30, [248, 112, 0, 255]);
        let flags = select_segmented_state(&segments, Some(&raster), &config());
        assert_eq!(flags, vec![Some(false), Some(true), Some(false)]);
    }

    #[test]
    fn identical_segments_stay_unset() {
        let (raster, segments) = segment_row(3);
        assert_eq!(
            select_segmented_state(&segments, Some(&raster), &config()),
            vec![None; 3]
        );
    }

    #[test]
    fn unique_text_rule_fires_without_raster() {
        let (_, mut segments) = segment_row(3);
        segments[1].text = Some("Alarm".into());
        let flags = select_segmented_state(&segments, None, &config());
        assert_eq!(flags, vec![Some(false), Some(true), Some(false)]);
    }
}
