//! Axis-aligned box arithmetic in normalized screen coordinates.
//!
//! Boxes live in `[0,1]²` with the origin at the top-left of the screen, so
//! `top < bottom` means "higher on the screen comes first". All predicates in
//! this module are pure value functions.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Error raised when a box cannot be constructed.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("degenerate box: left={left} right={right} top={top} bottom={bottom}")]
    Degenerate {
        left: f64,
        top: f64,
        right: f64,
        bottom: f64,
    },
    #[error("non-finite coordinate in box")]
    NonFinite,
}

/// An axis-aligned rectangle in normalized screen coordinates.
///
/// Invariants enforced at construction: all coordinates finite,
/// `left < right` and `top < bottom`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BBox {
    #[serde(rename = "l")]
    pub left: f64,
    #[serde(rename = "t")]
    pub top: f64,
    #[serde(rename = "r")]
    pub right: f64,
    #[serde(rename = "b")]
    pub bottom: f64,
}

impl BBox {
    /// Builds a box, rejecting non-finite or degenerate coordinates.
    pub fn new(left: f64, top: f64, right: f64, bottom: f64) -> Result<Self, GeometryError> {
        if ![left, top, right, bottom].iter().all(|c| c.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        if left >= right || top >= bottom {
            return Err(GeometryError::Degenerate {
                left,
                top,
                right,
                bottom,
            });
        }
        Ok(Self {
            left,
            top,
            right,
            bottom,
        })
    }

    /// Builds a box after clamping each coordinate into `[0,1]`.
    ///
    /// Used at ingestion where slightly out-of-range inputs are tolerated;
    /// boxes that collapse after clamping are still rejected.
    pub fn clamped(left: f64, top: f64, right: f64, bottom: f64) -> Result<Self, GeometryError> {
        if ![left, top, right, bottom].iter().all(|c| c.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        Self::new(
            left.clamp(0.0, 1.0),
            top.clamp(0.0, 1.0),
            right.clamp(0.0, 1.0),
            bottom.clamp(0.0, 1.0),
        )
    }

    /// Converts pixel coordinates into a normalized box.
    pub fn from_pixels(
        left: f64,
        top: f64,
        right: f64,
        bottom: f64,
        width_px: u32,
        height_px: u32,
    ) -> Result<Self, GeometryError> {
        let w = f64::from(width_px);
        let h = f64::from(height_px);
        Self::clamped(left / w, top / h, right / w, bottom / h)
    }

    /// True when every coordinate already lies in `[0,1]`.
    pub fn in_unit_square(&self) -> bool {
        self.left >= 0.0 && self.top >= 0.0 && self.right <= 1.0 && self.bottom <= 1.0
    }

    pub fn width(&self) -> f64 {
        self.right - self.left
    }

    pub fn height(&self) -> f64 {
        self.bottom - self.top
    }

    pub fn area(&self) -> f64 {
        self.width() * self.height()
    }

    /// Midpoint of the box.
    pub fn center(&self) -> (f64, f64) {
        (
            (self.left + self.right) / 2.0,
            (self.top + self.bottom) / 2.0,
        )
    }

    /// Intersection area with another box; 0 when disjoint.
    pub fn intersection_area(&self, other: &BBox) -> f64 {
        let w = overlap_1d(self.left, self.right, other.left, other.right);
        let h = overlap_1d(self.top, self.bottom, other.top, other.bottom);
        w * h
    }

    /// Smallest box covering both operands.
    pub fn union_with(&self, other: &BBox) -> BBox {
        BBox {
            left: self.left.min(other.left),
            top: self.top.min(other.top),
            right: self.right.max(other.right),
            bottom: self.bottom.max(other.bottom),
        }
    }

    /// True iff `point` lies inside the box, edges included.
    pub fn contains_point(&self, x: f64, y: f64) -> bool {
        x >= self.left && x <= self.right && y >= self.top && y <= self.bottom
    }
}

/// Smallest box covering every box in the iterator; `None` on empty input.
pub fn bounding_union<'a>(boxes: impl IntoIterator<Item = &'a BBox>) -> Option<BBox> {
    boxes
        .into_iter()
        .fold(None, |acc: Option<BBox>, b| match acc {
            Some(u) => Some(u.union_with(b)),
            None => Some(*b),
        })
}

fn overlap_1d(a_lo: f64, a_hi: f64, b_lo: f64, b_hi: f64) -> f64 {
    (a_hi.min(b_hi) - a_lo.max(b_lo)).max(0.0)
}

/// Intersection over union. Symmetric, 0 when disjoint, 1 for identical boxes.
pub fn iou(a: &BBox, b: &BBox) -> f64 {
    let inter = a.intersection_area(b);
    let union = a.area() + b.area() - inter;
    if union <= 0.0 {
        return 0.0;
    }
    (inter / union).clamp(0.0, 1.0)
}

/// Fraction of `inner`'s area covered by `outer`. Not symmetric.
pub fn containment_fraction(inner: &BBox, outer: &BBox) -> f64 {
    let area = inner.area();
    if area <= 0.0 {
        return 0.0;
    }
    (inner.intersection_area(outer) / area).clamp(0.0, 1.0)
}

/// Length of the intersection of the horizontal projections; 0 when disjoint.
pub fn x_overlap(a: &BBox, b: &BBox) -> f64 {
    overlap_1d(a.left, a.right, b.left, b.right)
}

/// Length of the intersection of the vertical projections; 0 when disjoint.
pub fn y_overlap(a: &BBox, b: &BBox) -> f64 {
    overlap_1d(a.top, a.bottom, b.top, b.bottom)
}

/// Fraction of `a`'s width covered by `b`'s horizontal projection.
pub fn x_overlap_fraction(a: &BBox, b: &BBox) -> f64 {
    let w = a.width();
    if w <= 0.0 {
        return 0.0;
    }
    (x_overlap(a, b) / w).clamp(0.0, 1.0)
}

/// True iff the center of `det` lies within `target`, edges included.
pub fn center_in(det: &BBox, target: &BBox) -> bool {
    let (cx, cy) = det.center();
    target.contains_point(cx, cy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bx(l: f64, t: f64, r: f64, b: f64) -> BBox {
        BBox::new(l, t, r, b).unwrap()
    }

    #[test]
    fn rejects_degenerate_and_non_finite() {
        assert!(matches!(
            BBox::new(0.5, 0.0, 0.5, 1.0),
            Err(GeometryError::Degenerate { .. })
        ));
        assert!(matches!(
            BBox::new(0.6, 0.0, 0.4, 1.0),
            Err(GeometryError::Degenerate { .. })
        ));
        assert!(matches!(
            BBox::new(f64::NAN, 0.0, 1.0, 1.0),
            Err(GeometryError::NonFinite)
        ));
    }

    #[test]
    fn clamped_pulls_coordinates_into_unit_square() {
        let b = BBox::clamped(-0.1, 0.0, 1.02, 0.5).unwrap();
        assert_eq!(b.left, 0.0);
        assert_eq!(b.right, 1.0);
        assert!(BBox::clamped(1.01, 0.0, 1.02, 0.5).is_err());
    }

    #[test]
    fn iou_identity_and_disjoint() {
        let a = bx(0.1, 0.1, 0.4, 0.4);
        assert_eq!(iou(&a, &a), 1.0);
        let far = bx(0.6, 0.6, 0.9, 0.9);
        assert_eq!(iou(&a, &far), 0.0);
    }

    #[test]
    fn iou_partial_overlap_is_one_third() {
        // (0,0,2,2) and (1,0,3,2) scaled into the unit square by 1/3:
        // intersection 2, union 6 in the original frame.
        let a = bx(0.0, 0.0, 2.0 / 3.0, 2.0 / 3.0);
        let b = bx(1.0 / 3.0, 0.0, 1.0, 2.0 / 3.0);
        assert!((iou(&a, &b) - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn containment_fraction_cases() {
        let outer = bx(0.0, 0.0, 1.0, 1.0);
        let inner = bx(0.2, 0.2, 0.4, 0.4);
        assert_eq!(containment_fraction(&inner, &outer), 1.0);
        let disjoint = bx(0.5, 0.5, 0.6, 0.6);
        assert_eq!(containment_fraction(&disjoint, &bx(0.0, 0.0, 0.4, 0.4)), 0.0);
        // Half of `half` sticks out of `cover` on the right.
        let half = bx(0.0, 0.0, 0.4, 0.4);
        let cover = bx(0.0, 0.0, 0.2, 0.4);
        assert!((containment_fraction(&half, &cover) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn overlap_lengths() {
        let a = bx(0.0, 0.0, 0.5, 0.2);
        assert!((x_overlap(&a, &a) - 0.5).abs() < 1e-12);
        let b = bx(0.3, 0.0, 0.8, 0.2);
        assert!((x_overlap(&a, &b) - 0.2).abs() < 1e-12);
        let disjoint = bx(0.6, 0.0, 0.9, 0.2);
        assert_eq!(x_overlap(&a, &disjoint), 0.0);
        let below = bx(0.0, 0.5, 0.5, 0.9);
        assert_eq!(y_overlap(&a, &below), 0.0);
    }

    #[test]
    fn x_overlap_fraction_cases() {
        let a = bx(0.2, 0.0, 0.6, 0.1);
        let wide = bx(0.0, 0.5, 1.0, 0.9);
        assert_eq!(x_overlap_fraction(&a, &wide), 1.0);
        let disjoint = bx(0.7, 0.0, 0.9, 0.1);
        assert_eq!(x_overlap_fraction(&a, &disjoint), 0.0);
        let b = bx(0.4, 0.0, 1.0, 0.1);
        assert!((x_overlap_fraction(&a, &b) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn center_in_is_edge_inclusive() {
        let t = bx(0.2, 0.2, 0.6, 0.6);
        assert!(center_in(&t, &t));
        assert!(!center_in(&bx(0.7, 0.7, 0.9, 0.9), &t));
        // Detection centered exactly on the target's corner.
        let det = bx(0.5, 0.5, 0.7, 0.7);
        assert!(center_in(&det, &t));
    }

    prop_compose! {
        fn arb_box()(l in 0.0f64..0.98, t in 0.0f64..0.98,
                     w in 0.01f64..0.5, h in 0.01f64..0.5) -> BBox {
            BBox::new(l, t, (l + w).min(1.0), (t + h).min(1.0)).unwrap()
        }
    }

    proptest! {
        #[test]
        fn iou_symmetric_and_bounded(a in arb_box(), b in arb_box()) {
            let ab = iou(&a, &b);
            let ba = iou(&b, &a);
            prop_assert!((ab - ba).abs() < 1e-12);
            prop_assert!((0.0..=1.0).contains(&ab));
            prop_assert!(ab <= containment_fraction(&a, &b) + 1e-12);
            prop_assert!(ab <= containment_fraction(&b, &a) + 1e-12);
        }

        #[test]
        fn containment_one_iff_full_cover(a in arb_box(), b in arb_box()) {
            let c = containment_fraction(&a, &b);
            prop_assert!((0.0..=1.0).contains(&c));
            let fully = a.intersection_area(&b) >= a.area() - 1e-12;
            prop_assert_eq!(c >= 1.0 - 1e-9, fully);
        }

        #[test]
        fn overlaps_bounded(a in arb_box(), b in arb_box()) {
            prop_assert!(x_overlap(&a, &b) <= a.width().min(b.width()) + 1e-12);
            prop_assert!(y_overlap(&a, &b) <= a.height().min(b.height()) + 1e-12);
            prop_assert!((0.0..=1.0).contains(&x_overlap_fraction(&a, &b)));
        }
    }
}
