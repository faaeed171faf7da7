//! Deterministic global minimizer of the conic function.
//!
//! A point minimizes `F` exactly when the vertical and horizontal lines
//! through it split the body into halves of equal mass, so the minimizer is
//! found by monotone bisection on each axis independently. The set of
//! bisecting coordinates on an axis is a closed interval (possibly a point);
//! its width decides uniqueness and its midpoint is the returned
//! representative.

use serde::{Deserialize, Serialize};

use crate::conic::ConicFunction;
use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::measure::{Axis, BodyMeasure, HalfPlaneQuery};

/// Fraction of the total mass allowed as residual at a bisecting coordinate.
pub const MASS_TOLERANCE_FACTOR: f64 = 1e-8;

/// Flat intervals narrower than this fraction of the bounding-box extent
/// count as unique: below that, flatness is indistinguishable from noise.
pub const UNIQUENESS_TOLERANCE_FACTOR: f64 = 1e-6;

/// Number of samples per axis when comparing X-ray functions.
pub const XRAY_COMPARISON_GRID: usize = 2048;

/// A closed interval on one axis.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, t: f64) -> bool {
        self.lo <= t && t <= self.hi
    }

    /// Distance from `t` to the interval (zero inside).
    pub fn distance(&self, t: f64) -> f64 {
        (self.lo - t).max(t - self.hi).max(0.0)
    }
}

/// Result of the mass-bisection oracle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BisectionResult {
    /// Representative bisection point: the midpoint of each flat interval.
    pub minimizer: Point2,
    /// All x with equal mass on both sides of the vertical line, within tolerance.
    pub x_interval: Interval,
    /// All y with equal mass on both sides of the horizontal line, within tolerance.
    pub y_interval: Interval,
    /// Both flat intervals are below the uniqueness tolerance.
    pub unique: bool,
}

impl BisectionResult {
    /// Euclidean distance from `p` to the minimizer set (the product of the
    /// two flat intervals). Zero on the set itself.
    pub fn distance_to_set(&self, p: Point2) -> f64 {
        let dx = self.x_interval.distance(p.x);
        let dy = self.y_interval.distance(p.y);
        (dx * dx + dy * dy).sqrt()
    }

    /// Euclidean distance from `p` to the representative minimizer.
    pub fn distance_to_minimizer(&self, p: Point2) -> f64 {
        let dx = p.x - self.minimizer.x;
        let dy = p.y - self.minimizer.y;
        (dx * dx + dy * dy).sqrt()
    }
}

/// Find a coordinate whose half-plane masses balance on the given axis,
/// together with the flat interval of all such coordinates.
///
/// The mass function is continuous and monotone in the threshold, so plain
/// bisection brackets the half-mass level; two further bisections locate the
/// left and right edges of the level set.
pub fn bisect_mass(measure: &BodyMeasure, axis: Axis) -> (f64, Interval) {
    let total = measure.total_mass();
    let target = 0.5 * total;
    let tol = MASS_TOLERANCE_FACTOR * total;
    let bb = measure.body().bounding_box();
    let (lo, hi) = match axis {
        Axis::X => (bb.xmin, bb.xmax),
        Axis::Y => (bb.ymin, bb.ymax),
    };
    let below = |t: f64| measure.half_plane_mass(HalfPlaneQuery::below(axis, t));

    // Leftmost coordinate with below(c) >= target - tol.
    let left = bisect_first_true(lo, hi, |c| below(c) >= target - tol);
    // Rightmost coordinate with below(c) <= target + tol.
    let right = bisect_last_true(lo, hi, |c| below(c) <= target + tol).max(left);
    let flat = Interval {
        lo: left,
        hi: right,
    };
    (flat.midpoint(), flat)
}

/// Minimize `F` by bisecting the mass on both axes independently (the
/// gradient components decouple by axis).
pub fn find_minimizer(f: &ConicFunction) -> BisectionResult {
    let (x, x_interval) = bisect_mass(f.measure(), Axis::X);
    let (y, y_interval) = bisect_mass(f.measure(), Axis::Y);
    let bb = f.body().bounding_box();
    let unique = x_interval.width() <= UNIQUENESS_TOLERANCE_FACTOR * bb.width()
        && y_interval.width() <= UNIQUENESS_TOLERANCE_FACTOR * bb.height();
    BisectionResult {
        minimizer: Point2::new(x, y),
        x_interval,
        y_interval,
        unique,
    }
}

/// Largest pointwise X-ray discrepancy between two product measures, per
/// axis, sampled on a shared grid over the union of the bounding boxes.
pub fn xray_max_discrepancy(
    f: &ConicFunction,
    g: &ConicFunction,
    grid: usize,
) -> Result<(f64, f64)> {
    if !f.measure().is_product() || !g.measure().is_product() {
        return Err(Error::UnsupportedMeasureKind);
    }
    let fb = f.body().bounding_box();
    let gb = g.body().bounding_box();
    let mut out = [0.0; 2];
    for (slot, axis) in [(0, Axis::X), (1, Axis::Y)] {
        let (lo, hi) = match axis {
            Axis::X => (fb.xmin.min(gb.xmin), fb.xmax.max(gb.xmax)),
            Axis::Y => (fb.ymin.min(gb.ymin), fb.ymax.max(gb.ymax)),
        };
        let step = (hi - lo) / grid as f64;
        let mut max_gap: f64 = 0.0;
        for k in 0..grid {
            let t = lo + (k as f64 + 0.5) * step;
            let gap = (f.measure().xray(axis, t)? - g.measure().xray(axis, t)?).abs();
            max_gap = max_gap.max(gap);
        }
        out[slot] = max_gap;
    }
    Ok((out[0], out[1]))
}

/// Whether two product measures have the same X-ray functions within
/// `tolerance` on the shared comparison grid. When true, the conic functions
/// agree as well.
pub fn xray_equivalent(f: &ConicFunction, g: &ConicFunction, tolerance: f64) -> Result<bool> {
    let (gap_y, gap_x) = xray_max_discrepancy(f, g, XRAY_COMPARISON_GRID)?;
    Ok(gap_y <= tolerance && gap_x <= tolerance)
}

/// Smallest `c` in `[lo, hi]` with `pred(c)` true, for a monotone predicate
/// that is false at `lo` and true at `hi`.
fn bisect_first_true(lo: f64, hi: f64, pred: impl Fn(f64) -> bool) -> f64 {
    if pred(lo) {
        return lo;
    }
    let (mut lo, mut hi) = (lo, hi);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Largest `c` in `[lo, hi]` with `pred(c)` true, for a monotone predicate
/// that is true at `lo` and false at `hi`.
fn bisect_last_true(lo: f64, hi: f64, pred: impl Fn(f64) -> bool) -> f64 {
    if pred(hi) {
        return hi;
    }
    let (mut lo, mut hi) = (lo, hi);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if pred(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}
