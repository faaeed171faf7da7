//! Planar compact bodies: membership, bounding boxes, and axis-aligned slices.
//!
//! A body is a compact region of the plane equal to the closure of its
//! interior. Membership is closed (boundary points count as inside), and
//! slices are returned as finite unions of closed intervals.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of the plane.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

/// Axis-aligned bounding box with positive width and height.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundingBox {
    pub xmin: f64,
    pub ymin: f64,
    pub xmax: f64,
    pub ymax: f64,
}

impl BoundingBox {
    pub fn width(&self) -> f64 {
        self.xmax - self.xmin
    }

    pub fn height(&self) -> f64 {
        self.ymax - self.ymin
    }

    pub fn center(&self) -> Point2 {
        Point2::new(0.5 * (self.xmin + self.xmax), 0.5 * (self.ymin + self.ymax))
    }

    pub fn contains(&self, p: Point2) -> bool {
        self.xmin <= p.x && p.x <= self.xmax && self.ymin <= p.y && p.y <= self.ymax
    }

    /// The box expanded by `margin` on every side.
    pub fn inflate(&self, margin: f64) -> Self {
        Self {
            xmin: self.xmin - margin,
            ymin: self.ymin - margin,
            xmax: self.xmax + margin,
            ymax: self.ymax + margin,
        }
    }
}

/// Supported body shapes.
///
/// `GridMask` cells are closed axis-aligned squares; `mask[row][col]` with
/// row 0 at the bottom (`origin.y`) and column 0 at the left (`origin.x`).
#[derive(Clone, Debug)]
pub enum Shape {
    Rectangle {
        xmin: f64,
        ymin: f64,
        xmax: f64,
        ymax: f64,
    },
    Disk {
        center: Point2,
        radius: f64,
    },
    /// Simple polygon, counterclockwise, no self-intersections.
    SimplePolygon {
        vertices: Vec<Point2>,
    },
    GridMask {
        origin: Point2,
        cell_size: f64,
        mask: Vec<Vec<bool>>,
    },
}

/// A compact body `K` with a caller-declared connectedness flag.
///
/// Connectedness is declared, not computed: the flag only gates uniqueness
/// claims downstream and has no effect on any geometric query.
#[derive(Clone, Debug)]
pub struct CompactBody {
    shape: Shape,
    declared_connected: bool,
}

impl CompactBody {
    pub fn rectangle(xmin: f64, ymin: f64, xmax: f64, ymax: f64) -> Result<Self> {
        if ![xmin, ymin, xmax, ymax].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidBody("rectangle bounds must be finite".into()));
        }
        if !(xmin < xmax && ymin < ymax) {
            return Err(Error::InvalidBody(format!(
                "rectangle needs xmin < xmax and ymin < ymax, got [{xmin}, {xmax}] x [{ymin}, {ymax}]"
            )));
        }
        Ok(Self {
            shape: Shape::Rectangle {
                xmin,
                ymin,
                xmax,
                ymax,
            },
            declared_connected: true,
        })
    }

    pub fn disk(center: Point2, radius: f64) -> Result<Self> {
        if !center.is_finite() || !radius.is_finite() {
            return Err(Error::InvalidBody("disk parameters must be finite".into()));
        }
        if radius <= 0.0 {
            return Err(Error::InvalidBody(format!(
                "disk radius must be positive, got {radius}"
            )));
        }
        Ok(Self {
            shape: Shape::Disk { center, radius },
            declared_connected: true,
        })
    }

    /// A simple polygon given in counterclockwise order.
    pub fn simple_polygon(vertices: Vec<Point2>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidBody(format!(
                "polygon needs at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        if vertices.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidBody("polygon vertices must be finite".into()));
        }
        let area2 = signed_area2(&vertices);
        if area2 <= 0.0 {
            return Err(Error::InvalidBody(format!(
                "polygon must be counterclockwise with positive area (signed area {})",
                0.5 * area2
            )));
        }
        if has_self_intersection(&vertices) {
            return Err(Error::InvalidBody("polygon edges must not cross".into()));
        }
        Ok(Self {
            shape: Shape::SimplePolygon { vertices },
            declared_connected: true,
        })
    }

    /// Union of closed unit cells selected by `mask` (row 0 at the bottom).
    ///
    /// Connectedness of a mask is the caller's assertion.
    pub fn grid_mask(
        origin: Point2,
        cell_size: f64,
        mask: Vec<Vec<bool>>,
        declared_connected: bool,
    ) -> Result<Self> {
        if !origin.is_finite() || !cell_size.is_finite() || cell_size <= 0.0 {
            return Err(Error::InvalidBody(
                "grid mask needs a finite origin and positive cell size".into(),
            ));
        }
        let cols = mask.first().map_or(0, Vec::len);
        if cols == 0 || mask.iter().any(|row| row.len() != cols) {
            return Err(Error::InvalidBody(
                "grid mask rows must be non-empty and of equal length".into(),
            ));
        }
        if !mask.iter().flatten().any(|&c| c) {
            return Err(Error::InvalidBody(
                "grid mask must contain at least one true cell".into(),
            ));
        }
        Ok(Self {
            shape: Shape::GridMask {
                origin,
                cell_size,
                mask,
            },
            declared_connected,
        })
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn declared_connected(&self) -> bool {
        self.declared_connected
    }

    /// Closed membership test: boundary points count as inside.
    pub fn contains(&self, p: Point2) -> bool {
        match &self.shape {
            Shape::Rectangle {
                xmin,
                ymin,
                xmax,
                ymax,
            } => *xmin <= p.x && p.x <= *xmax && *ymin <= p.y && p.y <= *ymax,
            Shape::Disk { center, radius } => {
                let dx = p.x - center.x;
                let dy = p.y - center.y;
                dx * dx + dy * dy <= radius * radius
            }
            Shape::SimplePolygon { vertices } => polygon_contains(vertices, p),
            Shape::GridMask {
                origin,
                cell_size,
                mask,
            } => {
                let rows = mask.len() as isize;
                let cols = mask[0].len() as isize;
                for i in cell_candidates((p.x - origin.x) / cell_size, cols) {
                    for j in cell_candidates((p.y - origin.y) / cell_size, rows) {
                        if mask[j as usize][i as usize] {
                            return true;
                        }
                    }
                }
                false
            }
        }
    }

    /// Tight axis-aligned bounding box of the body.
    pub fn bounding_box(&self) -> BoundingBox {
        match &self.shape {
            Shape::Rectangle {
                xmin,
                ymin,
                xmax,
                ymax,
            } => BoundingBox {
                xmin: *xmin,
                ymin: *ymin,
                xmax: *xmax,
                ymax: *ymax,
            },
            Shape::Disk { center, radius } => BoundingBox {
                xmin: center.x - radius,
                ymin: center.y - radius,
                xmax: center.x + radius,
                ymax: center.y + radius,
            },
            Shape::SimplePolygon { vertices } => {
                let mut bb = BoundingBox {
                    xmin: f64::INFINITY,
                    ymin: f64::INFINITY,
                    xmax: f64::NEG_INFINITY,
                    ymax: f64::NEG_INFINITY,
                };
                for v in vertices {
                    bb.xmin = bb.xmin.min(v.x);
                    bb.ymin = bb.ymin.min(v.y);
                    bb.xmax = bb.xmax.max(v.x);
                    bb.ymax = bb.ymax.max(v.y);
                }
                bb
            }
            Shape::GridMask {
                origin,
                cell_size,
                mask,
            } => {
                // Tight over the true cells, not the whole mask array.
                let (mut i0, mut i1, mut j0, mut j1) = (usize::MAX, 0, usize::MAX, 0);
                for (j, row) in mask.iter().enumerate() {
                    for (i, &on) in row.iter().enumerate() {
                        if on {
                            i0 = i0.min(i);
                            i1 = i1.max(i);
                            j0 = j0.min(j);
                            j1 = j1.max(j);
                        }
                    }
                }
                BoundingBox {
                    xmin: origin.x + i0 as f64 * cell_size,
                    ymin: origin.y + j0 as f64 * cell_size,
                    xmax: origin.x + (i1 + 1) as f64 * cell_size,
                    ymax: origin.y + (j1 + 1) as f64 * cell_size,
                }
            }
        }
    }

    /// Exact area of the body.
    pub fn area(&self) -> f64 {
        match &self.shape {
            Shape::Rectangle {
                xmin,
                ymin,
                xmax,
                ymax,
            } => (xmax - xmin) * (ymax - ymin),
            Shape::Disk { radius, .. } => std::f64::consts::PI * radius * radius,
            Shape::SimplePolygon { vertices } => 0.5 * signed_area2(vertices),
            Shape::GridMask {
                cell_size, mask, ..
            } => {
                let count = mask.iter().flatten().filter(|&&c| c).count();
                count as f64 * cell_size * cell_size
            }
        }
    }

    /// The vertical section `{ y : (x, y) in K }` as disjoint closed intervals.
    pub fn vertical_slice(&self, x: f64) -> Vec<(f64, f64)> {
        self.slice(Axis2::X, x)
    }

    /// The horizontal section `{ x : (x, y) in K }` as disjoint closed intervals.
    pub fn horizontal_slice(&self, y: f64) -> Vec<(f64, f64)> {
        self.slice(Axis2::Y, y)
    }

    fn slice(&self, axis: Axis2, t: f64) -> Vec<(f64, f64)> {
        match &self.shape {
            Shape::Rectangle {
                xmin,
                ymin,
                xmax,
                ymax,
            } => {
                let ((lo, hi), (olo, ohi)) = match axis {
                    Axis2::X => ((*xmin, *xmax), (*ymin, *ymax)),
                    Axis2::Y => ((*ymin, *ymax), (*xmin, *xmax)),
                };
                if lo <= t && t <= hi {
                    vec![(olo, ohi)]
                } else {
                    vec![]
                }
            }
            Shape::Disk { center, radius } => {
                let (c_axis, c_other) = match axis {
                    Axis2::X => (center.x, center.y),
                    Axis2::Y => (center.y, center.x),
                };
                let d = t - c_axis;
                if d.abs() > *radius {
                    return vec![];
                }
                let h = (radius * radius - d * d).max(0.0).sqrt();
                vec![(c_other - h, c_other + h)]
            }
            Shape::SimplePolygon { vertices } => polygon_slice(vertices, axis, t),
            Shape::GridMask {
                origin,
                cell_size,
                mask,
            } => {
                let rows = mask.len() as isize;
                let cols = mask[0].len() as isize;
                let mut intervals = Vec::new();
                match axis {
                    Axis2::X => {
                        for i in cell_candidates((t - origin.x) / cell_size, cols) {
                            for j in 0..rows {
                                if mask[j as usize][i as usize] {
                                    let lo = origin.y + j as f64 * cell_size;
                                    intervals.push((lo, lo + cell_size));
                                }
                            }
                        }
                    }
                    Axis2::Y => {
                        for j in cell_candidates((t - origin.y) / cell_size, rows) {
                            for i in 0..cols {
                                if mask[j as usize][i as usize] {
                                    let lo = origin.x + i as f64 * cell_size;
                                    intervals.push((lo, lo + cell_size));
                                }
                            }
                        }
                    }
                }
                merge_intervals(intervals)
            }
        }
    }
}

/// Internal axis tag for the shared slice implementation.
#[derive(Clone, Copy)]
enum Axis2 {
    X,
    Y,
}

/// Indices of the closed cells that contain scaled coordinate `t`,
/// restricted to `0..len`. A point on the shared face of two cells belongs
/// to both.
fn cell_candidates(t: f64, len: isize) -> Vec<isize> {
    let f = t.floor();
    let i = f as isize;
    let mut out = Vec::with_capacity(2);
    if t == f && i >= 1 && i - 1 < len {
        out.push(i - 1);
    }
    if i >= 0 && i < len {
        out.push(i);
    }
    out
}

/// Twice the signed area (positive for counterclockwise order).
fn signed_area2(vertices: &[Point2]) -> f64 {
    let n = vertices.len();
    let mut s = 0.0;
    for k in 0..n {
        let a = vertices[k];
        let b = vertices[(k + 1) % n];
        s += a.x * b.y - b.x * a.y;
    }
    s
}

fn cross(o: Point2, a: Point2, b: Point2) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

fn on_segment(p: Point2, a: Point2, b: Point2) -> bool {
    cross(a, b, p) == 0.0
        && p.x >= a.x.min(b.x)
        && p.x <= a.x.max(b.x)
        && p.y >= a.y.min(b.y)
        && p.y <= a.y.max(b.y)
}

/// Proper or improper crossing test for two closed segments.
fn segments_intersect(a: Point2, b: Point2, c: Point2, d: Point2) -> bool {
    let d1 = cross(c, d, a);
    let d2 = cross(c, d, b);
    let d3 = cross(a, b, c);
    let d4 = cross(a, b, d);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    (d1 == 0.0 && on_segment(a, c, d))
        || (d2 == 0.0 && on_segment(b, c, d))
        || (d3 == 0.0 && on_segment(c, a, b))
        || (d4 == 0.0 && on_segment(d, a, b))
}

fn has_self_intersection(vertices: &[Point2]) -> bool {
    let n = vertices.len();
    for i in 0..n {
        let (a, b) = (vertices[i], vertices[(i + 1) % n]);
        for j in (i + 1)..n {
            // Skip edges sharing a vertex with edge i.
            if j == i || (j + 1) % n == i || j == (i + 1) % n {
                continue;
            }
            let (c, d) = (vertices[j], vertices[(j + 1) % n]);
            if segments_intersect(a, b, c, d) {
                return true;
            }
        }
    }
    false
}

fn polygon_contains(vertices: &[Point2], p: Point2) -> bool {
    let n = vertices.len();
    for i in 0..n {
        if on_segment(p, vertices[i], vertices[(i + 1) % n]) {
            return true;
        }
    }
    // Even-odd ray cast to the right; boundary hits were handled above.
    let mut inside = false;
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        if (a.y > p.y) != (b.y > p.y) {
            let xi = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if p.x < xi {
                inside = !inside;
            }
        }
    }
    inside
}

fn polygon_slice(vertices: &[Point2], axis: Axis2, t: f64) -> Vec<(f64, f64)> {
    let coord = |p: Point2| match axis {
        Axis2::X => p.x,
        Axis2::Y => p.y,
    };
    let other = |p: Point2| match axis {
        Axis2::X => p.y,
        Axis2::Y => p.x,
    };
    let n = vertices.len();
    let mut crossings = Vec::new();
    let mut intervals = Vec::new();
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        let (ca, cb) = (coord(a), coord(b));
        if ca == t && cb == t {
            // Edge lies on the slicing line; keep its full extent.
            let (oa, ob) = (other(a), other(b));
            intervals.push((oa.min(ob), oa.max(ob)));
        } else if ca.min(cb) <= t && t < ca.max(cb) {
            // Half-open rule: counts each interior crossing exactly once and
            // keeps the parity intact when the line passes through a vertex.
            let s = (t - ca) / (cb - ca);
            crossings.push(other(a) + s * (other(b) - other(a)));
        }
    }
    crossings.sort_by(|p, q| p.partial_cmp(q).unwrap());
    for pair in crossings.chunks_exact(2) {
        intervals.push((pair[0], pair[1]));
    }
    merge_intervals(intervals)
}

/// Sort and merge overlapping or touching closed intervals.
fn merge_intervals(mut intervals: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    intervals.retain(|(lo, hi)| hi >= lo);
    intervals.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(intervals.len());
    for (lo, hi) in intervals {
        match out.last_mut() {
            Some(last) if lo <= last.1 => last.1 = last.1.max(hi),
            _ => out.push((lo, hi)),
        }
    }
    out
}
