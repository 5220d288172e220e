//! Exact planar geometry for blockage regions.
//!
//! A transmitter–receiver path owns a rectangular blockage region: any
//! blockage whose center falls inside the rectangle cuts the path. This
//! module builds those rectangles, intersects them exactly (convex
//! clipping + shoelace), and tests point membership.

use crate::{Error, Result};

/// Collinearity tolerance for polygon validity, in squared-distance units.
const COLLINEAR_TOL: f64 = 1e-9;

/// A location in the plane, in the same distance units as the densities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point2D {
    pub x: f64,
    pub y: f64,
}

impl Point2D {
    pub const ORIGIN: Point2D = Point2D { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Point2D { x, y }
    }

    pub fn from_polar(r: f64, theta: f64) -> Self {
        Point2D {
            x: r * theta.cos(),
            y: r * theta.sin(),
        }
    }

    pub fn distance_to(&self, other: &Point2D) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    /// Distance to the origin.
    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }
}

/// A convex polygon with counter-clockwise vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Point2D>,
}

impl ConvexPolygon {
    /// Builds a polygon from CCW vertices, rejecting degenerate input.
    ///
    /// Convexity is checked up to a collinearity tolerance of 1e-9 in
    /// squared-distance units (the cross products live in area units).
    pub fn new(vertices: Vec<Point2D>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::InvalidPolygon(format!(
                "{} vertices, need at least 3",
                vertices.len()
            )));
        }
        for v in &vertices {
            if !v.x.is_finite() || !v.y.is_finite() {
                return Err(Error::InvalidPolygon("non-finite vertex".into()));
            }
        }
        let n = vertices.len();
        for i in 0..n {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            let c = vertices[(i + 2) % n];
            if a.distance_to(&b) == 0.0 {
                return Err(Error::InvalidPolygon("repeated vertex".into()));
            }
            let turn = cross(a, b, c);
            if turn < -COLLINEAR_TOL {
                return Err(Error::InvalidPolygon(format!(
                    "clockwise turn at vertex {i} (cross = {turn})"
                )));
            }
        }
        Ok(ConvexPolygon { vertices })
    }

    pub fn vertices(&self) -> &[Point2D] {
        &self.vertices
    }

    /// Shoelace area. Nonnegative for CCW vertex order.
    pub fn area(&self) -> f64 {
        shoelace(&self.vertices)
    }

    /// Membership test by half-plane checks; boundary points are inside.
    pub fn contains(&self, p: Point2D) -> bool {
        let n = self.vertices.len();
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            if cross(a, b, p) < 0.0 {
                return false;
            }
        }
        true
    }
}

/// 2-D cross product of (b - a) and (p - a).
#[inline]
fn cross(a: Point2D, b: Point2D, p: Point2D) -> f64 {
    (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x)
}

/// Signed shoelace area of a vertex loop (positive for CCW).
fn shoelace(vertices: &[Point2D]) -> f64 {
    let n = vertices.len();
    let mut twice_area = 0.0;
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        twice_area += a.x * b.y - a.y * b.x;
    }
    twice_area / 2.0
}

/// The rectangular blockage region of the path tx -> rx.
///
/// Length |rx - tx|, total width `width` centered laterally on the
/// segment, spanning exactly from tx to rx. Its area is |rx - tx| * width.
pub fn path_rectangle(tx: Point2D, rx: Point2D, width: f64) -> Result<ConvexPolygon> {
    let dx = rx.x - tx.x;
    let dy = rx.y - tx.y;
    let len_sq = dx * dx + dy * dy;
    if len_sq <= COLLINEAR_TOL {
        return Err(Error::ZeroLengthPath);
    }
    if !(width > 0.0) {
        return Err(Error::InvalidPolygon(format!("width {width} must be > 0")));
    }
    let len = len_sq.sqrt();
    // Unit direction and left normal; half-width offsets on both sides.
    let (ux, uy) = (dx / len, dy / len);
    let (nx, ny) = (-uy * width / 2.0, ux * width / 2.0);
    ConvexPolygon::new(vec![
        Point2D::new(tx.x - nx, tx.y - ny),
        Point2D::new(rx.x - nx, rx.y - ny),
        Point2D::new(rx.x + nx, rx.y + ny),
        Point2D::new(tx.x + nx, tx.y + ny),
    ])
}

/// Area of the intersection of two convex polygons.
///
/// Sutherland–Hodgman clipping of `a` against each edge of `b`, then
/// shoelace on the clipped loop. Returns 0 for empty intersections.
pub fn convex_intersection_area(a: &ConvexPolygon, b: &ConvexPolygon) -> f64 {
    let mut clipped: Vec<Point2D> = a.vertices().to_vec();
    let n = b.vertices().len();
    for i in 0..n {
        let e0 = b.vertices()[i];
        let e1 = b.vertices()[(i + 1) % n];
        clipped = clip_halfplane(&clipped, e0, e1);
        if clipped.len() < 3 {
            return 0.0;
        }
    }
    shoelace(&clipped).max(0.0)
}

/// Clip a polygon to the left half-plane of the directed edge e0 -> e1.
fn clip_halfplane(poly: &[Point2D], e0: Point2D, e1: Point2D) -> Vec<Point2D> {
    let n = poly.len();
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let s = poly[i];
        let e = poly[(i + 1) % n];
        let sc = cross(e0, e1, s);
        let ec = cross(e0, e1, e);
        let s_in = sc >= 0.0;
        let e_in = ec >= 0.0;
        match (s_in, e_in) {
            (true, true) => out.push(e),
            (true, false) => {
                if let Some(p) = edge_crossing(s, e, sc, ec) {
                    out.push(p);
                }
            }
            (false, true) => {
                if let Some(p) = edge_crossing(s, e, sc, ec) {
                    out.push(p);
                }
                out.push(e);
            }
            (false, false) => {}
        }
    }
    out
}

#[inline]
fn edge_crossing(s: Point2D, e: Point2D, sc: f64, ec: f64) -> Option<Point2D> {
    let denom = sc - ec;
    if denom.abs() < 1e-300 {
        return None;
    }
    let t = sc / denom;
    Some(Point2D::new(s.x + (e.x - s.x) * t, s.y + (e.y - s.y) * t))
}

/// Whether a blockage centered at `center` cuts the path tx -> rx.
///
/// True iff `center` lies inside `path_rectangle(tx, rx, width)`: its
/// projection onto the segment falls in [0, |rx - tx|] and its
/// perpendicular offset is at most width/2. Boundary points count as
/// blocked.
pub fn blocks(center: Point2D, tx: Point2D, rx: Point2D, width: f64) -> Result<bool> {
    let dx = rx.x - tx.x;
    let dy = rx.y - tx.y;
    let len_sq = dx * dx + dy * dy;
    if len_sq <= COLLINEAR_TOL {
        return Err(Error::ZeroLengthPath);
    }
    let len = len_sq.sqrt();
    let (ux, uy) = (dx / len, dy / len);
    let px = center.x - tx.x;
    let py = center.y - tx.y;
    let along = px * ux + py * uy;
    if along < 0.0 || along > len {
        return Ok(false);
    }
    let lateral = px * -uy + py * ux;
    Ok(lateral.abs() <= width / 2.0)
}
