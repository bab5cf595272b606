//! Planar vector and segment primitives.
//!
//! Everything here is a plain function over `f64` coordinates. Orientation
//! predicates use the exact sign of the floating point cross product with no
//! epsilon snapping.

use std::f64::consts::{PI, TAU};
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Tolerance on the norm of anything treated as a unit vector.
pub const UNIT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("degenerate geometry: {0}")]
    Degenerate(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec2 {
    pub dx: f64,
    pub dy: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn distance(self, other: Point2) -> f64 {
        (other - self).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Rotate about the origin by `angle` radians counter-clockwise.
    pub fn rotated(self, angle: f64) -> Point2 {
        let (s, c) = angle.sin_cos();
        Point2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { dx: 0.0, dy: 0.0 };

    pub const fn new(dx: f64, dy: f64) -> Self {
        Vec2 { dx, dy }
    }

    pub fn norm(self) -> f64 {
        self.dx.hypot(self.dy)
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.dx * other.dx + self.dy * other.dy
    }

    /// z-component of the 3-D cross product.
    pub fn cross(self, other: Vec2) -> f64 {
        self.dx * other.dy - self.dy * other.dx
    }

    pub fn is_zero(self) -> bool {
        self.dx == 0.0 && self.dy == 0.0
    }

    pub fn normalized(self) -> Result<Vec2, GeometryError> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(GeometryError::Degenerate("cannot normalize a zero vector"));
        }
        Ok(Vec2::new(self.dx / n, self.dy / n))
    }

    /// Direction angle in `[0, 2π)`.
    pub fn angle(self) -> f64 {
        let a = self.dy.atan2(self.dx);
        if a < 0.0 {
            a + TAU
        } else {
            a
        }
    }

    pub fn rotated(self, angle: f64) -> Vec2 {
        let (s, c) = angle.sin_cos();
        Vec2::new(c * self.dx - s * self.dy, s * self.dx + c * self.dy)
    }

    pub fn scaled(self, k: f64) -> Vec2 {
        Vec2::new(self.dx * k, self.dy * k)
    }
}

impl Sub for Point2 {
    type Output = Vec2;
    fn sub(self, rhs: Point2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Add<Vec2> for Point2 {
    type Output = Point2;
    fn add(self, rhs: Vec2) -> Point2 {
        Point2::new(self.x + rhs.dx, self.y + rhs.dy)
    }
}

impl Sub<Vec2> for Point2 {
    type Output = Point2;
    fn sub(self, rhs: Vec2) -> Point2 {
        Point2::new(self.x - rhs.dx, self.y - rhs.dy)
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.dx + rhs.dx, self.dy + rhs.dy)
    }
}

impl AddAssign for Vec2 {
    fn add_assign(&mut self, rhs: Vec2) {
        self.dx += rhs.dx;
        self.dy += rhs.dy;
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.dx - rhs.dx, self.dy - rhs.dy)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.dx, -self.dy)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, k: f64) -> Vec2 {
        self.scaled(k)
    }
}

/// Unit vector pointing from `a` to `b`.
pub fn unit_from_to(a: Point2, b: Point2) -> Result<Vec2, GeometryError> {
    if a == b {
        return Err(GeometryError::Degenerate("coincident points have no direction"));
    }
    (b - a).normalized()
}

/// Unit bisector of the (smaller) angle spanned by `a` and `c`.
///
/// Fails when the two directions are exactly opposite, since their unit sum
/// vanishes.
pub fn bisector(a: Vec2, c: Vec2) -> Result<Vec2, GeometryError> {
    let sum = a.normalized()? + c.normalized()?;
    sum.normalized()
        .map_err(|_| GeometryError::Degenerate("bisector of opposite directions"))
}

/// Quarter turn counter-clockwise, normalized. A clockwise quarter turn of the
/// result gives back the direction of `b`.
pub fn perp(b: Vec2) -> Result<Vec2, GeometryError> {
    let u = b.normalized()?;
    Ok(Vec2::new(-u.dy, u.dx))
}

/// Orientation of `c` relative to the directed line `a -> b`: positive when
/// `c` is on the left.
pub fn orient(a: Point2, b: Point2, c: Point2) -> f64 {
    (b - a).cross(c - a)
}

fn canonical_segment(s: (Point2, Point2)) -> (Point2, Point2) {
    if (s.1.x, s.1.y) < (s.0.x, s.0.y) {
        (s.1, s.0)
    } else {
        s
    }
}

/// Proper intersection point of two segments.
///
/// Returns `None` unless each segment strictly straddles the line through the
/// other, so shared endpoints, touching and collinear overlaps are all
/// excluded. The computation canonicalizes the segment order first, which
/// makes the result bit-identical under swapping the arguments.
pub fn segment_intersection(s1: (Point2, Point2), s2: (Point2, Point2)) -> Option<Point2> {
    let (mut s1, mut s2) = (canonical_segment(s1), canonical_segment(s2));
    let key = |s: &(Point2, Point2)| (s.0.x, s.0.y, s.1.x, s.1.y);
    if key(&s2) < key(&s1) {
        std::mem::swap(&mut s1, &mut s2);
    }
    let (p1, p2) = s1;
    let (p3, p4) = s2;

    let d1 = orient(p3, p4, p1);
    let d2 = orient(p3, p4, p2);
    let d3 = orient(p1, p2, p3);
    let d4 = orient(p1, p2, p4);
    let straddles = |a: f64, b: f64| (a > 0.0 && b < 0.0) || (a < 0.0 && b > 0.0);
    if !straddles(d1, d2) || !straddles(d3, d4) {
        return None;
    }

    // d1 and d2 have opposite signs, so the denominator is nonzero.
    let t = d1 / (d1 - d2);
    let r = p2 - p1;
    Some(p1 + r * t)
}

/// Counter-clockwise rotation in `[0, 2π)` that carries `from` onto `to`.
pub fn ccw_angle(from: Vec2, to: Vec2) -> Result<f64, GeometryError> {
    if from.is_zero() || to.is_zero() {
        return Err(GeometryError::Degenerate("angle against a zero vector"));
    }
    let a = from.cross(to).atan2(from.dot(to));
    let a = if a < 0.0 { a + TAU } else { a };
    // atan2 of (-0, negative) lands exactly on 2π after the shift.
    Ok(if a >= TAU { 0.0 } else { a })
}

/// Angle in `[0, π/2]` between the undirected lines spanned by `a` and `b`.
/// Parallel lines give 0.
pub fn acute_between_lines(a: Vec2, b: Vec2) -> f64 {
    if a.is_zero() || b.is_zero() {
        return 0.0;
    }
    let theta = a.cross(b).abs().atan2(a.dot(b));
    theta.min(PI - theta)
}
