//! Points, directions, rigid motions and the tolerance framework shared by
//! the numeric modules.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// A finite point of the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    /// Checked constructor rejecting NaN and infinite coordinates.
    pub fn try_new(x: f64, y: f64) -> Result<Self> {
        if x.is_finite() && y.is_finite() {
            Ok(Point { x, y })
        } else {
            Err(Error::InvalidValue(format!("non-finite point ({x}, {y})")))
        }
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 2D cross product.
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// A unit direction vector. Normalized on construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction {
    dx: f64,
    dy: f64,
}

impl Direction {
    pub fn new(dx: f64, dy: f64) -> Result<Self> {
        let len = dx.hypot(dy);
        if !len.is_finite() || len <= 0.0 {
            return Err(Error::InvalidValue(format!("zero or non-finite direction ({dx}, {dy})")));
        }
        Ok(Direction { dx: dx / len, dy: dy / len })
    }

    /// Direction from `from` towards `to`.
    pub fn between(from: Point, to: Point) -> Result<Self> {
        let d = to - from;
        Direction::new(d.x, d.y)
    }

    pub fn dx(self) -> f64 {
        self.dx
    }

    pub fn dy(self) -> f64 {
        self.dy
    }

    pub fn as_point(self) -> Point {
        Point::new(self.dx, self.dy)
    }

    pub fn reversed(self) -> Direction {
        Direction { dx: -self.dx, dy: -self.dy }
    }
}

/// Rotation by `angle` about the origin followed by a translation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RigidMotion {
    pub angle: f64,
    pub translation: Point,
}

impl RigidMotion {
    pub const IDENTITY: RigidMotion = RigidMotion { angle: 0.0, translation: Point::ORIGIN };

    pub fn new(angle: f64, translation: Point) -> Self {
        RigidMotion { angle, translation }
    }

    pub fn apply(&self, p: Point) -> Point {
        rotate(p, self.angle) + self.translation
    }

    pub fn inverse(&self) -> RigidMotion {
        RigidMotion {
            angle: -self.angle,
            translation: -rotate(self.translation, -self.angle),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.angle == 0.0 && self.translation == Point::ORIGIN
    }
}

pub(crate) fn rotate(p: Point, angle: f64) -> Point {
    if angle == 0.0 {
        return p;
    }
    let (s, c) = angle.sin_cos();
    Point::new(c * p.x - s * p.y, s * p.x + c * p.y)
}

/// Tolerances used by the floating-point predicates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    /// Relative tolerance.
    pub rel: f64,
    /// Absolute floor for lengths.
    pub abs_floor: f64,
    /// Multiplied by `max(a, b)` to obtain the radius of the center guard.
    pub center_guard: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { rel: 1e-10, abs_floor: 1e-14, center_guard: 1e-12 }
    }
}

impl Tolerance {
    pub fn new(rel: f64, abs_floor: f64, center_guard: f64) -> Result<Self> {
        let ok = |v: f64| v > 0.0 && v.is_finite();
        if ok(rel) && ok(abs_floor) && ok(center_guard) {
            Ok(Tolerance { rel, abs_floor, center_guard })
        } else {
            Err(Error::InvalidValue("tolerances must be strictly positive".into()))
        }
    }

    pub fn with_rel(self, rel: f64) -> Result<Self> {
        Tolerance::new(rel, self.abs_floor, self.center_guard)
    }
}

pub fn distance(p: Point, q: Point) -> f64 {
    (p - q).norm()
}

/// Scale-invariant collinearity test: `|(b-a)×(c-a)| <= rel * scale²`,
/// with `scale` the largest pairwise distance.
pub fn are_collinear(a: Point, b: Point, c: Point, tol: &Tolerance) -> bool {
    let scale = distance(a, b).max(distance(a, c)).max(distance(b, c));
    if scale == 0.0 {
        return true;
    }
    (b - a).cross(c - a).abs() <= tol.rel * scale * scale
}

pub fn apply_motion(m: &RigidMotion, p: Point) -> Point {
    m.apply(p)
}

/// Signed parameter `t` with `p = origin + t·dir`.
pub fn signed_distance_along(origin: Point, dir: Direction, p: Point, tol: &Tolerance) -> Result<f64> {
    let d = p - origin;
    let t = d.dot(dir.as_point());
    let off = d.cross(dir.as_point()).abs();
    let allowed = tol.rel * d.norm().max(1.0) + tol.abs_floor;
    if off > allowed {
        return Err(Error::OffLine { distance: off });
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn close(a: f64, b: f64, eps: f64) -> bool {
        (a - b).abs() <= eps
    }

    #[test]
    fn distance_examples() {
        assert_eq!(distance(Point::new(0.0, 0.0), Point::new(3.0, 4.0)), 5.0);
        assert_eq!(distance(Point::new(1.0, 1.0), Point::new(1.0, 1.0)), 0.0);
        assert!(close(distance(Point::new(2.0, 2.0), Point::new(-1.0, 3.0)), 10f64.sqrt(), 1e-15));
    }

    #[test]
    fn collinearity_examples() {
        let tol = Tolerance::default();
        let o = Point::ORIGIN;
        assert!(are_collinear(o, Point::new(1.0, 1.0), Point::new(2.0, 2.0), &tol));
        assert!(!are_collinear(o, Point::new(1.0, 0.0), Point::new(0.0, 1.0), &tol));
        // cross product is ~1e-15 against a threshold of 1e-10 * 8
        let c = Point::new(2.0, 2.0 + 1e-15);
        let cross = Point::new(1.0, 1.0).cross(c);
        assert!(cross.abs() < 1e-14);
        assert!(are_collinear(o, Point::new(1.0, 1.0), c, &tol));
    }

    #[test]
    fn motion_examples() {
        let p = Point::new(1.0, 2.0);
        assert_eq!(apply_motion(&RigidMotion::IDENTITY, p), p);
        let q = apply_motion(&RigidMotion::new(FRAC_PI_2, Point::ORIGIN), Point::new(1.0, 0.0));
        assert!(close(q.x, 0.0, 1e-15) && close(q.y, 1.0, 1e-15));
        let r = apply_motion(&RigidMotion::new(FRAC_PI_2, Point::new(1.0, 1.0)), Point::new(1.0, 0.0));
        assert!(close(r.x, 1.0, 1e-15) && close(r.y, 2.0, 1e-15));
    }

    #[test]
    fn signed_distance_examples() {
        let tol = Tolerance::default();
        let ex = Direction::new(1.0, 0.0).unwrap();
        let ey = Direction::new(0.0, 1.0).unwrap();
        assert_eq!(signed_distance_along(Point::ORIGIN, ex, Point::new(3.0, 0.0), &tol), Ok(3.0));
        assert_eq!(signed_distance_along(Point::ORIGIN, ex, Point::new(-2.0, 0.0), &tol), Ok(-2.0));
        assert_eq!(signed_distance_along(Point::new(1.0, 1.0), ey, Point::new(1.0, 4.0), &tol), Ok(3.0));
        assert!(matches!(
            signed_distance_along(Point::ORIGIN, ex, Point::new(1.0, 0.5), &tol),
            Err(Error::OffLine { .. })
        ));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(Direction::new(0.0, 0.0).is_err());
        assert!(Point::try_new(f64::NAN, 0.0).is_err());
        assert!(Tolerance::new(0.0, 1.0, 1.0).is_err());
        let d = Direction::new(3.0, 4.0).unwrap();
        assert!(close(d.dx() * d.dx() + d.dy() * d.dy(), 1.0, 1e-14));
    }
}
