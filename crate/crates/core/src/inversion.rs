//! Inversion in an ellipse.
//!
//! A point `P` maps to the point `P'` on the ray from the center `O` through
//! `P` with `|OP|·|OP'| = w²`, where `w` is the distance from `O` to the
//! ellipse along that ray. Unlike circle inversion, `w` depends on the
//! direction. The center and a single point at infinity are swapped.
//!
//! Three independent constructions are provided so that they can be checked
//! against each other:
//!
//! - [`Ellipse::invert_point`]: the Cartesian closed form
//!   `(a²b²u, a²b²v) / (b²u² + a²v²)` in the ellipse frame;
//! - [`Ellipse::invert_point_by_ray`]: the defining product along the ray;
//! - [`Ellipse::invert_point_by_polar`]: intersection of the polar line
//!   `b²u·x + a²v·y = a²b²` with the line through `O` and `P`;
//! - [`Ellipse::invert_point_by_squash`]: conjugation of circle inversion by
//!   the anisotropic scaling `(x, y) ↦ (x, (a/b)·y)`.

use crate::error::{Error, Result};
use crate::geometry::{rotate, Direction, Point, RigidMotion, Tolerance};

/// An ellipse used as the ellipse of inversion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ellipse {
    center: Point,
    a: f64,
    b: f64,
    phi: f64,
}

/// A point of the plane extended by a single point at infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedPoint {
    Finite(Point),
    Infinity,
}

impl ExtendedPoint {
    pub fn finite(self) -> Option<Point> {
        match self {
            ExtendedPoint::Finite(p) => Some(p),
            ExtendedPoint::Infinity => None,
        }
    }

    pub fn is_infinity(self) -> bool {
        matches!(self, ExtendedPoint::Infinity)
    }
}

impl From<Point> for ExtendedPoint {
    fn from(p: Point) -> Self {
        ExtendedPoint::Finite(p)
    }
}

/// The radius of inversion in one direction, with the boundary point it
/// came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectionalRadius {
    pub dir: Direction,
    pub w: f64,
    pub boundary_point: Point,
}

/// Line `m·x + n·y = c` with floating-point coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineEq {
    pub m: f64,
    pub n: f64,
    pub c: f64,
}

impl LineEq {
    pub fn eval(&self, p: Point) -> f64 {
        self.m * p.x + self.n * p.y - self.c
    }
}

impl Ellipse {
    pub fn new(center: Point, a: f64, b: f64, phi: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
            return Err(Error::InvalidEllipse(format!("semi-axes must be positive, got a={a}, b={b}")));
        }
        if !center.is_finite() || !phi.is_finite() {
            return Err(Error::InvalidEllipse("non-finite center or rotation".into()));
        }
        Ok(Ellipse { center, a, b, phi })
    }

    /// Axis-aligned ellipse centered at the origin.
    pub fn axis_aligned(a: f64, b: f64) -> Result<Self> {
        Ellipse::new(Point::ORIGIN, a, b, 0.0)
    }

    pub fn center(&self) -> Point {
        self.center
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Radius of the disk around the center inside which the auxiliary
    /// constructions refuse to run.
    pub fn guard_radius(&self, tol: &Tolerance) -> f64 {
        tol.center_guard * self.a.max(self.b)
    }

    pub fn to_local(&self, p: Point) -> Point {
        rotate(p - self.center, -self.phi)
    }

    pub fn to_world(&self, p: Point) -> Point {
        rotate(p, self.phi) + self.center
    }

    /// Motion taking world coordinates to the ellipse frame, and the
    /// axis-aligned origin-centered copy of the ellipse.
    pub fn conjugated(&self) -> (RigidMotion, Ellipse) {
        let motion = RigidMotion::new(-self.phi, -rotate(self.center, -self.phi));
        let local = Ellipse { center: Point::ORIGIN, a: self.a, b: self.b, phi: 0.0 };
        (motion, local)
    }

    /// `(u/a)² + (v/b)²` in the ellipse frame: `< 1` inside, `> 1` outside.
    pub fn level(&self, p: Point) -> f64 {
        let q = self.to_local(p);
        (q.x / self.a).powi(2) + (q.y / self.b).powi(2)
    }

    /// World point of the ellipse at eccentric angle `t`.
    pub fn point_at(&self, t: f64) -> Point {
        self.to_world(Point::new(self.a * t.cos(), self.b * t.sin()))
    }

    pub fn directional_radius(&self, dir: Direction) -> DirectionalRadius {
        let local = rotate(dir.as_point(), -self.phi);
        let w = 1.0 / ((local.x / self.a).powi(2) + (local.y / self.b).powi(2)).sqrt();
        DirectionalRadius { dir, w, boundary_point: self.center + dir.as_point() * w }
    }

    /// The inversion on the extended plane, by the Cartesian closed form.
    pub fn invert_point(&self, p: ExtendedPoint) -> ExtendedPoint {
        match p {
            ExtendedPoint::Infinity => ExtendedPoint::Finite(self.center),
            ExtendedPoint::Finite(p) if p == self.center => ExtendedPoint::Infinity,
            ExtendedPoint::Finite(p) => {
                let q = self.to_local(p);
                let (a2, b2) = (self.a * self.a, self.b * self.b);
                let rho = b2 * q.x * q.x + a2 * q.y * q.y;
                let s = a2 * b2 / rho;
                ExtendedPoint::Finite(self.to_world(q * s))
            }
        }
    }

    /// Finite-point convenience wrapper around [`Ellipse::invert_point`].
    pub fn invert(&self, p: Point) -> Option<Point> {
        self.invert_point(ExtendedPoint::Finite(p)).finite()
    }

    fn guard(&self, p: Point, tol: &Tolerance) -> Result<()> {
        if (p - self.center).norm() < self.guard_radius(tol) {
            Err(Error::CenterSingular)
        } else {
            Ok(())
        }
    }

    /// `O + (w² / |OP|²)·(P − O)` with `w` the radius toward `P`.
    pub fn invert_point_by_ray(&self, p: Point, tol: &Tolerance) -> Result<Point> {
        self.guard(p, tol)?;
        let op = p - self.center;
        let dir = Direction::new(op.x, op.y)?;
        let w = self.directional_radius(dir).w;
        Ok(self.center + op * (w * w / op.norm_sq()))
    }

    /// Polar line of `p` in the ellipse frame: `b²u·x + a²v·y = a²b²`.
    pub fn polar_line(&self, p: Point, tol: &Tolerance) -> Result<LineEq> {
        self.guard(p, tol)?;
        let q = self.to_local(p);
        let (a2, b2) = (self.a * self.a, self.b * self.b);
        Ok(LineEq { m: b2 * q.x, n: a2 * q.y, c: a2 * b2 })
    }

    /// Intersection of the polar line with the line through the center and
    /// `p`, solved as a 2×2 linear system.
    pub fn invert_point_by_polar(&self, p: Point, tol: &Tolerance) -> Result<Point> {
        let polar = self.polar_line(p, tol)?;
        let q = self.to_local(p);
        // line through O and q: v·x − u·y = 0
        let (m2, n2, c2) = (q.y, -q.x, 0.0);
        let det = polar.m * n2 - polar.n * m2;
        let x = (polar.c * n2 - polar.n * c2) / det;
        let y = (polar.m * c2 - polar.c * m2) / det;
        Ok(self.to_world(Point::new(x, y)))
    }

    /// Squash to the circle of radius `a`, invert there, unsquash.
    pub fn invert_point_by_squash(&self, p: Point, tol: &Tolerance) -> Result<Point> {
        self.guard(p, tol)?;
        let q = self.to_local(p);
        let k = self.a / self.b;
        let s = Point::new(q.x, q.y * k);
        let img = s * (self.a * self.a / s.norm_sq());
        Ok(self.to_world(Point::new(img.x, img.y / k)))
    }
}
