//! The elliptic Pappus chain.
//!
//! Layout: `A = (0, 0)`, `B = (ab, 0)`, `C = (r·ab, 0)`. The outer
//! semiellipse `E` spans `AB`, the inner one `E′` spans `AC` and the seed
//! `E₀` spans `CB`; all of them and every chain element share the ratio
//! `k = ry / rx`. Element `Eₙ` touches `E` from inside, `E′` from outside
//! and `Eₙ₋₁` from outside.
//!
//! The squash `(x, y) ↦ (x, y/k)` turns all of these ellipses into circles
//! and conjugates the elliptic inversion into circle inversion, so the chain
//! is built as the classical circular chain (invert at `A`, stack equal
//! circles between two parallel lines, invert back) and then unsquashed.

use std::fmt::Write as _;

use crate::algebra::{rational_from_f64, ImplicitCurve, Rational};
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::inversion::Ellipse;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainSpec {
    /// Length of the diameter `AB`.
    pub ab: f64,
    /// `AC / AB`.
    pub r: f64,
    /// Shared semi-form ratio `ry / rx`.
    pub k: f64,
    /// Number of chain elements.
    pub count: usize,
}

impl ChainSpec {
    pub fn new(ab: f64, r: f64, k: f64, count: usize) -> Result<Self> {
        let spec = ChainSpec { ab, r, k, count };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.ab > 0.0 && self.ab.is_finite()) {
            return Err(Error::InvalidSpec(format!("ab must be positive, got {}", self.ab)));
        }
        if !(self.r > 0.0 && self.r < 1.0) {
            return Err(Error::InvalidSpec(format!("r must lie in (0, 1), got {}", self.r)));
        }
        if !(self.k > 0.0 && self.k.is_finite()) {
            return Err(Error::InvalidSpec(format!("k must be positive, got {}", self.k)));
        }
        if self.count == 0 {
            return Err(Error::InvalidSpec("count must be at least 1".into()));
        }
        Ok(())
    }
}

/// Axis-aligned ellipse with semi-axes `rx` (along `AB`) and `ry`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainEllipse {
    pub center: Point,
    pub rx: f64,
    pub ry: f64,
}

impl ChainEllipse {
    /// `ry²(x − cx)² + rx²(y − cy)² − rx²ry² = 0` with exact coefficients
    /// taken from the given (already rational) parameters.
    pub fn implicit(cx: &Rational, cy: &Rational, rx: &Rational, ry: &Rational) -> Result<ImplicitCurve> {
        let (rx2, ry2) = (rx * rx, ry * ry);
        let zero = Rational::from_integer(0.into());
        let two = Rational::from_integer(2.into());
        ImplicitCurve::conic(
            ry2.clone(),
            zero,
            rx2.clone(),
            -(&two * &ry2 * cx),
            -(&two * &rx2 * cy),
            &ry2 * cx * cx + &rx2 * cy * cy - &rx2 * &ry2,
        )
    }
}

/// The three base semiellipses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainBase {
    /// `E`, over `AB`.
    pub outer: ChainEllipse,
    /// `E′`, over `AC`.
    pub inner: ChainEllipse,
    /// `E₀`, over `CB`.
    pub seed: ChainEllipse,
}

pub fn base_ellipses(spec: &ChainSpec) -> ChainBase {
    let half = |x0: f64, x1: f64| {
        let rx = 0.5 * (x1 - x0);
        ChainEllipse { center: Point::new(0.5 * (x0 + x1), 0.0), rx, ry: spec.k * rx }
    };
    let c = spec.r * spec.ab;
    ChainBase { outer: half(0.0, spec.ab), inner: half(0.0, c), seed: half(c, spec.ab) }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainElement {
    pub index: usize,
    pub center: Point,
    pub rx: f64,
    pub ry: f64,
    /// Distance of the center from `AB`.
    pub h: f64,
}

impl ChainElement {
    /// The semi-axis perpendicular to `AB`.
    pub fn r_n(&self) -> f64 {
        self.ry
    }

    pub fn as_ellipse(&self) -> ChainEllipse {
        ChainEllipse { center: self.center, rx: self.rx, ry: self.ry }
    }
}

/// Circle in the squashed plane.
#[derive(Debug, Clone, Copy)]
struct Circle {
    center: Point,
    radius: f64,
}

fn squash(e: &ChainEllipse, k: f64) -> Circle {
    Circle { center: Point::new(e.center.x, e.center.y / k), radius: e.rx }
}

/// Circles of the classical chain for the squashed configuration.
fn circular_chain(spec: &ChainSpec) -> Vec<Circle> {
    // Inversion at A with power ab²: E -> x = ab, E' -> x = ab / r.
    let power = spec.ab * spec.ab;
    let near = power / spec.ab;
    let far = power / (spec.r * spec.ab);
    let mid = 0.5 * (near + far);
    let half = 0.5 * (far - near);
    (1..=spec.count)
        .map(|n| {
            let c = Point::new(mid, 2.0 * n as f64 * half);
            let den = c.norm_sq() - half * half;
            Circle { center: c * (power / den), radius: half * power / den }
        })
        .collect()
}

pub fn build_chain(spec: &ChainSpec) -> Result<Vec<ChainElement>> {
    spec.validate()?;
    Ok(circular_chain(spec)
        .into_iter()
        .enumerate()
        .map(|(i, c)| {
            let cy = spec.k * c.center.y;
            ChainElement {
                index: i + 1,
                center: Point::new(c.center.x, cy),
                rx: c.radius,
                ry: spec.k * c.radius,
                h: cy.abs(),
            }
        })
        .collect())
}

/// Residuals of one chain element. Tangency and homothety residuals are
/// relative to `ab`; the identity residual is `|h − 2n·rₙ| / h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElementReport {
    pub index: usize,
    pub tangency_outer: f64,
    pub tangency_inner: f64,
    pub tangency_previous: f64,
    pub homothety: f64,
    pub identity: f64,
}

impl ElementReport {
    pub fn worst(&self) -> f64 {
        [self.tangency_outer, self.tangency_inner, self.tangency_previous, self.homothety, self.identity]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChainReport {
    pub elements: Vec<ElementReport>,
}

impl ChainReport {
    pub fn worst(&self) -> f64 {
        self.elements.iter().map(ElementReport::worst).fold(0.0, f64::max)
    }

    pub fn worst_identity(&self) -> f64 {
        self.elements.iter().map(|e| e.identity).fold(0.0, f64::max)
    }

    pub fn worst_tangency(&self) -> f64 {
        self.elements
            .iter()
            .map(|e| e.tangency_outer.max(e.tangency_inner).max(e.tangency_previous))
            .fold(0.0, f64::max)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.worst() <= tol
    }

    /// Indices of elements with any residual above `tol`.
    pub fn failures(&self, tol: f64) -> Vec<usize> {
        self.elements.iter().filter(|e| e.worst() > tol).map(|e| e.index).collect()
    }
}

pub fn verify_chain(spec: &ChainSpec, chain: &[ChainElement]) -> ChainReport {
    let base = base_ellipses(spec);
    let outer = squash(&base.outer, spec.k);
    let inner = squash(&base.inner, spec.k);
    let mut previous = squash(&base.seed, spec.k);
    let scale = spec.ab;
    let mut elements = Vec::with_capacity(chain.len());
    for el in chain {
        let c = squash(&el.as_ellipse(), spec.k);
        let gap = |other: &Circle| (c.center - other.center).norm();
        let internal = (gap(&outer) - (outer.radius - c.radius)).abs() / scale;
        let external_inner = (gap(&inner) - (inner.radius + c.radius)).abs() / scale;
        let external_prev = (gap(&previous) - (previous.radius + c.radius)).abs() / scale;
        let homothety = (el.ry - spec.k * el.rx).abs() / scale;
        let identity = (el.h - 2.0 * el.index as f64 * el.r_n()).abs() / el.h;
        elements.push(ElementReport {
            index: el.index,
            tangency_outer: internal,
            tangency_inner: external_inner,
            tangency_previous: external_prev,
            homothety,
            identity,
        });
        previous = c;
    }
    ChainReport { elements }
}

/// An inversion that maps `E` and `E′` to the two lines perpendicular to
/// `AB` bounding element `i`, which it leaves fixed.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainWitness {
    pub ellipse: Ellipse,
    /// `x = x_outer` and `x = x_inner`: the images of `E` and `E′`.
    pub lines: [ImplicitCurve; 2],
    pub line_x: [f64; 2],
}

pub fn chain_inversion_witness(spec: &ChainSpec, i: usize) -> Result<ChainWitness> {
    spec.validate()?;
    if i == 0 || i > spec.count {
        return Err(Error::IndexOutOfRange { index: i, count: spec.count });
    }
    let chain = build_chain(spec)?;
    let el = squash(&chain[i - 1].as_ellipse(), spec.k);
    // tangent length from A to the squashed element: its orthogonal circle
    let t = (el.center.norm_sq() - el.radius * el.radius).sqrt();
    let ellipse = Ellipse::axis_aligned(t, spec.k * t)?;
    let x_outer = t * t / spec.ab;
    let x_inner = t * t / (spec.r * spec.ab);
    let vertical = |x: f64| -> Result<ImplicitCurve> {
        ImplicitCurve::line(Rational::from_integer(1.into()), Rational::from_integer(0.into()), -rational_from_f64(x)?)
    };
    Ok(ChainWitness { ellipse, lines: [vertical(x_outer)?, vertical(x_inner)?], line_x: [x_outer, x_inner] })
}

/// CSV with header `n,cx,cy,rx,ry,h,ratio`, 17 significant digits.
pub fn chain_csv(chain: &[ChainElement]) -> String {
    let mut out = String::from("n,cx,cy,rx,ry,h,ratio\n");
    for el in chain {
        let ratio = el.h / (el.index as f64 * el.r_n());
        let _ = writeln!(
            out,
            "{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            el.index, el.center.x, el.center.y, el.rx, el.ry, el.h, ratio
        );
    }
    out
}
