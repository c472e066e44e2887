//! Inversion with respect to an ellipse.
//!
//! - [`geometry`]: points, directions, rigid motions, tolerances;
//! - [`inversion`]: the point map and its independent constructions;
//! - [`metric`]: distance between inverse points, cross ratio, harmonic
//!   conjugates;
//! - [`algebra`]: exact pushforward of lines and conics, classification of
//!   the images, and results on families of lines;
//! - [`sampling`]: sampled images of arbitrary curves;
//! - [`pappus`]: the elliptic Pappus chain;
//! - [`selftest`]: seeded property suites shared by the test targets and
//!   the `selftest` command.

pub mod algebra;
pub mod error;
pub mod geometry;
pub mod inversion;
pub mod metric;
pub mod pappus;
pub mod sampling;
pub mod selftest;

pub use algebra::{CurveClass, ImplicitCurve, InversionEllipseExact, Poly, Rational};
pub use error::{Error, Result};
pub use geometry::{Direction, Point, RigidMotion, Tolerance};
pub use inversion::{DirectionalRadius, Ellipse, ExtendedPoint, LineEq};
pub use pappus::{ChainElement, ChainSpec};
