//! Exact rational polynomial algebra and the pushforward of lines and conics
//! under elliptic inversion.

mod curve;
mod poly;
mod rational;

pub use curve::{
    classify, classify_image, common_points_of_images, images_orthogonal_at_origin,
    images_tangent_at_origin, is_homothetic, pushforward, tangent_direction_at_origin, CurveClass,
    ImplicitCurve, InversionEllipseExact,
};
pub use poly::{Monomial, Poly};
pub use rational::{format_rational, parse_rational, rational_from_f64, rationalize, Rational};
