//! Implicit curves with exact rational coefficients and their images under
//! inversion in an axis-aligned, origin-centered ellipse.
//!
//! Substituting `x ← a²b²x/ρ`, `y ← a²b²y/ρ` with `ρ = b²x² + a²y²` and
//! clearing denominators gives a polynomial that may carry spurious factors
//! of `ρ`. Since `ρ` vanishes only at the origin these factors are divided
//! out exactly before canonicalizing.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::{Monomial, Poly};
use super::rational::Rational;
use crate::error::{Error, Result};
use crate::geometry::{Direction, Point};

/// Exact twin of an axis-aligned, origin-centered inversion ellipse,
/// given by its squared semi-axes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InversionEllipseExact {
    a2: Rational,
    b2: Rational,
}

impl InversionEllipseExact {
    pub fn new(a2: Rational, b2: Rational) -> Result<Self> {
        if !a2.is_positive() || !b2.is_positive() {
            return Err(Error::InvalidEllipse("squared semi-axes must be positive".into()));
        }
        Ok(InversionEllipseExact { a2, b2 })
    }

    pub fn from_semi_axes(a: &Rational, b: &Rational) -> Result<Self> {
        InversionEllipseExact::new(a * a, b * b)
    }

    pub fn a2(&self) -> &Rational {
        &self.a2
    }

    pub fn b2(&self) -> &Rational {
        &self.b2
    }

    /// `ρ = b²x² + a²y²`.
    pub fn rho(&self) -> Poly {
        Poly::from_terms([(Monomial::new(2, 0), self.b2.clone()), (Monomial::new(0, 2), self.a2.clone())])
    }

    /// `x²/a² + y²/b² − 1` in canonical form.
    pub fn boundary(&self) -> ImplicitCurve {
        ImplicitCurve::conic(
            self.a2.recip(),
            Rational::zero(),
            self.b2.recip(),
            Rational::zero(),
            Rational::zero(),
            -Rational::one(),
        )
        .expect("nonzero conic")
    }

    /// Exact image of a point; `None` at the origin.
    pub fn invert_point(&self, x: &Rational, y: &Rational) -> Option<(Rational, Rational)> {
        let rho = &self.b2 * x * x + &self.a2 * y * y;
        if rho.is_zero() {
            return None;
        }
        let s = &self.a2 * &self.b2 / rho;
        Some((x * &s, y * &s))
    }
}

/// An algebraic curve `p(x, y) = 0` stored in canonical form: integer
/// coefficients, content 1, leading coefficient (graded-lex) positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImplicitCurve {
    poly: Poly,
}

impl ImplicitCurve {
    pub fn new(poly: Poly) -> Result<Self> {
        match poly.degree() {
            None => Err(Error::ZeroCurve),
            Some(0) => Err(Error::UnsupportedDegree(0)),
            Some(_) => Ok(ImplicitCurve { poly: poly.primitive() }),
        }
    }

    /// `m·x + n·y + p = 0`.
    pub fn line(m: Rational, n: Rational, p: Rational) -> Result<Self> {
        ImplicitCurve::new(Poly::from_terms([
            (Monomial::new(1, 0), m),
            (Monomial::new(0, 1), n),
            (Monomial::ONE, p),
        ]))
    }

    /// `A·x² + B·xy + C·y² + D·x + E·y + F = 0`.
    pub fn conic(a: Rational, b: Rational, c: Rational, d: Rational, e: Rational, f: Rational) -> Result<Self> {
        ImplicitCurve::new(Poly::from_terms([
            (Monomial::new(2, 0), a),
            (Monomial::new(1, 1), b),
            (Monomial::new(0, 2), c),
            (Monomial::new(1, 0), d),
            (Monomial::new(0, 1), e),
            (Monomial::ONE, f),
        ]))
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn degree(&self) -> u32 {
        self.poly.degree().expect("curves are nonzero")
    }

    pub fn coeff(&self, x: u32, y: u32) -> Rational {
        self.poly.coeff(x, y)
    }

    pub fn constant_term(&self) -> Rational {
        self.poly.coeff(0, 0)
    }

    pub fn passes_through_origin(&self) -> bool {
        self.constant_term().is_zero()
    }

    /// Coefficients `(D, E)` of `x` and `y`.
    pub fn linear_part(&self) -> (Rational, Rational) {
        (self.poly.coeff(1, 0), self.poly.coeff(0, 1))
    }

    /// Coefficients `[A, B, C, D, E, F]` of a curve of degree at most 2.
    pub fn conic_coefficients(&self) -> Result<[Rational; 6]> {
        if self.degree() > 2 {
            return Err(Error::UnsupportedDegree(self.degree()));
        }
        let c = |i, j| self.poly.coeff(i, j);
        Ok([c(2, 0), c(1, 1), c(0, 2), c(1, 0), c(0, 1), c(0, 0)])
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        self.poly.eval(x, y)
    }

    pub fn eval_f64(&self, p: Point) -> f64 {
        self.poly.eval_f64(p.x, p.y)
    }

    pub fn scaled_residual(&self, p: Point) -> f64 {
        self.poly.scaled_residual(p.x, p.y)
    }

    /// Coefficients `[A, B, C, D, E, F]` as doubles.
    pub fn conic_coefficients_f64(&self) -> Result<[f64; 6]> {
        Ok(self.conic_coefficients()?.map(|c| c.to_f64().unwrap_or(f64::NAN)))
    }
}

impl fmt::Display for ImplicitCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

impl FromStr for ImplicitCurve {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ImplicitCurve::new(Poly::parse(s)?)
    }
}

/// Classes of image curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CurveClass {
    LineThroughCenter,
    /// Line missing the center: the image of a homothetic conic through it.
    LineNotThroughCenter,
    /// Conic homothetic to the inversion ellipse, through the center.
    EllipseThroughCenter,
    /// Conic homothetic to the inversion ellipse, missing the center.
    HomotheticConic,
    Cubic,
    Quartic,
    Other(u32),
}

impl CurveClass {
    pub fn name(&self) -> String {
        match self {
            CurveClass::Other(d) => format!("Other({d})"),
            other => format!("{other:?}"),
        }
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

fn homothetic_quadratic(e: &InversionEllipseExact, c: &ImplicitCurve) -> bool {
    let (a, b, cc) = (c.coeff(2, 0), c.coeff(1, 1), c.coeff(0, 2));
    b.is_zero() && !a.is_zero() && &a * e.a2() == &cc * e.b2()
}

/// Whether a conic is homothetic to the inversion ellipse: no `xy` term and
/// `A : C = 1/a² : 1/b²`.
pub fn is_homothetic(e: &InversionEllipseExact, c: &ImplicitCurve) -> Result<bool> {
    if c.degree() != 2 {
        return Err(Error::UnsupportedDegree(c.degree()));
    }
    Ok(homothetic_quadratic(e, c))
}

/// Class of a curve relative to the inversion ellipse.
pub fn classify(e: &InversionEllipseExact, c: &ImplicitCurve) -> CurveClass {
    let through = c.passes_through_origin();
    match c.degree() {
        1 if through => CurveClass::LineThroughCenter,
        1 => CurveClass::LineNotThroughCenter,
        2 if homothetic_quadratic(e, c) && through => CurveClass::EllipseThroughCenter,
        2 if homothetic_quadratic(e, c) => CurveClass::HomotheticConic,
        3 => CurveClass::Cubic,
        4 => CurveClass::Quartic,
        d => CurveClass::Other(d),
    }
}

/// Exact image of a line or conic.
pub fn pushforward(e: &InversionEllipseExact, c: &ImplicitCurve) -> Result<ImplicitCurve> {
    let degree = c.degree();
    if degree > 2 {
        return Err(Error::UnsupportedDegree(degree));
    }
    let rho = e.rho();
    let s = e.a2() * e.b2();
    let mut image = Poly::zero();
    for (m, coeff) in c.poly().terms() {
        let scale = coeff * num_traits::pow(s.clone(), m.degree() as usize);
        let mono = Poly::term(m, scale);
        image = &image + &(&mono * &rho.pow(degree - m.degree()));
    }
    while let Some(q) = image.div_exact(&rho) {
        if q.degree().unwrap_or(0) == 0 {
            return Err(Error::DegenerateImage);
        }
        image = q;
    }
    ImplicitCurve::new(image)
}

pub fn classify_image(e: &InversionEllipseExact, c: &ImplicitCurve) -> Result<CurveClass> {
    Ok(classify(e, &pushforward(e, c)?))
}

/// Direction of the tangent line `D·x + E·y = 0` at the origin.
pub fn tangent_direction_at_origin(c: &ImplicitCurve) -> Result<Direction> {
    if !c.passes_through_origin() {
        return Err(Error::NotThroughCenter);
    }
    let (d, e) = c.linear_part();
    if d.is_zero() && e.is_zero() {
        return Err(Error::SingularAtOrigin);
    }
    Direction::new(e.to_f64().unwrap_or(f64::NAN), -d.to_f64().unwrap_or(f64::NAN))
}

fn require_line_off_center(l: &ImplicitCurve) -> Result<()> {
    if l.degree() != 1 {
        return Err(Error::Precondition(format!("expected a line, got degree {}", l.degree())));
    }
    if l.passes_through_origin() {
        return Err(Error::Precondition("line passes through the center".into()));
    }
    Ok(())
}

/// Whether the tangents at the center of the images of two lines are
/// perpendicular.
pub fn images_orthogonal_at_origin(e: &InversionEllipseExact, l1: &ImplicitCurve, l2: &ImplicitCurve) -> Result<bool> {
    require_line_off_center(l1)?;
    require_line_off_center(l2)?;
    let (m1, n1) = pushforward(e, l1)?.linear_part();
    let (m2, n2) = pushforward(e, l2)?.linear_part();
    Ok((m1 * m2 + n1 * n2).is_zero())
}

/// Whether every image of the given lines passes through the center and
/// through the image of `h`.
pub fn common_points_of_images(
    e: &InversionEllipseExact,
    lines: &[ImplicitCurve],
    h: &(Rational, Rational),
) -> Result<bool> {
    let (hx, hy) = e
        .invert_point(&h.0, &h.1)
        .ok_or_else(|| Error::Precondition("common point must differ from the center".into()))?;
    let zero = Rational::zero();
    for l in lines {
        if l.degree() != 1 {
            return Err(Error::Precondition(format!("expected a line, got degree {}", l.degree())));
        }
        let img = pushforward(e, l)?;
        if !img.eval(&zero, &zero).is_zero() || !img.eval(&hx, &hy).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether the images of a family of parallel lines all pass through the
/// center with a common tangent line there.
pub fn images_tangent_at_origin(e: &InversionEllipseExact, lines: &[ImplicitCurve]) -> Result<bool> {
    for l in lines {
        require_line_off_center(l)?;
    }
    for pair in lines.windows(2) {
        let (m1, n1) = pair[0].linear_part();
        let (m2, n2) = pair[1].linear_part();
        if !(m1 * n2 - m2 * n1).is_zero() {
            return Err(Error::Precondition("lines are not parallel".into()));
        }
    }
    let images = lines.iter().map(|l| pushforward(e, l)).collect::<Result<Vec<_>>>()?;
    if !images.iter().all(ImplicitCurve::passes_through_origin) {
        return Ok(false);
    }
    Ok(images.windows(2).all(|pair| {
        let (d1, e1) = pair[0].linear_part();
        let (d2, e2) = pair[1].linear_part();
        (d1 * e2 - d2 * e1).is_zero()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn z(n: i64) -> Rational {
        q(n, 1)
    }

    fn ell(a2: i64, b2: i64) -> InversionEllipseExact {
        InversionEllipseExact::new(z(a2), z(b2)).unwrap()
    }

    fn curve(s: &str) -> ImplicitCurve {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_text_round_trip() {
        let c = curve("1,0:-2;2,0:1/4;0,2:1");
        assert_eq!(c.to_string(), "2,0:1;0,2:4;1,0:-8");
        let again: ImplicitCurve = c.to_string().parse().unwrap();
        assert_eq!(again, c);
    }

    #[test]
    fn rejects_degenerate_curves() {
        assert_eq!("0,0:0".parse::<ImplicitCurve>(), Err(Error::ZeroCurve));
        assert_eq!("".parse::<ImplicitCurve>(), Err(Error::ZeroCurve));
        assert_eq!("0,0:3".parse::<ImplicitCurve>(), Err(Error::UnsupportedDegree(0)));
        let cubic = curve("3,0:1;0,0:-1");
        assert_eq!(pushforward(&ell(4, 1), &cubic), Err(Error::UnsupportedDegree(3)));
    }

    #[test]
    fn line_through_center_is_fixed() {
        for e in [ell(4, 1), ell(1, 9), ell(7, 7)] {
            let l = ImplicitCurve::line(z(2), z(-3), z(0)).unwrap();
            assert_eq!(pushforward(&e, &l).unwrap(), l);
            assert_eq!(classify_image(&e, &l).unwrap(), CurveClass::LineThroughCenter);
        }
    }

    #[test]
    fn line_off_center_maps_to_ellipse_through_center() {
        let e = ell(4, 1);
        let l = ImplicitCurve::line(z(1), z(0), z(-2)).unwrap();
        let img = pushforward(&e, &l).unwrap();
        assert_eq!(img.to_string(), "2,0:1;0,2:4;1,0:-2");
        // direct substitution oracle at sample points of the line x = 2
        for y in [-3i64, -1, 0, 2, 5] {
            let (u, v) = e.invert_point(&z(2), &z(y)).unwrap();
            assert!(img.eval(&u, &v).is_zero());
        }
        assert!(img.eval(&z(0), &z(0)).is_zero());
        assert!(img.eval(&z(2), &z(0)).is_zero());
        assert_eq!(classify(&e, &img), CurveClass::EllipseThroughCenter);
    }

    #[test]
    fn homothetic_conic_coefficient_map() {
        let e = ell(4, 1);
        let c = ImplicitCurve::conic(q(1, 4), z(0), z(1), z(1), z(1), z(2)).unwrap();
        let img = pushforward(&e, &c).unwrap();
        assert_eq!(img.to_string(), "2,0:1;0,2:4;1,0:2;0,1:2;0,0:2");
        assert_eq!(classify(&e, &img), CurveClass::HomotheticConic);
        // involution
        assert_eq!(pushforward(&e, &img).unwrap(), c);
    }

    #[test]
    fn homothetic_conic_through_center_maps_to_line() {
        let e = ell(4, 1);
        // x²/4 + y² + x + y = 0  ->  1 + x + y = 0
        let c = ImplicitCurve::conic(q(1, 4), z(0), z(1), z(1), z(1), z(0)).unwrap();
        let img = pushforward(&e, &c).unwrap();
        assert_eq!(img.to_string(), "1,0:1;0,1:1;0,0:1");
        assert_eq!(classify(&e, &img), CurveClass::LineNotThroughCenter);
    }

    #[test]
    fn self_inverse_families() {
        let e = ell(4, 1);
        assert_eq!(pushforward(&e, &e.boundary()).unwrap(), e.boundary());
        let f1 = ImplicitCurve::conic(q(1, 4), z(0), z(1), z(3), z(-2), z(1)).unwrap();
        assert_eq!(pushforward(&e, &f1).unwrap(), f1);
    }

    #[test]
    fn circle_through_center_maps_to_cubic() {
        let e = ell(4, 1);
        let circle = curve("2,0:1;0,2:1;1,0:-2");
        let img = pushforward(&e, &circle).unwrap();
        assert_eq!(classify(&e, &img), CurveClass::Cubic);
        // 2x² + 2y² − x³ − 4xy² = 0, checked at the image of (1, 1), which is (4/5, 4/5)
        assert_eq!(img.to_string(), "3,0:1;1,2:4;2,0:-2;0,2:-2");
        let (u, v) = e.invert_point(&z(1), &z(1)).unwrap();
        assert_eq!((u.clone(), v.clone()), (q(4, 5), q(4, 5)));
        assert!(img.eval(&u, &v).is_zero());
    }

    #[test]
    fn circle_off_center_maps_to_quartic() {
        let e = InversionEllipseExact::new(q(25, 4), q(9, 4)).unwrap();
        // (x + 2.8)² + (y − 1.96)² = 1.2²
        let circle = ImplicitCurve::conic(z(1), z(0), z(1), q(28, 5), q(-98, 25), q(28, 5) * q(28, 5) / z(4) + q(49, 25) * q(49, 25) - q(36, 25)).unwrap();
        assert_eq!(classify_image(&e, &circle).unwrap(), CurveClass::Quartic);
    }

    #[test]
    fn homothety_examples() {
        let e = ell(4, 1);
        assert!(is_homothetic(&e, &ImplicitCurve::conic(q(1, 4), z(0), z(1), z(1), z(0), z(2)).unwrap()).unwrap());
        assert!(!is_homothetic(&e, &curve("2,0:1;0,2:1;1,0:-2")).unwrap());
        assert!(is_homothetic(&e, &curve("2,0:3;0,2:12;1,0:1;0,0:-5")).unwrap());
        assert!(!is_homothetic(&e, &curve("2,0:1;1,1:1;0,2:4")).unwrap());
        assert_eq!(is_homothetic(&e, &curve("1,0:1;0,0:1")), Err(Error::UnsupportedDegree(1)));
    }

    #[test]
    fn tangent_directions() {
        let d = tangent_direction_at_origin(&curve("2,0:1;0,2:4;1,0:-2")).unwrap();
        assert!(d.dx().abs() < 1e-15 && (d.dy().abs() - 1.0).abs() < 1e-15);
        let c = ImplicitCurve::conic(q(1, 4), z(0), z(1), z(1), z(1), z(0)).unwrap();
        let d = tangent_direction_at_origin(&c).unwrap();
        assert!((d.dx() + d.dy()).abs() < 1e-15);
        assert_eq!(tangent_direction_at_origin(&curve("2,0:1;0,2:1")), Err(Error::SingularAtOrigin));
        assert_eq!(tangent_direction_at_origin(&curve("1,0:1;0,0:1")), Err(Error::NotThroughCenter));
    }

    #[test]
    fn perpendicular_lines_give_orthogonal_images() {
        let e = ell(4, 1);
        let l = |m, n, p| ImplicitCurve::line(z(m), z(n), z(p)).unwrap();
        assert!(images_orthogonal_at_origin(&e, &l(1, 1, 1), &l(1, -1, 2)).unwrap());
        assert!(images_orthogonal_at_origin(&ell(3, 11), &l(1, 0, 1), &l(0, 1, 1)).unwrap());
        assert!(!images_orthogonal_at_origin(&e, &l(1, 1, 1), &l(1, 2, 1)).unwrap());
        assert!(images_orthogonal_at_origin(&e, &l(1, 1, 0), &l(1, -1, 2)).is_err());
    }

    #[test]
    fn concurrent_lines_share_two_image_points() {
        let e = ell(4, 1);
        let h = (z(2), z(1));
        assert_eq!(e.invert_point(&h.0, &h.1), Some((z(1), q(1, 2))));
        let pencil = vec![curve("1,0:1;0,0:-2"), curve("0,1:1;0,0:-1"), curve("1,0:1;0,1:-2")];
        assert!(common_points_of_images(&e, &pencil, &h).unwrap());
        assert!(common_points_of_images(&e, &pencil[..1], &h).unwrap());
        let mut broken = pencil.clone();
        broken.push(curve("1,0:1;0,0:-3"));
        assert!(!common_points_of_images(&e, &broken, &h).unwrap());
        assert!(common_points_of_images(&e, &pencil, &(z(0), z(0))).is_err());
    }

    #[test]
    fn parallel_lines_give_tangent_images() {
        let e = ell(4, 1);
        let fam = vec![curve("1,0:1;0,1:1;0,0:1"), curve("1,0:1;0,1:1;0,0:3"), curve("1,0:1;0,1:1;0,0:-2")];
        assert!(images_tangent_at_origin(&e, &fam).unwrap());
        let vertical = vec![curve("1,0:1;0,0:-1"), curve("1,0:1;0,0:-3")];
        assert!(images_tangent_at_origin(&e, &vertical).unwrap());
        let d = tangent_direction_at_origin(&pushforward(&e, &vertical[0]).unwrap()).unwrap();
        assert!(d.dx().abs() < 1e-15);
        let skew = vec![curve("1,0:1;0,1:1;0,0:1"), curve("1,0:1;0,1:-1;0,0:1")];
        assert!(matches!(images_tangent_at_origin(&e, &skew), Err(Error::Precondition(_))));
    }
}
