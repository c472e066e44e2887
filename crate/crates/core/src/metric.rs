//! Metric relations of inverse points: distance, cross ratio and harmonic
//! conjugates.

use crate::error::{Error, Result};
use crate::geometry::{are_collinear, distance, signed_distance_along, Direction, Point, Tolerance};
use crate::inversion::Ellipse;

/// Four pairwise distinct collinear points together with their common line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollinearQuad {
    points: [Point; 4],
    origin: Point,
    dir: Direction,
}

impl CollinearQuad {
    pub fn new(a: Point, b: Point, c: Point, d: Point, tol: &Tolerance) -> Result<Self> {
        let points = [a, b, c, d];
        for i in 0..4 {
            for j in i + 1..4 {
                if distance(points[i], points[j]) <= tol.abs_floor {
                    return Err(Error::DegenerateQuad("points are not pairwise distinct"));
                }
            }
        }
        // longest chord from A gives the best-conditioned direction
        let far = points[1..]
            .iter()
            .copied()
            .max_by(|p, q| distance(a, *p).total_cmp(&distance(a, *q)))
            .expect("three candidates");
        let dir = Direction::between(a, far)?;
        for p in &points[1..] {
            signed_distance_along(a, dir, *p, tol)?;
        }
        Ok(CollinearQuad { points, origin: a, dir })
    }

    pub fn points(&self) -> [Point; 4] {
        self.points
    }

    pub fn direction(&self) -> Direction {
        self.dir
    }

    /// Signed parameters of the four points along the common line.
    fn params(&self) -> [f64; 4] {
        self.points.map(|p| (p - self.origin).dot(self.dir.as_point()))
    }
}

/// Distance between the images of `p` and `t`, from the distances of the
/// originals and the radii of inversion toward each of them. The collinear
/// branch is used when `O`, `p`, `t` are collinear within `tol`.
pub fn inverse_distance(e: &Ellipse, p: Point, t: Point, tol: &Tolerance) -> Result<f64> {
    check_pair(e, p, t, tol)?;
    if are_collinear(e.center(), p, t, tol) {
        inverse_distance_collinear(e, p, t, tol)
    } else {
        inverse_distance_general(e, p, t, tol)
    }
}

fn check_pair(e: &Ellipse, p: Point, t: Point, tol: &Tolerance) -> Result<()> {
    let o = e.center();
    let guard = e.guard_radius(tol);
    if distance(o, p) < guard || distance(o, t) < guard {
        return Err(Error::CenterSingular);
    }
    if distance(p, t) <= tol.abs_floor {
        return Err(Error::Precondition("p and t must be distinct".into()));
    }
    Ok(())
}

/// `√((w² − u²)(w²·OT² − u²·OP²) + w²u²·PT²) / (OP·OT)`.
pub fn inverse_distance_general(e: &Ellipse, p: Point, t: Point, tol: &Tolerance) -> Result<f64> {
    check_pair(e, p, t, tol)?;
    let o = e.center();
    let (op, ot, pt) = (distance(o, p), distance(o, t), distance(p, t));
    let w = e.directional_radius(Direction::between(o, p)?).w;
    let u = e.directional_radius(Direction::between(o, t)?).w;
    let (w2, u2) = (w * w, u * u);
    let radicand = (w2 - u2) * (w2 * ot * ot - u2 * op * op) + w2 * u2 * pt * pt;
    Ok(radicand.max(0.0).sqrt() / (op * ot))
}

/// `w²·PT / (OP·OT)`, valid when `O`, `p`, `t` are collinear (the radius is
/// then the same toward both points).
pub fn inverse_distance_collinear(e: &Ellipse, p: Point, t: Point, tol: &Tolerance) -> Result<f64> {
    check_pair(e, p, t, tol)?;
    let o = e.center();
    let w = e.directional_radius(Direction::between(o, p)?).w;
    Ok(w * w * distance(p, t) / (distance(o, p) * distance(o, t)))
}

/// `(AC·BD) / (AD·BC)` in signed distances along the common line.
pub fn cross_ratio(q: &CollinearQuad, tol: &Tolerance) -> Result<f64> {
    let [ta, tb, tc, td] = q.params();
    let (ac, bd, ad, bc) = (tc - ta, td - tb, td - ta, tc - tb);
    if ad.abs() <= tol.abs_floor || bc.abs() <= tol.abs_floor {
        return Err(Error::DegenerateQuad("vanishing denominator"));
    }
    Ok(ac * bd / (ad * bc))
}

/// `(AC·BD) / (AD·BC)` in unsigned Euclidean distances. Defined for any four
/// points; used to compare a collinear quadruple with its (generally
/// non-collinear) images.
pub fn distance_cross_ratio(a: Point, b: Point, c: Point, d: Point, tol: &Tolerance) -> Result<f64> {
    let (ad, bc) = (distance(a, d), distance(b, c));
    if ad <= tol.abs_floor || bc <= tol.abs_floor {
        return Err(Error::DegenerateQuad("vanishing denominator"));
    }
    Ok(distance(a, c) * distance(b, d) / (ad * bc))
}

/// Whether `p` and `p_prime` divide `q1q2` harmonically:
/// `(Q₁P·Q₂P′) / (Q₁P′·Q₂P) = 1` within `tol.rel`, in unsigned lengths.
pub fn is_harmonic(q1: Point, q2: Point, p: Point, p_prime: Point, tol: &Tolerance) -> Result<bool> {
    if distance(q1, q2) <= tol.abs_floor {
        return Err(Error::DegenerateQuad("diameter endpoints coincide"));
    }
    let dir = Direction::between(q1, q2)?;
    signed_distance_along(q1, dir, p, tol)?;
    signed_distance_along(q1, dir, p_prime, tol)?;
    let (q1p, q2p) = (distance(q1, p), distance(q2, p));
    let (q1pp, q2pp) = (distance(q1, p_prime), distance(q2, p_prime));
    let den = q1pp * q2p;
    if den <= tol.abs_floor * tol.abs_floor || q1p * q2pp <= tol.abs_floor * tol.abs_floor {
        return Err(Error::DegenerateQuad("point coincides with a diameter endpoint"));
    }
    Ok(((q1p * q2pp) / den - 1.0).abs() <= tol.rel)
}

/// The harmonic conjugate of `p` with respect to `q1`, `q2`: the point on
/// the ray from the midpoint through `p` with `OP·OP′ = (|Q₁Q₂|/2)²`.
pub fn harmonic_conjugate(q1: Point, q2: Point, p: Point, tol: &Tolerance) -> Result<Point> {
    let o = (q1 + q2) * 0.5;
    let half = distance(q1, q2) * 0.5;
    if half <= tol.abs_floor {
        return Err(Error::DegenerateQuad("diameter endpoints coincide"));
    }
    let dir = Direction::between(q1, q2)?;
    let t = signed_distance_along(o, dir, p, tol)?;
    if t.abs() <= tol.abs_floor {
        return Err(Error::MidpointSingular);
    }
    if t.abs() >= half {
        return Err(Error::Precondition("p must lie strictly inside the segment".into()));
    }
    let op = p - o;
    Ok(o + op * (half * half / op.norm_sq()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn inverse_distance_examples() {
        let tol = Tolerance::default();
        let unit = Ellipse::axis_aligned(1.0, 1.0).unwrap();
        let d = inverse_distance(&unit, pt(2.0, 0.0), pt(4.0, 0.0), &tol).unwrap();
        assert!((d - 0.25).abs() < 1e-15);

        let e = Ellipse::axis_aligned(2.0, 1.0).unwrap();
        let (p, t) = (pt(2.0, 2.0), pt(-1.0, 3.0));
        // images from the closed form: (0.4, 0.4) and (-4/37, 12/37)
        let direct = distance(pt(0.4, 0.4), pt(-4.0 / 37.0, 12.0 / 37.0));
        let formula = inverse_distance(&e, p, t, &tol).unwrap();
        assert!((formula - direct).abs() < 1e-14);
        assert!((formula - 0.513713).abs() < 1e-6);

        let c = Ellipse::axis_aligned(1.3, 1.3).unwrap();
        let (p, t) = (pt(0.7, -2.1), pt(3.3, 0.4));
        let expect = 1.3f64.powi(2) * distance(p, t) / (p.norm() * t.norm());
        assert!((inverse_distance(&c, p, t, &tol).unwrap() - expect).abs() < 1e-12);
    }

    #[test]
    fn inverse_distance_guards() {
        let tol = Tolerance::default();
        let e = Ellipse::axis_aligned(2.0, 1.0).unwrap();
        assert_eq!(inverse_distance(&e, Point::ORIGIN, pt(1.0, 0.0), &tol), Err(Error::CenterSingular));
        assert!(matches!(
            inverse_distance(&e, pt(1.0, 1.0), pt(1.0, 1.0), &tol),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn cross_ratio_examples() {
        let tol = Tolerance::default();
        let q = CollinearQuad::new(pt(-2.0, 0.0), pt(2.0, 0.0), pt(1.0, 0.0), pt(4.0, 0.0), &tol).unwrap();
        assert!((cross_ratio(&q, &tol).unwrap() + 1.0).abs() < 1e-15);
        let q = CollinearQuad::new(pt(0.0, 0.0), pt(2.0, 0.0), pt(3.0, 0.0), pt(1.0, 0.0), &tol).unwrap();
        assert!((cross_ratio(&q, &tol).unwrap() + 3.0).abs() < 1e-15);
        // orientation independence
        let q = CollinearQuad::new(pt(5.0, 0.0), pt(3.0, 0.0), pt(2.0, 0.0), pt(4.0, 0.0), &tol).unwrap();
        let r = CollinearQuad::new(pt(-5.0, 0.0), pt(-3.0, 0.0), pt(-2.0, 0.0), pt(-4.0, 0.0), &tol).unwrap();
        assert_eq!(cross_ratio(&q, &tol), cross_ratio(&r, &tol));
    }

    #[test]
    fn primed_cross_ratio_value() {
        let v: f64 = (5.48 * 2.35) / (1.27 * 3.88);
        assert!((v - 2.613).abs() < 1e-3);
    }

    #[test]
    fn quad_rejects_degenerate() {
        let tol = Tolerance::default();
        assert!(matches!(
            CollinearQuad::new(pt(0.0, 0.0), pt(0.0, 0.0), pt(1.0, 0.0), pt(2.0, 0.0), &tol),
            Err(Error::DegenerateQuad(_))
        ));
        assert!(matches!(
            CollinearQuad::new(pt(0.0, 0.0), pt(1.0, 0.0), pt(2.0, 0.1), pt(3.0, 0.0), &tol),
            Err(Error::OffLine { .. })
        ));
    }

    #[test]
    fn harmonic_examples() {
        let tol = Tolerance::default();
        assert!(is_harmonic(pt(-2.0, 0.0), pt(2.0, 0.0), pt(1.0, 0.0), pt(4.0, 0.0), &tol).unwrap());
        assert!(!is_harmonic(pt(-2.0, 0.0), pt(2.0, 0.0), pt(1.0, 0.0), pt(3.0, 0.0), &tol).unwrap());

        let e = Ellipse::axis_aligned(2.7, 1.1).unwrap();
        let d = Direction::new(0.6, -0.3).unwrap();
        let w = e.directional_radius(d).w;
        let (q1, q2) = (d.as_point() * w, d.as_point() * -w);
        let p = d.as_point() * (0.37 * w);
        let pp = e.invert(p).unwrap();
        assert!(is_harmonic(q1, q2, p, pp, &tol).unwrap());
    }

    #[test]
    fn conjugate_examples() {
        let tol = Tolerance::default();
        let c = harmonic_conjugate(pt(-2.0, 0.0), pt(2.0, 0.0), pt(1.0, 0.0), &tol).unwrap();
        assert!((c - pt(4.0, 0.0)).norm() < 1e-15);
        let c = harmonic_conjugate(pt(-1.0, 0.0), pt(1.0, 0.0), pt(0.5, 0.0), &tol).unwrap();
        assert!((c - pt(2.0, 0.0)).norm() < 1e-15);
        let c = harmonic_conjugate(pt(0.0, -3.0), pt(0.0, 3.0), pt(0.0, 1.0), &tol).unwrap();
        assert!((c - pt(0.0, 9.0)).norm() < 1e-14);
        assert_eq!(
            harmonic_conjugate(pt(-1.0, 0.0), pt(1.0, 0.0), pt(0.0, 0.0), &tol),
            Err(Error::MidpointSingular)
        );
    }
}
