//! Property tests for the numeric map and the exact algebra.

use ellinv_core::algebra::{pushforward, rationalize, ImplicitCurve, InversionEllipseExact, Rational};
use ellinv_core::geometry::{distance, signed_distance_along, Direction, Point, RigidMotion, Tolerance};
use ellinv_core::Ellipse;
use num_bigint::BigInt;
use proptest::prelude::*;

fn coord() -> impl Strategy<Value = f64> {
    -100.0..100.0f64
}

fn point() -> impl Strategy<Value = Point> {
    (coord(), coord()).prop_map(|(x, y)| Point::new(x, y))
}

fn ellipse() -> impl Strategy<Value = Ellipse> {
    (0.5..5.0f64, 0.5..5.0f64, -5.0..5.0f64, -5.0..5.0f64, 0.0..std::f64::consts::TAU)
        .prop_map(|(a, b, cx, cy, phi)| Ellipse::new(Point::new(cx, cy), a, b, phi).unwrap())
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-30i64..=30, 1i64..=12).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    small_rational().prop_filter("nonzero", |r| *r != Rational::from_integer(0.into()))
}

fn positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..=40, 1i64..=12).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

proptest! {
    #[test]
    fn distance_is_a_metric(p in point(), q in point(), r in point()) {
        prop_assert_eq!(distance(p, q), distance(q, p));
        prop_assert!(distance(p, r) <= distance(p, q) + distance(q, r) + 1e-12);
    }

    #[test]
    fn motion_round_trip(angle in -10.0..10.0f64, t in point(), p in point()) {
        let m = RigidMotion::new(angle, t);
        let back = m.inverse().apply(m.apply(p));
        prop_assert!(distance(back, p) <= 1e-12 * p.norm().max(t.norm()).max(1.0));
    }

    #[test]
    fn signed_distance_recovers_parameter(o in point(), th in 0.0..6.3f64, t in -1e3..1e3f64) {
        let d = Direction::new(th.cos(), th.sin()).unwrap();
        let p = o + d.as_point() * t;
        let got = signed_distance_along(o, d, p, &Tolerance::default()).unwrap();
        prop_assert!((got - t).abs() <= 1e-12 * t.abs().max(o.norm()).max(1.0));
    }

    #[test]
    fn involution_and_ray(e in ellipse(), p in point()) {
        prop_assume!(distance(p, e.center()) > 1e-3);
        let q = e.invert(p).unwrap();
        let back = e.invert(q).unwrap();
        prop_assert!(distance(back, p) <= 1e-10 * distance(p, e.center()));
        let (op, oq) = (p - e.center(), q - e.center());
        prop_assert!(op.dot(oq) > 0.0);
    }

    #[test]
    fn canonical_text_round_trip(c in prop::collection::vec(small_rational(), 6)) {
        let curve = ImplicitCurve::conic(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone(), c[4].clone(), c[5].clone());
        if let Ok(curve) = curve {
            let text = curve.to_string();
            let parsed: ImplicitCurve = text.parse().unwrap();
            prop_assert_eq!(&parsed, &curve);
            prop_assert_eq!(parsed.to_string(), text);
        }
    }

    #[test]
    fn homothetic_pushforward_is_involutive(
        a2 in positive_rational(),
        b2 in positive_rational(),
        d in small_rational(),
        e in small_rational(),
        f in nonzero_rational(),
    ) {
        let ell = InversionEllipseExact::new(a2.clone(), b2.clone()).unwrap();
        let c = ImplicitCurve::conic(a2.recip(), Rational::from_integer(0.into()), b2.recip(), d, e, f).unwrap();
        let img = pushforward(&ell, &c).unwrap();
        prop_assert_eq!(pushforward(&ell, &img).unwrap(), c);
    }

    #[test]
    fn rationalize_is_close(x in -1e3..1e3f64) {
        let r = rationalize(x, 1e-12).unwrap();
        let back: f64 = num_traits::ToPrimitive::to_f64(&r).unwrap();
        prop_assert!((back - x).abs() <= 1e-12 * x.abs().max(1.0));
    }
}
