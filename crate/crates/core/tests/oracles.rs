//! Chain construction against the brute-force tangency solver, and sampled
//! membership checks for the exact pushforward.

use ellinv_core::algebra::{classify, pushforward, CurveClass, ImplicitCurve, InversionEllipseExact, Rational};
use ellinv_core::pappus::{base_ellipses, build_chain, chain_inversion_witness, verify_chain, ChainSpec};
use ellinv_core::sampling::{
    circle_sampler, ellipse_sampler, hyperbola_branch_sampler, line_sampler, parabola_sampler, sample_image,
    ConicSampler, CurveSampler, Rect,
};
use ellinv_core::selftest::tangent_circle_chain;
use ellinv_core::{Ellipse, Point, Tolerance};
use num_bigint::BigInt;

#[test]
fn brute_force_radii_match_frozen_values() {
    let circles = tangent_circle_chain(2.0 / 3.0, 2);
    assert!((circles[0].r - 1.0 / 7.0).abs() < 1e-12, "{:?}", circles[0]);
    assert!((circles[1].r - 1.0 / 10.0).abs() < 1e-12, "{:?}", circles[1]);
    assert!((circles[0].y - 2.0 / 7.0).abs() < 1e-12);
    assert!((circles[1].y - 2.0 / 5.0).abs() < 1e-12);
}

#[test]
fn construction_matches_brute_force() {
    for r in [0.3, 0.5, 2.0 / 3.0, 0.8] {
        let oracle = tangent_circle_chain(r, 5);
        for k in [0.4, 1.0, 1.5] {
            let chain = build_chain(&ChainSpec::new(1.0, r, k, 5).unwrap()).unwrap();
            for (el, c) in chain.iter().zip(&oracle) {
                assert!((el.rx - c.r).abs() < 1e-9, "r={r} k={k} n={} lib={:?} oracle={:?}", el.index, (el.center, el.rx), c);
                assert!((el.center.x - c.x).abs() < 1e-9);
                assert!((el.center.y - k * c.y).abs() < 1e-9);
                assert!((el.ry - k * c.r).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn scaled_spec_scales_chain() {
    let unit = build_chain(&ChainSpec::new(1.0, 0.4, 0.7, 6).unwrap()).unwrap();
    let big = build_chain(&ChainSpec::new(3.5, 0.4, 0.7, 6).unwrap()).unwrap();
    for (u, b) in unit.iter().zip(&big) {
        assert!((b.rx - 3.5 * u.rx).abs() < 1e-12);
        assert!((b.h - 3.5 * u.h).abs() < 1e-12);
    }
}

#[test]
fn long_chain_is_stable() {
    let spec = ChainSpec::new(1.0, 0.5, 0.8, 20).unwrap();
    let report = verify_chain(&spec, &build_chain(&spec).unwrap());
    assert_eq!(report.elements.len(), 20);
    assert!(report.passes(1e-9), "worst {}", report.worst());
}

#[test]
fn displaced_element_residual_matches_hand_value() {
    let spec = ChainSpec::new(1.0, 2.0 / 3.0, 1.0, 3).unwrap();
    let mut chain = build_chain(&spec).unwrap();
    // classical chain: rho_3 = 1/15, h_3 = 6/15 (K=ab inversion gives circle center (1.25, 1.5), radius 0.25)
    let h3 = 0.4;
    assert!((chain[2].h - h3).abs() < 1e-14);
    chain[2].center.y += 1e-3;
    chain[2].h += 1e-3;
    let report = verify_chain(&spec, &chain);
    assert!((report.elements[2].identity - 1e-3 / (h3 + 1e-3)).abs() < 1e-12);
    assert_eq!(report.failures(1e-9), vec![3]);
}

#[test]
fn witness_images_are_vertical_lines() {
    for (i, rho) in [(1usize, 1.0 / 7.0), (2, 0.1)] {
        let spec = ChainSpec::new(1.0, 2.0 / 3.0, 1.0, 3).unwrap();
        let w = chain_inversion_witness(&spec, i).unwrap();
        let base = base_ellipses(&spec);
        for (curve, x) in [(base.outer, w.line_x[0]), (base.inner, w.line_x[1])] {
            for j in 1..50 {
                let th = std::f64::consts::PI * j as f64 / 50.0;
                let p = Point::new(curve.center.x + curve.rx * th.cos(), curve.ry * th.sin());
                let img = w.ellipse.invert(p).unwrap();
                assert!((img.x - x).abs() < 1e-8);
                assert!(w.lines[0].scaled_residual(Point::new(w.line_x[0], img.y)) < 1e-12);
            }
        }
        assert!(((w.line_x[1] - w.line_x[0]) - 2.0 * rho).abs() < 1e-8);
        assert_eq!(w.ellipse.a(), w.ellipse.b());
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Images of 10³ samples satisfy the exact image polynomial.
fn assert_membership<S: CurveSampler>(e: &Ellipse, exact: &InversionEllipseExact, source: &ImplicitCurve, sampler: &S) {
    let image = pushforward(exact, source).unwrap();
    let pts = sample_image(e, sampler, 1000, &Tolerance::default()).unwrap();
    assert!(pts.len() >= 500, "only {} samples for {}", pts.len(), source);
    for p in pts {
        assert!(image.scaled_residual(p) <= 1e-9, "{p:?} -> {}", image.scaled_residual(p));
    }
}

#[test]
fn point_set_consistency_per_class() {
    let e = Ellipse::axis_aligned(2.0, 1.0).unwrap();
    let exact = InversionEllipseExact::new(q(4, 1), q(1, 1)).unwrap();

    // line off O: x = 2
    let line: ImplicitCurve = "1,0:1;0,0:-2".parse().unwrap();
    assert_membership(&e, &exact, &line, &line_sampler(Point::new(2.0, 0.0), Point::new(0.0, 1.0), -40.0, 40.0));

    // line through O: y = 2x
    let through: ImplicitCurve = "1,0:2;0,1:-1".parse().unwrap();
    assert_membership(&e, &exact, &through, &line_sampler(Point::new(0.01, 0.02), Point::new(1.0, 2.0), 0.0, 30.0));

    // homothetic conic: x²/4 + y² + x + y + 2 = 0 is empty over the reals; use x²/4 + y² − x − 1 = 0
    let homo = ImplicitCurve::conic(q(1, 4), q(0, 1), q(1, 1), q(-1, 1), q(0, 1), q(-1, 1)).unwrap();
    let [a, b, c, d, ee, f] = homo.conic_coefficients_f64().unwrap();
    assert_membership(&e, &exact, &homo, &ConicSampler::new([a, b, c, d, ee, f], Rect::new(-5.0, 7.0, -4.0, 4.0)));

    // circle through O -> cubic
    let circle: ImplicitCurve = "2,0:1;0,2:1;1,0:-2".parse().unwrap();
    assert_eq!(classify(&exact, &pushforward(&exact, &circle).unwrap()), CurveClass::Cubic);
    assert_membership(&e, &exact, &circle, &circle_sampler(Point::new(1.0, 0.0), 1.0));

    // circle off O -> quartic
    let off: ImplicitCurve = "2,0:1;0,2:1;1,0:-6;0,1:-2;0,0:9".parse().unwrap();
    assert_eq!(classify(&exact, &pushforward(&exact, &off).unwrap()), CurveClass::Quartic);
    assert_membership(&e, &exact, &off, &circle_sampler(Point::new(3.0, 1.0), 1.0));

    // parabola y = x² − 1 and hyperbola x² − y² = 1
    let parabola: ImplicitCurve = "2,0:1;0,1:-1;0,0:-1".parse().unwrap();
    assert_membership(&e, &exact, &parabola, &parabola_sampler(1.0, 0.0, -1.0, -10.0, 10.0));
    let hyperbola: ImplicitCurve = "2,0:1;0,2:-1;0,0:-1".parse().unwrap();
    assert_membership(&e, &exact, &hyperbola, &hyperbola_branch_sampler(Point::ORIGIN, 1.0, 1.0, 1.0, 3.0));

    // the inversion ellipse itself
    assert_membership(&e, &exact, &exact.boundary(), &ellipse_sampler(Point::ORIGIN, 2.0, 1.0));
}
