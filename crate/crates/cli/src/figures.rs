//! Figure scenes, each computed from the library for a fixed configuration.

use std::f64::consts::{PI, TAU};

use ellinv_core::algebra::{pushforward, rationalize, ImplicitCurve, InversionEllipseExact, Rational};
use ellinv_core::geometry::Direction;
use ellinv_core::pappus::{base_ellipses, build_chain, ChainEllipse};
use ellinv_core::sampling::{circle_sampler, ellipse_sampler, hyperbola_branch_sampler, parabola_sampler, CurveSampler, Rect};
use ellinv_core::{ChainSpec, Ellipse, Point, Tolerance};
use num_bigint::BigInt;

use crate::commands::exact_ellipse;
use crate::config::{to_f64, JobConfig};
use crate::error::{CliError, CliResult};
use crate::svg::{line_samples, trace_image, Style, SvgScene};

pub const FIGURE_IDS: [&str; 10] = [
    "inversion",
    "perpendicular",
    "concurrent",
    "parallel",
    "homothetic",
    "line-image",
    "circle-image",
    "parabola-image",
    "hyperbola-image",
    "chain",
];

/// Common point of the concurrent pencil.
pub const PENCIL_POINT: (f64, f64) = (-3.18, 2.06);
pub const PENCIL_SIZE: usize = 5;

const SAMPLES: usize = 4000;
const WIDTH: f64 = 800.0;

pub fn render(id: &str, job: &JobConfig) -> CliResult<SvgScene> {
    match id {
        "inversion" => inversion(job),
        "perpendicular" => line_family(job, &perpendicular_lines()),
        "concurrent" => concurrent(job),
        "parallel" => line_family(job, &parallel_lines()),
        "homothetic" => homothetic(job),
        "line-image" => line_family(job, &[line(1, 2, -4)]),
        "circle-image" => circle_image(job),
        "parabola-image" => parabola_image(job),
        "hyperbola-image" => hyperbola_image(job),
        "chain" => chain_scene(&job.chain),
        other => Err(CliError::UnknownFigure(other.to_string())),
    }
}

/// Window centered on the inversion center, scaled to the ellipse.
pub fn figure_window(e: &Ellipse) -> Rect {
    let half = 2.6 * e.a().max(e.b());
    let c = e.center();
    Rect::new(c.x - half, c.x + half, c.y - 0.7 * half, c.y + 0.7 * half)
}

fn base_scene(e: &Ellipse) -> SvgScene {
    let mut scene = SvgScene::new(figure_window(e), WIDTH);
    scene.ellipse(e, Style::Inversion);
    scene.marker(e.center(), "O");
    scene
}

fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn line(m: i64, n: i64, p: i64) -> ImplicitCurve {
    ImplicitCurve::line(int(m), int(n), int(p)).expect("nonzero line")
}

fn perpendicular_lines() -> Vec<ImplicitCurve> {
    // y = x + 2 and x + y = 3/2
    vec![line(1, -1, 2), line(2, 2, -3)]
}

fn parallel_lines() -> Vec<ImplicitCurve> {
    // x − 2y + c = 0
    [-6, -3, 2, 4, 7].iter().map(|&c| line(1, -2, c)).collect()
}

/// Draws a line `m·x + n·y + p = 0` (in the ellipse frame) and its image.
pub fn draw_line(scene: &mut SvgScene, e: &Ellipse, l: &ImplicitCurve, tol: &Tolerance) {
    let (m, n) = l.linear_part();
    let (m, n, p) = (to_f64(&m), to_f64(&n), to_f64(&l.constant_term()));
    let norm2 = m * m + n * n;
    let foot = Point::new(-p * m / norm2, -p * n / norm2);
    let dir = Point::new(-n, m) * (1.0 / norm2.sqrt());
    let source: Vec<Point> = line_samples(foot, dir, SAMPLES).into_iter().map(|q| e.to_world(q)).collect();
    draw_traced(scene, e, &source, tol);
}

/// Ordered source samples (world coordinates) and their traced image.
fn draw_traced(scene: &mut SvgScene, e: &Ellipse, source: &[Point], tol: &Tolerance) {
    scene.polyline(source, Style::Source);
    scene.polyline(&trace_image(e, source, tol), Style::Image);
}

fn line_family(job: &JobConfig, lines: &[ImplicitCurve]) -> CliResult<SvgScene> {
    let e = job.ellipse.numeric()?;
    let mut scene = base_scene(&e);
    for l in lines {
        draw_line(&mut scene, &e, l, &job.tol);
    }
    Ok(scene)
}

fn inversion(job: &JobConfig) -> CliResult<SvgScene> {
    let e = job.ellipse.numeric()?;
    let p = job.point.unwrap_or(Point::new(3.72, 1.6));
    let q = e.invert(p).ok_or(ellinv_core::Error::CenterSingular)?;
    let dir = Direction::between(e.center(), p)?;
    let w = e.directional_radius(dir);
    let mut scene = base_scene(&e);
    let reach = (p - e.center()).norm().max((q - e.center()).norm()) * 1.15;
    scene.polyline(&[e.center(), e.center() + dir.as_point() * reach], Style::Aux);
    // the polar line of P meets the ray at P′
    let polar = e.polar_line(p, &job.tol)?;
    let norm2 = polar.m * polar.m + polar.n * polar.n;
    let foot = Point::new(polar.c * polar.m / norm2, polar.c * polar.n / norm2);
    let along = Point::new(-polar.n, polar.m) * (1.0 / norm2.sqrt());
    let pts: Vec<Point> = line_samples(foot, along, 64).into_iter().map(|x| e.to_world(x)).collect();
    scene.polyline(&pts, Style::Aux);
    scene.marker(p, "P");
    scene.marker(q, "P′");
    scene.marker(w.boundary_point, "W");
    Ok(scene)
}

/// Lines of the concurrent pencil through `h`, with exactly rational
/// coefficients, and their exact images.
pub fn concurrent_pencil(
    e: &InversionEllipseExact,
    h: &(Rational, Rational),
    count: usize,
) -> CliResult<Vec<(ImplicitCurve, ImplicitCurve)>> {
    (0..count)
        .map(|i| {
            let th = 0.3 + PI * i as f64 / count as f64;
            let (c, s) = (rationalize(th.cos(), 1e-12)?, rationalize(th.sin(), 1e-12)?);
            // −s·x + c·y + (s·hx − c·hy) = 0
            let p = &s * &h.0 - &c * &h.1;
            let l = ImplicitCurve::line(-s, c, p)?;
            let img = pushforward(e, &l)?;
            Ok((l, img))
        })
        .collect()
}

pub fn pencil_point() -> (Rational, Rational) {
    (rationalize(PENCIL_POINT.0, 1e-12).expect("finite"), rationalize(PENCIL_POINT.1, 1e-12).expect("finite"))
}

fn concurrent(job: &JobConfig) -> CliResult<SvgScene> {
    let e = job.ellipse.numeric()?;
    let exact = exact_ellipse(job)?;
    let mut scene = base_scene(&e);
    for (l, _) in concurrent_pencil(&exact, &pencil_point(), PENCIL_SIZE)? {
        draw_line(&mut scene, &e, &l, &job.tol);
    }
    let h = Point::new(PENCIL_POINT.0, PENCIL_POINT.1);
    scene.marker(h, "H");
    if let Some(hi) = e.invert(h) {
        scene.marker(hi, "H′");
    }
    Ok(scene)
}

fn homothetic(job: &JobConfig) -> CliResult<SvgScene> {
    let e = job.ellipse.numeric()?;
    let (a, b) = (e.a(), e.b());
    let mut scene = base_scene(&e);
    let local = |c: Point, s: f64| -> Vec<Point> {
        ellipse_sampler(c, s * a, s * b).sample(SAMPLES).into_iter().map(|q| e.to_world(q)).collect()
    };
    // through the center: image is a line missing it
    let c1 = Point::new(0.4 * a, 0.3 * b);
    draw_traced(&mut scene, &e, &local(c1, ((c1.x / a).powi(2) + (c1.y / b).powi(2)).sqrt()), &job.tol);
    // missing the center: image is again homothetic
    draw_traced(&mut scene, &e, &local(Point::new(0.9 * a, -0.5 * b), 0.3), &job.tol);
    Ok(scene)
}

fn circle_image(job: &JobConfig) -> CliResult<SvgScene> {
    let e = job.ellipse.numeric()?;
    let s = e.a().max(e.b());
    let mut scene = base_scene(&e);
    let world = |pts: Vec<Point>| -> Vec<Point> { pts.into_iter().map(|q| e.to_world(q)).collect() };
    // through the center: cubic image (quadratic when a = b)
    let c = Point::new(0.5 * s, 0.25 * s);
    draw_traced(&mut scene, &e, &world(circle_sampler(c, c.norm()).sample(SAMPLES)), &job.tol);
    // off the center: quartic image
    draw_traced(&mut scene, &e, &world(circle_sampler(Point::new(-0.9 * s, -0.4 * s), 0.3 * s).sample(SAMPLES)), &job.tol);
    Ok(scene)
}

fn parabola_image(job: &JobConfig) -> CliResult<SvgScene> {
    let e = job.ellipse.numeric()?;
    let s = e.a().max(e.b());
    let mut scene = base_scene(&e);
    // y = x²/(2s) − s/2, sampled far out so the image closes up near O
    let src: Vec<Point> = parabola_sampler(0.5 / s, 0.0, -0.5 * s, -60.0 * s, 60.0 * s)
        .sample(4 * SAMPLES)
        .into_iter()
        .map(|q| e.to_world(q))
        .collect();
    draw_traced(&mut scene, &e, &src, &job.tol);
    Ok(scene)
}

fn hyperbola_image(job: &JobConfig) -> CliResult<SvgScene> {
    let e = job.ellipse.numeric()?;
    let s = e.a().max(e.b());
    let mut scene = base_scene(&e);
    for sign in [1.0, -1.0] {
        let src: Vec<Point> = hyperbola_branch_sampler(Point::ORIGIN, 0.6 * s, 0.4 * s, sign, 6.0)
            .sample(SAMPLES)
            .into_iter()
            .map(|q| e.to_world(q))
            .collect();
        draw_traced(&mut scene, &e, &src, &job.tol);
    }
    Ok(scene)
}

fn semi_ellipse(el: &ChainEllipse) -> Vec<Point> {
    (0..=128)
        .map(|i| {
            let t = PI * i as f64 / 128.0;
            Point::new(el.center.x + el.rx * t.cos(), el.center.y + el.ry * t.sin())
        })
        .collect()
}

fn full_ellipse(center: Point, rx: f64, ry: f64) -> Vec<Point> {
    (0..128)
        .map(|i| {
            let t = TAU * i as f64 / 128.0;
            Point::new(center.x + rx * t.cos(), center.y + ry * t.sin())
        })
        .collect()
}

/// Base semiellipses over `AB`, `AC`, `CB` as closed curves and the chain.
pub fn chain_scene(spec: &ChainSpec) -> CliResult<SvgScene> {
    spec.validate()?;
    let base = base_ellipses(spec);
    let chain = build_chain(spec)?;
    let pad = 0.05 * spec.ab;
    let top = base.outer.ry.max(chain.iter().map(|el| el.center.y + el.ry).fold(0.0, f64::max));
    let mut scene = SvgScene::new(Rect::new(-pad, spec.ab + pad, -pad, top + pad), WIDTH);
    for el in [base.outer, base.inner, base.seed] {
        scene.closed(&semi_ellipse(&el), Style::Inversion);
    }
    for el in &chain {
        scene.closed(&full_ellipse(el.center, el.rx, el.ry), Style::Chain);
    }
    scene.marker(Point::ORIGIN, "A");
    scene.marker(Point::new(spec.r * spec.ab, 0.0), "C");
    scene.marker(Point::new(spec.ab, 0.0), "B");
    Ok(scene)
}
