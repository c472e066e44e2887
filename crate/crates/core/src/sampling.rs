//! Point samplers for source curves and the sampled image of a curve under
//! inversion. Used for figures and for checking the exact pushforward
//! against the numeric map.

use crate::error::{Error, Result};
use crate::geometry::{Point, Tolerance};
use crate::inversion::Ellipse;

/// Axis-aligned world rectangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl Rect {
    pub fn new(xmin: f64, xmax: f64, ymin: f64, ymax: f64) -> Self {
        Rect { xmin, xmax, ymin, ymax }
    }

    pub fn width(&self) -> f64 {
        self.xmax - self.xmin
    }

    pub fn height(&self) -> f64 {
        self.ymax - self.ymin
    }

    pub fn contains(&self, p: Point) -> bool {
        p.x >= self.xmin && p.x <= self.xmax && p.y >= self.ymin && p.y <= self.ymax
    }
}

pub trait CurveSampler {
    /// About `n` points of the curve, in sampling order.
    fn sample(&self, n: usize) -> Vec<Point>;
}

/// `t ↦ f(t)` sampled uniformly on `[t0, t1]`.
pub struct Parametric<F> {
    f: F,
    t0: f64,
    t1: f64,
}

impl<F: Fn(f64) -> Point> Parametric<F> {
    pub fn new(f: F, t0: f64, t1: f64) -> Self {
        Parametric { f, t0, t1 }
    }
}

impl<F: Fn(f64) -> Point> CurveSampler for Parametric<F> {
    fn sample(&self, n: usize) -> Vec<Point> {
        let n = n.max(2);
        (0..n)
            .map(|i| {
                let t = self.t0 + (self.t1 - self.t0) * i as f64 / (n - 1) as f64;
                (self.f)(t)
            })
            .collect()
    }
}

pub fn line_sampler(origin: Point, dir: Point, t0: f64, t1: f64) -> Parametric<impl Fn(f64) -> Point> {
    Parametric::new(move |t| origin + dir * t, t0, t1)
}

pub fn ellipse_sampler(center: Point, rx: f64, ry: f64) -> Parametric<impl Fn(f64) -> Point> {
    Parametric::new(
        move |t: f64| Point::new(center.x + rx * t.cos(), center.y + ry * t.sin()),
        0.0,
        std::f64::consts::TAU,
    )
}

pub fn circle_sampler(center: Point, r: f64) -> Parametric<impl Fn(f64) -> Point> {
    ellipse_sampler(center, r, r)
}

/// Parabola `y = α·x² + β·x + γ` for `x` in `[x0, x1]`.
pub fn parabola_sampler(alpha: f64, beta: f64, gamma: f64, x0: f64, x1: f64) -> Parametric<impl Fn(f64) -> Point> {
    Parametric::new(move |x: f64| Point::new(x, alpha * x * x + beta * x + gamma), x0, x1)
}

/// One branch of `((x−cx)/p)² − ((y−cy)/q)² = 1`, `sign` selecting the
/// branch, for hyperbolic parameter in `[−t_max, t_max]`.
pub fn hyperbola_branch_sampler(
    center: Point,
    p: f64,
    q: f64,
    sign: f64,
    t_max: f64,
) -> Parametric<impl Fn(f64) -> Point> {
    Parametric::new(
        move |t: f64| Point::new(center.x + sign * p * t.cosh(), center.y + q * t.sinh()),
        -t_max,
        t_max,
    )
}

/// Samples a conic `A·x² + B·xy + C·y² + D·x + E·y + F = 0` inside a window
/// by sweeping vertical lines (solving for `y`) and then horizontal lines
/// (solving for `x`), so that steep and flat arcs are both covered.
pub struct ConicSampler {
    coeffs: [f64; 6],
    window: Rect,
}

impl ConicSampler {
    pub fn new(coeffs: [f64; 6], window: Rect) -> Self {
        ConicSampler { coeffs, window }
    }
}

fn quadratic_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    let scale = a.abs().max(b.abs()).max(c.abs());
    if scale == 0.0 {
        return vec![];
    }
    if a.abs() <= 1e-14 * scale {
        return if b != 0.0 { vec![-c / b] } else { vec![] };
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return vec![];
    }
    let sq = disc.sqrt();
    // stable form avoiding cancellation
    let qq = -0.5 * (b + b.signum() * sq);
    if qq == 0.0 {
        return vec![0.0];
    }
    vec![qq / a, c / qq]
}

impl CurveSampler for ConicSampler {
    fn sample(&self, n: usize) -> Vec<Point> {
        let [a, b, c, d, e, f] = self.coeffs;
        let w = self.window;
        let per_sweep = (n / 2).max(2);
        let mut out = Vec::with_capacity(2 * per_sweep);
        for i in 0..per_sweep {
            let x = w.xmin + w.width() * i as f64 / (per_sweep - 1) as f64;
            for y in quadratic_roots(c, b * x + e, a * x * x + d * x + f) {
                out.push(Point::new(x, y));
            }
        }
        for i in 0..per_sweep {
            let y = w.ymin + w.height() * i as f64 / (per_sweep - 1) as f64;
            for x in quadratic_roots(a, b * y + d, c * y * y + e * y + f) {
                out.push(Point::new(x, y));
            }
        }
        out.retain(|p| w.contains(*p));
        out
    }
}

/// Maps samples of a source curve through the inversion, dropping samples
/// inside the center guard.
pub fn sample_image<S: CurveSampler + ?Sized>(e: &Ellipse, source: &S, n: usize, tol: &Tolerance) -> Result<Vec<Point>> {
    if n < 2 {
        return Err(Error::Precondition("need at least two samples".into()));
    }
    let guard = e.guard_radius(tol);
    let images: Vec<Point> = source
        .sample(n)
        .into_iter()
        .filter(|p| (*p - e.center()).norm() >= guard)
        .filter_map(|p| e.invert(p))
        .collect();
    if images.is_empty() {
        Err(Error::EmptyResult)
    } else {
        Ok(images)
    }
}
