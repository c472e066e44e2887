//! Minimal SVG scene: world-coordinate window, aspect-preserving affine
//! map to pixels, polylines clipped to the window.

use std::fmt::Write as _;

use ellinv_core::sampling::Rect;
use ellinv_core::{Ellipse, Point, Tolerance};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    Inversion,
    Source,
    Image,
    Chain,
    Aux,
}

impl Style {
    fn class(self) -> &'static str {
        match self {
            Style::Inversion => "inversion",
            Style::Source => "source",
            Style::Image => "image",
            Style::Chain => "chain",
            Style::Aux => "aux",
        }
    }
}

const CSS: &str = ".inversion{fill:none;stroke:#000;stroke-width:1.5}\
.source{fill:none;stroke:#1f5fbf;stroke-width:1.2}\
.image{fill:none;stroke:#c0392b;stroke-width:1.2}\
.chain{fill:none;stroke:#2e8b57;stroke-width:1}\
.aux{fill:none;stroke:#888;stroke-width:0.8;stroke-dasharray:4 3}\
.dot{stroke:none}\
.source.dot{fill:#1f5fbf}.image.dot{fill:#c0392b}\
.marker{fill:#000}text{font:12px sans-serif}";

#[derive(Debug, Clone)]
enum Item {
    Path { points: Vec<Point>, closed: bool, style: Style },
    Dot { at: Point, style: Style },
    Marker { at: Point, label: String },
}

#[derive(Debug, Clone)]
pub struct SvgScene {
    window: Rect,
    width: f64,
    items: Vec<Item>,
}

impl SvgScene {
    /// `width` is in pixels; the height follows from the window's aspect.
    pub fn new(window: Rect, width: f64) -> SvgScene {
        assert!(window.width() > 0.0 && window.height() > 0.0 && width > 0.0);
        SvgScene { window, width, items: Vec::new() }
    }

    pub fn window(&self) -> Rect {
        self.window
    }

    fn scale(&self) -> f64 {
        self.width / self.window.width()
    }

    pub fn height(&self) -> f64 {
        self.window.height() * self.scale()
    }

    /// World to pixel; `y` grows downward in SVG.
    pub fn to_pixel(&self, p: Point) -> Point {
        let s = self.scale();
        Point::new((p.x - self.window.xmin) * s, (self.window.ymax - p.y) * s)
    }

    fn visible(&self, p: Point) -> bool {
        p.is_finite() && self.window.contains(p)
    }

    /// Adds an open polyline, split wherever a point is non-finite or falls
    /// outside the window. Returns the number of pieces kept.
    pub fn polyline(&mut self, points: &[Point], style: Style) -> usize {
        let mut kept = 0;
        let mut run: Vec<Point> = Vec::new();
        for &p in points.iter().chain(std::iter::once(&Point::new(f64::NAN, f64::NAN))) {
            if self.visible(p) {
                run.push(p);
            } else {
                if run.len() >= 2 {
                    self.items.push(Item::Path { points: std::mem::take(&mut run), closed: false, style });
                    kept += 1;
                }
                run.clear();
            }
        }
        kept
    }

    /// Adds a closed curve if it lies inside the window; otherwise falls
    /// back to clipped open pieces. Returns whether it was kept closed.
    pub fn closed(&mut self, points: &[Point], style: Style) -> bool {
        if points.len() >= 3 && points.iter().all(|p| self.visible(*p)) {
            self.items.push(Item::Path { points: points.to_vec(), closed: true, style });
            true
        } else {
            let mut ring = points.to_vec();
            ring.extend(points.first().copied());
            self.polyline(&ring, style);
            false
        }
    }

    /// Scatter of sample points, for curves without an ordered sampling.
    pub fn dots(&mut self, points: &[Point], style: Style) {
        for &p in points {
            if self.visible(p) {
                self.items.push(Item::Dot { at: p, style });
            }
        }
    }

    pub fn marker(&mut self, at: Point, label: &str) {
        if self.visible(at) {
            self.items.push(Item::Marker { at, label: label.to_string() });
        }
    }

    /// The inversion ellipse as a closed curve.
    pub fn ellipse(&mut self, e: &Ellipse, style: Style) {
        let pts: Vec<Point> = (0..256).map(|i| e.point_at(std::f64::consts::TAU * i as f64 / 256.0)).collect();
        self.closed(&pts, style);
    }

    pub fn closed_count(&self) -> usize {
        self.items.iter().filter(|i| matches!(i, Item::Path { closed: true, .. })).count()
    }

    pub fn render(&self) -> String {
        let (w, h) = (self.width, self.height());
        let mut out = String::new();
        let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.3}" height="{h:.3}" viewBox="0 0 {w:.3} {h:.3}">"#
        );
        let _ = writeln!(out, "<style>{CSS}</style>");
        for item in &self.items {
            match item {
                Item::Path { points, closed, style } => {
                    let mut d = String::new();
                    for (i, p) in points.iter().enumerate() {
                        let q = self.to_pixel(*p);
                        let _ = write!(d, "{}{:.3},{:.3}", if i == 0 { "M" } else { " L" }, q.x, q.y);
                    }
                    if *closed {
                        d.push_str(" Z");
                    }
                    let _ = writeln!(out, r#"<path class="{}" d="{d}"/>"#, style.class());
                }
                Item::Dot { at, style } => {
                    let q = self.to_pixel(*at);
                    let _ = writeln!(out, r#"<circle class="{} dot" cx="{:.3}" cy="{:.3}" r="1"/>"#, style.class(), q.x, q.y);
                }
                Item::Marker { at, label } => {
                    let q = self.to_pixel(*at);
                    let _ = writeln!(out, r#"<circle class="marker" cx="{:.3}" cy="{:.3}" r="2.5"/>"#, q.x, q.y);
                    let _ = writeln!(out, r#"<text x="{:.3}" y="{:.3}">{}</text>"#, q.x + 4.0, q.y - 4.0, escape(label));
                }
            }
        }
        out.push_str("</svg>\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Images of ordered source samples, with a break (NaN point) wherever a
/// sample falls inside the center guard.
pub fn trace_image(e: &Ellipse, source: &[Point], tol: &Tolerance) -> Vec<Point> {
    let guard = e.guard_radius(tol);
    let gap = Point::new(f64::NAN, f64::NAN);
    source
        .iter()
        .map(|&p| if (p - e.center()).norm() < guard { None } else { e.invert(p) })
        .map(|q| q.unwrap_or(gap))
        .collect()
}

/// Points of the line through `p0` with direction `dir`, parametrised by
/// `tan` so that both ends reach far beyond any window.
pub fn line_samples(p0: Point, dir: Point, n: usize) -> Vec<Point> {
    let half = std::f64::consts::FRAC_PI_2;
    (1..n)
        .map(|i| {
            let s = -half + std::f64::consts::PI * i as f64 / n as f64;
            p0 + dir * s.tan()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mapping_preserves_aspect() {
        let scene = SvgScene::new(Rect::new(-2.0, 2.0, -1.0, 1.0), 400.0);
        assert_eq!(scene.height(), 200.0);
        assert_eq!(scene.to_pixel(Point::new(-2.0, 1.0)), Point::new(0.0, 0.0));
        assert_eq!(scene.to_pixel(Point::new(2.0, -1.0)), Point::new(400.0, 200.0));
        let a = scene.to_pixel(Point::new(0.0, 0.0));
        let b = scene.to_pixel(Point::new(1.0, 1.0));
        assert_eq!(b.x - a.x, a.y - b.y);
    }

    #[test]
    fn polylines_split_outside_window_and_at_gaps() {
        let mut scene = SvgScene::new(Rect::new(0.0, 10.0, 0.0, 10.0), 100.0);
        let nan = Point::new(f64::NAN, 0.0);
        let pts = [
            Point::new(1.0, 1.0),
            Point::new(2.0, 2.0),
            Point::new(20.0, 2.0),
            Point::new(3.0, 3.0),
            Point::new(4.0, 4.0),
            nan,
            Point::new(5.0, 5.0),
        ];
        assert_eq!(scene.polyline(&pts, Style::Source), 2);
        assert!(!scene.render().contains("NaN"));
    }

    #[test]
    fn closed_only_when_inside() {
        let mut scene = SvgScene::new(Rect::new(-1.0, 1.0, -1.0, 1.0), 100.0);
        let tri = [Point::new(0.0, 0.0), Point::new(0.5, 0.0), Point::new(0.0, 0.5)];
        assert!(scene.closed(&tri, Style::Chain));
        let big = [Point::new(0.0, 0.0), Point::new(5.0, 0.0), Point::new(0.0, 0.5)];
        assert!(!scene.closed(&big, Style::Chain));
        assert_eq!(scene.closed_count(), 1);
        assert_eq!(scene.render().matches(" Z\"").count(), 1);
    }

    #[test]
    fn traced_line_through_center_breaks() {
        let e = Ellipse::axis_aligned(2.0, 1.0).unwrap();
        let src = [Point::new(-1.0, 0.0), Point::ORIGIN, Point::new(1.0, 0.0)];
        let img = trace_image(&e, &src, &Tolerance::default());
        assert_eq!(img[0], Point::new(-4.0, 0.0));
        assert!(!img[1].is_finite());
        assert_eq!(img[2], Point::new(4.0, 0.0));
    }

    #[test]
    fn labels_are_escaped() {
        let mut scene = SvgScene::new(Rect::new(-1.0, 1.0, -1.0, 1.0), 100.0);
        scene.marker(Point::ORIGIN, "a<b");
        assert!(scene.render().contains("a&lt;b"));
    }
}
