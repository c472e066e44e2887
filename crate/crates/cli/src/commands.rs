//! Subcommand handlers. Each returns its primary artifact plus report
//! lines; `main` decides where they go.

use ellinv_core::algebra::{classify, pushforward, ImplicitCurve, InversionEllipseExact};
use ellinv_core::geometry::Direction;
use ellinv_core::pappus::{build_chain, chain_csv, verify_chain};
use ellinv_core::sampling::{ConicSampler, CurveSampler, Rect};
use ellinv_core::selftest::run_all;
use ellinv_core::{ExtendedPoint, Point};
use serde_json::{json, Value};

use crate::config::{Format, JobConfig, Operation};
use crate::error::{CliError, CliResult};
use crate::figures::{self, chain_scene, draw_line, figure_window};
use crate::svg::{trace_image, SvgScene, Style};

/// Tolerance for the chain verdict printed in reports.
pub const CHAIN_TOL: f64 = 1e-9;

#[derive(Debug)]
pub struct Output {
    pub artifact: String,
    pub format: Option<Format>,
    /// Human-readable lines, already prefixed with `#`.
    pub report: Vec<String>,
    /// Set when the command ran to completion but must exit nonzero.
    pub failure: Option<CliError>,
}

impl Output {
    fn new(artifact: String, format: Option<Format>) -> Output {
        Output { artifact, format, report: Vec::new(), failure: None }
    }
}

pub fn execute(job: &JobConfig) -> CliResult<Output> {
    match job.operation {
        Operation::InvertPoint => invert_point(job),
        Operation::InvertCurve => invert_curve(job),
        Operation::Chain => chain(job),
        Operation::Figure => figure(job),
        Operation::Selftest => Ok(selftest(job)),
    }
}

fn require_format(job: &JobConfig, default: Format, allowed: &[Format]) -> CliResult<Format> {
    let f = job.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(CliError::Config(format!("{} does not support {f:?} output", job.operation.name())))
    }
}

fn pair(p: Point) -> Value {
    json!([p.x, p.y])
}

pub fn invert_point(job: &JobConfig) -> CliResult<Output> {
    require_format(job, Format::Json, &[Format::Json])?;
    let p = job.point.ok_or_else(|| CliError::Config("invert-point needs --point X,Y".into()))?;
    let e = job.ellipse.numeric()?;
    let record = match e.invert_point(ExtendedPoint::Finite(p)) {
        ExtendedPoint::Infinity => json!({
            "input": pair(p),
            "image": "infinity",
            "w": Value::Null,
            "oracles": Value::Null,
            "max_deviation": Value::Null,
        }),
        ExtendedPoint::Finite(image) => {
            let ray = e.invert_point_by_ray(p, &job.tol)?;
            let polar = e.invert_point_by_polar(p, &job.tol)?;
            let squash = e.invert_point_by_squash(p, &job.tol)?;
            let w = e.directional_radius(Direction::between(e.center(), p)?).w;
            // relative to the distance of the image from the center, floored at 1
            let scale = (image - e.center()).norm().max(1.0);
            let deviation = [ray, polar, squash].iter().map(|q| (*q - image).norm() / scale).fold(0.0, f64::max);
            json!({
                "input": pair(p),
                "image": pair(image),
                "w": w,
                "oracles": {"ray": pair(ray), "polar": pair(polar), "squash": pair(squash)},
                "max_deviation": deviation,
            })
        }
    };
    Ok(Output::new(serde_json::to_string_pretty(&record)? + "\n", Some(Format::Json)))
}

/// Exact ellipse for curve work, which happens in the ellipse's own frame.
pub fn exact_ellipse(job: &JobConfig) -> CliResult<InversionEllipseExact> {
    if !job.ellipse.is_canonical() {
        return Err(CliError::Config(
            "curves are given in the ellipse frame; --cx, --cy and --phi must be 0 for curve work".into(),
        ));
    }
    Ok(InversionEllipseExact::from_semi_axes(&job.ellipse.a, &job.ellipse.b)?)
}

pub fn invert_curve(job: &JobConfig) -> CliResult<Output> {
    let format = require_format(job, Format::Json, &[Format::Json, Format::Svg])?;
    let text = job.curve.as_deref().ok_or_else(|| CliError::Config("invert-curve needs --curve".into()))?;
    let curve: ImplicitCurve = text.parse()?;
    let exact = exact_ellipse(job)?;
    let image = pushforward(&exact, &curve)?;
    let class = classify(&exact, &image);
    let record = json!({
        "input_canonical": curve.to_string(),
        "image_canonical": image.to_string(),
        "class": class.name(),
    });
    match format {
        Format::Svg => {
            let mut out = Output::new(curve_scene(job, &curve)?.render(), Some(Format::Svg));
            out.report = vec![
                format!("# input {curve}"),
                format!("# image {image}"),
                format!("# class {class}"),
            ];
            Ok(out)
        }
        _ => Ok(Output::new(serde_json::to_string_pretty(&record)? + "\n", Some(Format::Json))),
    }
}

/// Source curve and its sampled image. Lines are traced as polylines;
/// conics, lacking a global parametrisation here, are drawn as dots.
fn curve_scene(job: &JobConfig, curve: &ImplicitCurve) -> CliResult<SvgScene> {
    let e = job.ellipse.numeric()?;
    let window = figure_window(&e);
    let mut scene = SvgScene::new(window, 800.0);
    scene.ellipse(&e, Style::Inversion);
    scene.marker(e.center(), "O");
    if curve.degree() == 1 {
        draw_line(&mut scene, &e, curve, &job.tol);
    } else {
        let coeffs = curve.conic_coefficients_f64()?;
        let wide = Rect::new(window.xmin * 8.0, window.xmax * 8.0, window.ymin * 8.0, window.ymax * 8.0);
        let mut source = ConicSampler::new(coeffs, window).sample(4000);
        source.extend(ConicSampler::new(coeffs, wide).sample(8000));
        scene.dots(&source, Style::Source);
        scene.dots(&trace_image(&e, &source, &job.tol), Style::Image);
    }
    Ok(scene)
}

pub fn chain_report(job: &JobConfig) -> CliResult<Vec<String>> {
    let spec = &job.chain;
    let chain = build_chain(spec)?;
    let report = verify_chain(spec, &chain);
    Ok(vec![
        format!("# chain ab={} r={} k={} n={}", spec.ab, spec.r, spec.k, spec.count),
        format!("# worst |h - 2n ry|/h = {:.3e}", report.worst_identity()),
        format!("# worst tangency/homothety residual = {:.3e}", report.worst_tangency()),
        format!(
            "# verdict {} (tol {CHAIN_TOL:e}){}",
            if report.passes(CHAIN_TOL) { "PASS" } else { "FAIL" },
            match report.failures(CHAIN_TOL) {
                f if f.is_empty() => String::new(),
                f => format!(", failing elements {f:?}"),
            }
        ),
    ])
}

pub fn chain(job: &JobConfig) -> CliResult<Output> {
    let format = require_format(job, Format::Csv, &[Format::Csv, Format::Svg, Format::Json])?;
    let spec = &job.chain;
    spec.validate()?;
    let chain = build_chain(spec)?;
    let artifact = match format {
        Format::Csv => chain_csv(&chain),
        Format::Svg => chain_scene(spec)?.render(),
        Format::Json => {
            let report = verify_chain(spec, &chain);
            let elements: Vec<Value> = chain
                .iter()
                .map(|el| {
                    json!({"n": el.index, "cx": el.center.x, "cy": el.center.y, "rx": el.rx, "ry": el.ry,
                           "h": el.h, "ratio": el.h / (el.index as f64 * el.ry)})
                })
                .collect();
            serde_json::to_string_pretty(&json!({
                "spec": {"ab": spec.ab, "r": spec.r, "k": spec.k, "n": spec.count},
                "elements": elements,
                "worst_identity": report.worst_identity(),
                "worst_tangency": report.worst_tangency(),
                "passes": report.passes(CHAIN_TOL),
            }))? + "\n"
        }
    };
    let mut out = Output::new(artifact, Some(format));
    out.report = chain_report(job)?;
    Ok(out)
}

pub fn figure(job: &JobConfig) -> CliResult<Output> {
    require_format(job, Format::Svg, &[Format::Svg])?;
    let id = job.figure.as_deref().ok_or_else(|| {
        CliError::Config(format!("figure needs an id, one of: {}", figures::FIGURE_IDS.join(", ")))
    })?;
    let scene = figures::render(id, job)?;
    let mut out = Output::new(scene.render(), Some(Format::Svg));
    if id == "chain" {
        out.report = chain_report(job)?;
    }
    Ok(out)
}

pub fn selftest(job: &JobConfig) -> Output {
    let reports = run_all(job.seed);
    let failed = reports.iter().filter(|r| !r.passed()).count();
    let mut artifact: String = reports.iter().map(|r| format!("{r}\n")).collect();
    artifact.push_str(&format!("selftest seed={:#x}: {} suites, {failed} failed\n", job.seed, reports.len()));
    let mut out = Output::new(artifact, None);
    if failed > 0 {
        out.failure = Some(CliError::SelftestFailed(failed, reports.len()));
    }
    out
}
