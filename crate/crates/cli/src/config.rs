//! Job configuration: an optional JSON file overlaid by command-line flags.

use std::path::{Path, PathBuf};

use ellinv_core::algebra::{parse_rational, Rational};
use ellinv_core::{ChainSpec, Ellipse, Point, Tolerance};
use num_traits::ToPrimitive;
use serde::Deserialize;

use crate::error::{CliError, CliResult};

/// A number in a config file: either a JSON number or a string such as
/// `"2/3"`. JSON numbers are read through their shortest decimal form so
/// that `0.1` becomes exactly `1/10`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Float(f64),
    Text(String),
}

impl Num {
    fn text(&self) -> String {
        match self {
            Num::Float(x) => format!("{x}"),
            Num::Text(s) => s.clone(),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum PointInput {
    Pair([Num; 2]),
    Text(String),
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EllipseFile {
    pub a: Option<Num>,
    pub b: Option<Num>,
    pub cx: Option<Num>,
    pub cy: Option<Num>,
    pub phi: Option<Num>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainFile {
    pub ab: Option<Num>,
    pub r: Option<Num>,
    pub k: Option<Num>,
    pub n: Option<usize>,
}

/// On-disk form of a job. Unknown keys are rejected.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobFile {
    pub operation: Option<String>,
    #[serde(default)]
    pub ellipse: EllipseFile,
    pub point: Option<PointInput>,
    pub curve: Option<String>,
    #[serde(default)]
    pub chain: ChainFile,
    pub figure: Option<String>,
    pub format: Option<String>,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub tol: Option<Num>,
}

impl JobFile {
    pub fn load(path: &Path) -> CliResult<JobFile> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_path_buf(), source })?;
        Ok(serde_json::from_str(&text)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operation {
    InvertPoint,
    InvertCurve,
    Chain,
    Figure,
    Selftest,
}

impl Operation {
    pub fn name(self) -> &'static str {
        match self {
            Operation::InvertPoint => "invert-point",
            Operation::InvertCurve => "invert-curve",
            Operation::Chain => "chain",
            Operation::Figure => "figure",
            Operation::Selftest => "selftest",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

impl std::str::FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Format> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "svg" => Ok(Format::Svg),
            other => Err(CliError::Config(format!("unknown format `{other}` (expected json, csv or svg)"))),
        }
    }
}

/// Inversion ellipse with exact semi-axes alongside the float pose.
#[derive(Debug, Clone)]
pub struct EllipseSpec {
    pub a: Rational,
    pub b: Rational,
    pub center: Point,
    pub phi: f64,
}

impl EllipseSpec {
    pub fn numeric(&self) -> CliResult<Ellipse> {
        Ok(Ellipse::new(self.center, to_f64(&self.a), to_f64(&self.b), self.phi)?)
    }

    pub fn is_canonical(&self) -> bool {
        self.center == Point::ORIGIN && self.phi == 0.0
    }
}

/// Fully resolved job.
#[derive(Debug, Clone)]
pub struct JobConfig {
    pub operation: Operation,
    pub ellipse: EllipseSpec,
    pub point: Option<Point>,
    pub curve: Option<String>,
    pub chain: ChainSpec,
    pub figure: Option<String>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub seed: u64,
    pub tol: Tolerance,
}

pub const DEFAULT_A: &str = "2.5";
pub const DEFAULT_B: &str = "1.5";
pub const DEFAULT_AB: &str = "1";
pub const DEFAULT_R: &str = "2/3";
pub const DEFAULT_K: &str = "0.6";
pub const DEFAULT_N: usize = 10;

/// Command-line values, each overriding the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub a: Option<String>,
    pub b: Option<String>,
    pub cx: Option<String>,
    pub cy: Option<String>,
    pub phi: Option<String>,
    pub point: Option<String>,
    pub curve: Option<String>,
    pub ab: Option<String>,
    pub r: Option<String>,
    pub k: Option<String>,
    pub n: Option<usize>,
    pub figure: Option<String>,
    pub format: Option<String>,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub tol: Option<String>,
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn number(name: &str, text: &str) -> CliResult<Rational> {
    parse_rational(text.trim()).map_err(|e| CliError::Config(format!("--{name}: {e}")))
}

fn pick(name: &str, flag: Option<&String>, file: Option<&Num>, default: &str) -> CliResult<Rational> {
    let text = match (flag, file) {
        (Some(s), _) => s.clone(),
        (None, Some(n)) => n.text(),
        (None, None) => default.to_string(),
    };
    number(name, &text)
}

pub fn parse_point(text: &str) -> CliResult<Point> {
    let mut parts = text.split(',');
    match (parts.next(), parts.next(), parts.next()) {
        (Some(x), Some(y), None) => Ok(Point::new(to_f64(&number("point", x)?), to_f64(&number("point", y)?))),
        _ => Err(CliError::Config(format!("--point expects X,Y, got `{text}`"))),
    }
}

impl JobConfig {
    pub fn resolve(operation: Operation, file: JobFile, cli: Overrides) -> CliResult<JobConfig> {
        if let Some(op) = &file.operation {
            if op != operation.name() {
                return Err(CliError::Config(format!(
                    "config declares operation `{op}` but `{}` was requested",
                    operation.name()
                )));
            }
        }
        let e = &file.ellipse;
        let ellipse = EllipseSpec {
            a: pick("a", cli.a.as_ref(), e.a.as_ref(), DEFAULT_A)?,
            b: pick("b", cli.b.as_ref(), e.b.as_ref(), DEFAULT_B)?,
            center: Point::new(
                to_f64(&pick("cx", cli.cx.as_ref(), e.cx.as_ref(), "0")?),
                to_f64(&pick("cy", cli.cy.as_ref(), e.cy.as_ref(), "0")?),
            ),
            phi: to_f64(&pick("phi", cli.phi.as_ref(), e.phi.as_ref(), "0")?),
        };

        let point = match (&cli.point, &file.point) {
            (Some(s), _) => Some(parse_point(s)?),
            (None, Some(PointInput::Text(s))) => Some(parse_point(s)?),
            (None, Some(PointInput::Pair([x, y]))) => Some(parse_point(&format!("{},{}", x.text(), y.text()))?),
            (None, None) => None,
        };

        let c = &file.chain;
        let chain = ChainSpec::new(
            to_f64(&pick("ab", cli.ab.as_ref(), c.ab.as_ref(), DEFAULT_AB)?),
            to_f64(&pick("r", cli.r.as_ref(), c.r.as_ref(), DEFAULT_R)?),
            to_f64(&pick("k", cli.k.as_ref(), c.k.as_ref(), DEFAULT_K)?),
            cli.n.or(c.n).unwrap_or(DEFAULT_N),
        );
        // an invalid chain is only an error for the operations that use it
        let chain = match (chain, operation) {
            (Ok(spec), _) => spec,
            (Err(err), Operation::Chain) => return Err(err.into()),
            (Err(err), Operation::Figure) if cli.figure.as_deref().or(file.figure.as_deref()) == Some("chain") => {
                return Err(err.into())
            }
            (Err(_), _) => ChainSpec::new(1.0, 2.0 / 3.0, 0.6, DEFAULT_N)?,
        };

        let format = cli.format.as_deref().or(file.format.as_deref()).map(str::parse).transpose()?;
        let tol = match cli.tol.as_ref().map(|s| s.to_string()).or(file.tol.as_ref().map(Num::text)) {
            Some(text) => Tolerance::default().with_rel(to_f64(&number("tol", &text)?))?,
            None => Tolerance::default(),
        };

        Ok(JobConfig {
            operation,
            ellipse,
            point,
            curve: cli.curve.or(file.curve),
            chain,
            figure: cli.figure.or(file.figure),
            format,
            out: cli.out.or(file.out),
            seed: cli.seed.or(file.seed).unwrap_or(ellinv_core::selftest::DEFAULT_SEED),
            tol,
        })
    }
}
