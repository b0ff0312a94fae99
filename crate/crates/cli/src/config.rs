use std::path::Path;
use std::str::FromStr;

use adesurf::{BigRational, Kind, SurfaceFamily};
use serde::Deserialize;

use crate::output::{CliError, Format};

/// Settings read from an optional TOML file; command-line flags win.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub family: Option<String>,
    pub n: Option<usize>,
    pub points: Option<Vec<toml::Value>>,
    pub max_degree: Option<i64>,
    pub max_k: Option<usize>,
    pub format: Option<String>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        toml::from_str(&text)
            .map_err(|e| CliError::Input(format!("bad config {}: {e}", path.display())))
    }

    pub fn points(&self) -> Result<Option<Vec<BigRational>>, CliError> {
        let Some(values) = &self.points else {
            return Ok(None);
        };
        values
            .iter()
            .map(|v| match v {
                toml::Value::Integer(i) => Ok(BigRational::from_integer((*i).into())),
                toml::Value::String(s) => parse_rational(s),
                other => Err(CliError::Input(format!("point {other} is not a rational"))),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Some)
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub family: SurfaceFamily,
    pub points: Option<Vec<BigRational>>,
    pub max_degree: i64,
    pub max_k: usize,
}

impl RunConfig {
    pub fn needs_points(&self) -> bool {
        self.family.kind() == Kind::D && self.family.n() >= 3
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational, CliError> {
    let s = s.trim();
    BigRational::from_str(s).map_err(|_| CliError::Input(format!("{s:?} is not a rational number")))
}

pub fn parse_points(s: &str) -> Result<Vec<BigRational>, CliError> {
    s.split(',').map(parse_rational).collect()
}

pub fn parse_format(s: &str) -> Result<Format, CliError> {
    match s {
        "json" => Ok(Format::Json),
        "csv" => Ok(Format::Csv),
        other => Err(CliError::Input(format!("unknown format {other:?}"))),
    }
}

pub fn family(
    kind: Option<Kind>,
    n: Option<usize>,
    file: &FileConfig,
) -> Result<SurfaceFamily, CliError> {
    let kind = match (kind, &file.family) {
        (Some(k), _) => k,
        (None, Some(s)) => s.parse::<Kind>().map_err(CliError::from)?,
        (None, None) => return Err(CliError::Input("--family is required".into())),
    };
    let n = n
        .or(file.n)
        .ok_or_else(|| CliError::Input("--n is required".into()))?;
    Ok(SurfaceFamily::new(kind, n)?)
}

pub fn run_config(
    family: SurfaceFamily,
    points: Option<&str>,
    max_degree: Option<i64>,
    max_k: Option<usize>,
    file: &FileConfig,
) -> Result<RunConfig, CliError> {
    let points = match points {
        Some(s) => Some(parse_points(s)?),
        None => file.points()?,
    };
    let cfg = RunConfig {
        family,
        points,
        max_degree: max_degree.or(file.max_degree).unwrap_or(4),
        max_k: max_k.or(file.max_k).unwrap_or(5),
    };
    if cfg.points.is_some() && !cfg.needs_points() {
        return Err(CliError::Input(format!("{family} takes no base points")));
    }
    if cfg.max_degree < 0 {
        return Err(CliError::Input("--max-degree must be nonnegative".into()));
    }
    Ok(cfg)
}
