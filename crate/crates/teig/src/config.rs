//! Scan configuration: defaults, config-file parsing, and invariant
//! validation shared by the CLI subcommands.
//!
//! Options resolve in three layers: built-in defaults, then a flat
//! `key = value` config file, then command-line flags. Flags win. Unknown
//! config keys are rejected.

use crate::geometry::{BoundaryCurve, GeometryError};
use crate::schur::EtaPolicy;
use std::collections::HashMap;
use std::path::{Path, PathBuf};
use thiserror::Error;

pub const DEFAULT_MU: f64 = 16.0;
pub const DEFAULT_N: usize = 32;
pub const DEFAULT_M: usize = 64;
pub const DEFAULT_RADIUS: f64 = 1e-3;
pub const DEFAULT_GRADING: f64 = 3.0;
pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_DISK_RADIUS: f64 = 0.5;
pub const DEFAULT_ORACLE_MAX_ORDER: usize = 8;
pub const DEFAULT_ORACLE_TOL: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("unknown config key `{0}`")]
    UnknownKey(String),
    #[error("invalid value `{value}` for `{key}`")]
    InvalidValue { key: String, value: String },
    #[error("missing required option `{0}`")]
    Missing(&'static str),
    #[error("option `{key}` violates an invariant: {reason}")]
    Invariant { key: &'static str, reason: String },
    #[error("cannot read config file: {0}")]
    Io(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Test-domain selector exposed on the CLI.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    Disk,
    Peanut,
    Square,
    Triangle,
    Lshape,
    Pentagon,
}

impl Shape {
    pub fn parse(s: &str) -> Option<Shape> {
        match s.trim().to_ascii_lowercase().as_str() {
            "disk" => Some(Shape::Disk),
            "peanut" => Some(Shape::Peanut),
            "square" => Some(Shape::Square),
            "triangle" => Some(Shape::Triangle),
            "lshape" => Some(Shape::Lshape),
            "pentagon" => Some(Shape::Pentagon),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Shape::Disk => "disk",
            Shape::Peanut => "peanut",
            Shape::Square => "square",
            Shape::Triangle => "triangle",
            Shape::Lshape => "lshape",
            Shape::Pentagon => "pentagon",
        }
    }

    pub fn curve(&self, grading: f64, disk_radius: f64) -> Result<BoundaryCurve, GeometryError> {
        match self {
            Shape::Disk => BoundaryCurve::disk(disk_radius),
            Shape::Peanut => Ok(BoundaryCurve::peanut()),
            Shape::Square => BoundaryCurve::square(grading),
            Shape::Triangle => BoundaryCurve::triangle(grading),
            Shape::Lshape => BoundaryCurve::lshape(grading),
            Shape::Pentagon => BoundaryCurve::pentagon(grading),
        }
    }
}

/// Complex scan window: point counts are cells per axis, like the interval
/// subdivisions.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Window {
    pub re: (f64, f64),
    pub im: (f64, f64),
    pub n_re: usize,
    pub n_im: usize,
}

/// Unresolved options; `None` means "not specified at this layer".
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RawOptions {
    pub shape: Option<String>,
    pub mu: Option<f64>,
    pub interval: Option<(f64, f64)>,
    pub subdivisions: Option<usize>,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub radius: Option<f64>,
    pub eta: Option<String>,
    pub grading: Option<f64>,
    pub seed: Option<u64>,
    pub window: Option<Window>,
    pub output: Option<PathBuf>,
    pub workers: Option<usize>,
    pub disk_radius: Option<f64>,
}

impl RawOptions {
    /// Parse a flat `key = value` file. `#` starts a comment; keys use the
    /// flag spellings.
    pub fn from_file(path: &Path) -> Result<RawOptions, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io(e.to_string()))?;
        Self::from_str_contents(&text)
    }

    pub fn from_str_contents(text: &str) -> Result<RawOptions, ConfigError> {
        let mut map: HashMap<String, String> = HashMap::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| ConfigError::InvalidValue {
                key: line.to_string(),
                value: "expected `key = value`".into(),
            })?;
            map.insert(key.trim().to_string(), value.trim().to_string());
        }

        let mut opts = RawOptions::default();
        for (key, value) in map {
            match key.as_str() {
                "shape" => opts.shape = Some(value),
                "mu" => opts.mu = Some(parse_num(&key, &value)?),
                "interval" => {
                    let parts = parse_list(&key, &value, 2)?;
                    opts.interval = Some((parts[0], parts[1]));
                }
                "subdivisions" => opts.subdivisions = Some(parse_num(&key, &value)?),
                "n" => opts.n = Some(parse_num(&key, &value)?),
                "m" => opts.m = Some(parse_num(&key, &value)?),
                "radius" => opts.radius = Some(parse_num(&key, &value)?),
                "eta" => opts.eta = Some(value),
                "grading" => opts.grading = Some(parse_num(&key, &value)?),
                "seed" => opts.seed = Some(parse_num(&key, &value)?),
                "window" => {
                    let parts = parse_list(&key, &value, 6)?;
                    opts.window = Some(window_from_parts(&parts)?);
                }
                "output" => opts.output = Some(PathBuf::from(value)),
                "workers" => opts.workers = Some(parse_num(&key, &value)?),
                "disk-radius" => opts.disk_radius = Some(parse_num(&key, &value)?),
                other => return Err(ConfigError::UnknownKey(other.to_string())),
            }
        }
        Ok(opts)
    }

    /// Layer `over` on top of `self`; values in `over` win.
    pub fn overlay(mut self, over: RawOptions) -> RawOptions {
        macro_rules! take {
            ($field:ident) => {
                if over.$field.is_some() {
                    self.$field = over.$field;
                }
            };
        }
        take!(shape);
        take!(mu);
        take!(interval);
        take!(subdivisions);
        take!(n);
        take!(m);
        take!(radius);
        take!(eta);
        take!(grading);
        take!(seed);
        take!(window);
        take!(output);
        take!(workers);
        take!(disk_radius);
        self
    }

    pub fn resolve_interval_scan(&self) -> Result<ScanSettings, ConfigError> {
        let mut s = self.resolve_common()?;
        let interval = self.interval.ok_or(ConfigError::Missing("interval"))?;
        validate_interval(interval)?;
        s.interval = Some(interval);
        s.subdivisions = self.subdivisions.ok_or(ConfigError::Missing("subdivisions"))?;
        if s.subdivisions == 0 {
            return Err(ConfigError::Invariant {
                key: "subdivisions",
                reason: "must be at least 1".into(),
            });
        }
        Ok(s)
    }

    pub fn resolve_complex_scan(&self) -> Result<ScanSettings, ConfigError> {
        let mut s = self.resolve_common()?;
        let window = self.window.ok_or(ConfigError::Missing("window"))?;
        validate_window(&window)?;
        s.window = Some(window);
        Ok(s)
    }

    fn resolve_common(&self) -> Result<ScanSettings, ConfigError> {
        let shape_str = self.shape.as_ref().ok_or(ConfigError::Missing("shape"))?;
        let shape = Shape::parse(shape_str).ok_or_else(|| ConfigError::InvalidValue {
            key: "shape".into(),
            value: shape_str.clone(),
        })?;
        let mu = self.mu.unwrap_or(DEFAULT_MU);
        if !(mu > 1.0) {
            return Err(ConfigError::Invariant {
                key: "mu",
                reason: format!("{mu} must exceed 1"),
            });
        }
        let n = self.n.unwrap_or(DEFAULT_N);
        if n < 4 {
            return Err(ConfigError::Invariant {
                key: "n",
                reason: format!("{n} is below the minimum of 4"),
            });
        }
        let m = self.m.unwrap_or(DEFAULT_M);
        if m == 0 {
            return Err(ConfigError::Invariant {
                key: "m",
                reason: "must be at least 1".into(),
            });
        }
        let radius = self.radius.unwrap_or(DEFAULT_RADIUS);
        if !(radius > 0.0 && radius <= 0.05) {
            return Err(ConfigError::Invariant {
                key: "radius",
                reason: format!("{radius} outside (0, 0.05]"),
            });
        }
        let eta = match self.eta.as_deref() {
            None => EtaPolicy::Auto,
            Some(text) => parse_eta(text)?,
        };
        let grading = self.grading.unwrap_or(DEFAULT_GRADING);
        if grading < 2.0 {
            return Err(ConfigError::Invariant {
                key: "grading",
                reason: format!("{grading} must be at least 2"),
            });
        }
        let disk_radius = self.disk_radius.unwrap_or(DEFAULT_DISK_RADIUS);
        if !(disk_radius > 0.0) {
            return Err(ConfigError::Invariant {
                key: "disk-radius",
                reason: format!("{disk_radius} must be positive"),
            });
        }
        Ok(ScanSettings {
            shape,
            mu,
            interval: None,
            // interval scans overwrite this; complex scans carry their cell
            // counts in the window
            subdivisions: self.subdivisions.unwrap_or(1),
            n,
            m,
            radius,
            eta,
            grading,
            seed: self.seed.unwrap_or(DEFAULT_SEED),
            window: None,
            output: self.output.clone().unwrap_or_else(|| PathBuf::from("scan.csv")),
            workers: self.workers.unwrap_or(0),
            disk_radius,
        })
    }
}

/// Fully resolved and validated scan configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanSettings {
    pub shape: Shape,
    pub mu: f64,
    pub interval: Option<(f64, f64)>,
    pub subdivisions: usize,
    pub n: usize,
    pub m: usize,
    pub radius: f64,
    pub eta: EtaPolicy,
    pub grading: f64,
    pub seed: u64,
    pub window: Option<Window>,
    pub output: PathBuf,
    pub workers: usize,
    pub disk_radius: f64,
}

fn parse_eta(text: &str) -> Result<EtaPolicy, ConfigError> {
    if text.trim().eq_ignore_ascii_case("auto") {
        return Ok(EtaPolicy::Auto);
    }
    let value: f64 = text.trim().parse().map_err(|_| ConfigError::InvalidValue {
        key: "eta".into(),
        value: text.into(),
    })?;
    if !(0.0..1.0).contains(&value) {
        return Err(ConfigError::Invariant {
            key: "eta",
            reason: format!("{value} outside [0, 1)"),
        });
    }
    Ok(EtaPolicy::Fixed(value))
}

pub fn window_from_parts(parts: &[f64]) -> Result<Window, ConfigError> {
    let take_count = |v: f64, key: &'static str| -> Result<usize, ConfigError> {
        if v.fract() != 0.0 || v < 1.0 {
            return Err(ConfigError::Invariant {
                key,
                reason: format!("{v} must be a positive integer"),
            });
        }
        Ok(v as usize)
    };
    Ok(Window {
        re: (parts[0], parts[1]),
        im: (parts[2], parts[3]),
        n_re: take_count(parts[4], "window NRE")?,
        n_im: take_count(parts[5], "window NIM")?,
    })
}

fn validate_interval((a, b): (f64, f64)) -> Result<(), ConfigError> {
    if !(0.0 < a && a < b) {
        return Err(ConfigError::Invariant {
            key: "interval",
            reason: format!("({a}, {b}) must satisfy 0 < a < b"),
        });
    }
    Ok(())
}

fn validate_window(w: &Window) -> Result<(), ConfigError> {
    if !(w.re.0 < w.re.1) || !(w.im.0 < w.im.1) {
        return Err(ConfigError::Invariant {
            key: "window",
            reason: "ranges must be increasing".into(),
        });
    }
    if w.re.0 <= 0.0 && w.im.0 <= 0.0 && w.im.1 >= 0.0 {
        return Err(ConfigError::Invariant {
            key: "window",
            reason: "grid touches the branch cut (-inf, 0]".into(),
        });
    }
    Ok(())
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, ConfigError> {
    value.trim().parse().map_err(|_| ConfigError::InvalidValue {
        key: key.to_string(),
        value: value.to_string(),
    })
}

fn parse_list(key: &str, value: &str, count: usize) -> Result<Vec<f64>, ConfigError> {
    let parts: Vec<f64> = value
        .split([' ', ',', '\t'])
        .filter(|p| !p.is_empty())
        .map(|p| parse_num(key, p))
        .collect::<Result<_, _>>()?;
    if parts.len() != count {
        return Err(ConfigError::InvalidValue {
            key: key.to_string(),
            value: format!("{value} (expected {count} numbers)"),
        });
    }
    Ok(parts)
}

/// Settings for the `disk-oracle` subcommand.
#[derive(Clone, Debug, PartialEq)]
pub struct OracleSettings {
    pub mu: f64,
    pub disk_radius: f64,
    pub interval: (f64, f64),
    pub m_max: usize,
    pub output: PathBuf,
}
