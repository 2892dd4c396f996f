use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use fedvr::{KernelSpec, Potential, TabulatedPotential, TAN_DELTA_MORSE, TAN_DELTA_WOODS_SAXON};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("cannot read config file {path}: {reason}")]
    File { path: String, reason: String },
    #[error("config line {line}: expected key=value, got {text:?}")]
    Syntax { line: usize, text: String },
    #[error("unknown config key {0:?}")]
    UnknownKey(String),
    #[error("invalid value {value:?} for {key}: {reason}")]
    Value {
        key: &'static str,
        value: String,
        reason: String,
    },
    #[error("missing {0}")]
    Missing(&'static str),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Fedvr,
    Numerov,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Fedvr => "fedvr",
            Method::Numerov => "numerov",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PotentialChoice {
    Morse,
    WoodsSaxon,
    Free,
    Table(PathBuf),
}

impl PotentialChoice {
    pub fn build(&self) -> Result<Potential, ConfigError> {
        Ok(match self {
            PotentialChoice::Morse => Potential::morse(),
            PotentialChoice::WoodsSaxon => Potential::woods_saxon(),
            PotentialChoice::Free => Potential::Free,
            PotentialChoice::Table(path) => {
                let table =
                    TabulatedPotential::from_path(path).map_err(|e| ConfigError::Value {
                        key: "potential",
                        value: path.display().to_string(),
                        reason: e.to_string(),
                    })?;
                Potential::Tabulated(std::sync::Arc::new(table))
            }
        })
    }

    fn default_r_max(&self) -> Option<f64> {
        match self {
            PotentialChoice::Morse => Some(100.0),
            PotentialChoice::WoodsSaxon | PotentialChoice::Free => Some(20.0),
            PotentialChoice::Table(_) => None,
        }
    }

    /// Reference `tan(delta)` known at k = 0.5 on the default ranges.
    fn default_reference(&self, k: f64, r_max: f64) -> Option<f64> {
        match self {
            PotentialChoice::Morse if k == 0.5 && r_max == 100.0 => Some(TAN_DELTA_MORSE),
            PotentialChoice::WoodsSaxon if k == 0.5 && r_max == 20.0 => Some(TAN_DELTA_WOODS_SAXON),
            PotentialChoice::Free => Some(0.0),
            _ => None,
        }
    }
}

impl fmt::Display for PotentialChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PotentialChoice::Morse => f.write_str("morse"),
            PotentialChoice::WoodsSaxon => f.write_str("woods_saxon"),
            PotentialChoice::Free => f.write_str("free"),
            PotentialChoice::Table(p) => write!(f, "table:{}", p.display()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelChoice {
    /// `K(r, r') = h((r + r') / 2) exp(-((r - r') / beta)^2) / (beta sqrt(pi))` with `h` the
    /// selected potential.
    Gaussian { beta: f64 },
}

impl KernelChoice {
    pub fn build(&self, shape: Potential) -> Result<KernelSpec, ConfigError> {
        match *self {
            KernelChoice::Gaussian { beta } => {
                KernelSpec::gaussian(1.0, beta, shape).map_err(|e| ConfigError::Value {
                    key: "beta",
                    value: beta.to_string(),
                    reason: e.to_string(),
                })
            }
        }
    }
}

pub const DEFAULT_K: f64 = 0.5;
pub const DEFAULT_BETA: f64 = 0.85;
pub const DEFAULT_FLOP_TIME: f64 = 1.5e-8;

/// Settings as read from flags or a key=value file; every field optional.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RawConfig {
    pub method: Option<String>,
    pub potential: Option<String>,
    pub k: Option<String>,
    pub rmax: Option<String>,
    pub plen: Option<String>,
    pub n: Option<String>,
    pub points: Option<String>,
    pub kernel: Option<String>,
    pub beta: Option<String>,
    pub out: Option<String>,
    pub reference: Option<String>,
    pub flop_time: Option<String>,
}

impl RawConfig {
    /// Parse `key = value` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut out = RawConfig::default();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| ConfigError::Syntax {
                line: i + 1,
                text: line.to_string(),
            })?;
            let value = Some(value.trim().to_string());
            match key.trim().replace('-', "_").as_str() {
                "method" => out.method = value,
                "potential" => out.potential = value,
                "k" => out.k = value,
                "rmax" | "r_max" => out.rmax = value,
                "plen" => out.plen = value,
                "n" => out.n = value,
                "points" => out.points = value,
                "kernel" => out.kernel = value,
                "beta" => out.beta = value,
                "out" => out.out = value,
                "reference" => out.reference = value,
                "flop_time" => out.flop_time = value,
                other => return Err(ConfigError::UnknownKey(other.to_string())),
            }
        }
        Ok(out)
    }

    pub fn from_path(path: &str) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::File {
            path: path.to_string(),
            reason: e.to_string(),
        })?;
        Self::parse(&text)
    }

    /// Fields set in `other` win.
    pub fn overridden_by(self, other: RawConfig) -> RawConfig {
        RawConfig {
            method: other.method.or(self.method),
            potential: other.potential.or(self.potential),
            k: other.k.or(self.k),
            rmax: other.rmax.or(self.rmax),
            plen: other.plen.or(self.plen),
            n: other.n.or(self.n),
            points: other.points.or(self.points),
            kernel: other.kernel.or(self.kernel),
            beta: other.beta.or(self.beta),
            out: other.out.or(self.out),
            reference: other.reference.or(self.reference),
            flop_time: other.flop_time.or(self.flop_time),
        }
    }
}

/// Validated run settings.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub method: Option<Method>,
    pub potential: PotentialChoice,
    pub kernel: Option<KernelChoice>,
    pub k: f64,
    pub r_max: f64,
    pub plen: Vec<f64>,
    pub n: Vec<usize>,
    pub points: Vec<usize>,
    pub out: Option<PathBuf>,
    pub reference: Option<f64>,
    pub flop_time: f64,
}

fn parse_f64(key: &'static str, value: &str) -> Result<f64, ConfigError> {
    value.trim().parse::<f64>().map_err(|e| ConfigError::Value {
        key,
        value: value.to_string(),
        reason: e.to_string(),
    })
}

fn positive(key: &'static str, value: &str) -> Result<f64, ConfigError> {
    let x = parse_f64(key, value)?;
    if !(x > 0.0) || !x.is_finite() {
        return Err(ConfigError::Value {
            key,
            value: value.to_string(),
            reason: "must be positive".into(),
        });
    }
    Ok(x)
}

/// Comma-separated items, each a number or an inclusive `start:end[:step]` range.
pub fn parse_usize_list(key: &'static str, value: &str) -> Result<Vec<usize>, ConfigError> {
    let bad = |reason: &str| ConfigError::Value {
        key,
        value: value.to_string(),
        reason: reason.to_string(),
    };
    let mut out = Vec::new();
    for item in value.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let parts: Vec<&str> = item.split(':').collect();
        let num = |s: &str| s.trim().parse::<usize>().map_err(|e| bad(&e.to_string()));
        match parts.as_slice() {
            [x] => out.push(num(x)?),
            [a, b] | [a, b, _] => {
                let (a, b) = (num(a)?, num(b)?);
                let step = if parts.len() == 3 { num(parts[2])? } else { 1 };
                if step == 0 || b < a {
                    return Err(bad("range needs start <= end and a positive step"));
                }
                out.extend((a..=b).step_by(step));
            }
            _ => return Err(bad("expected n, start:end or start:end:step")),
        }
    }
    if out.is_empty() {
        return Err(bad("empty list"));
    }
    Ok(out)
}

pub fn parse_f64_list(key: &'static str, value: &str) -> Result<Vec<f64>, ConfigError> {
    let out = value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| positive(key, s))
        .collect::<Result<Vec<_>, _>>()?;
    if out.is_empty() {
        return Err(ConfigError::Value {
            key,
            value: value.to_string(),
            reason: "empty list".into(),
        });
    }
    Ok(out)
}

fn parse_potential(value: &str) -> Result<PotentialChoice, ConfigError> {
    let v = value.trim();
    if let Some(path) = v.strip_prefix("table:") {
        return Ok(PotentialChoice::Table(PathBuf::from(path)));
    }
    match v.to_ascii_lowercase().replace('-', "_").as_str() {
        "morse" => Ok(PotentialChoice::Morse),
        "woods_saxon" | "ws" => Ok(PotentialChoice::WoodsSaxon),
        "free" | "none" => Ok(PotentialChoice::Free),
        _ => Err(ConfigError::Value {
            key: "potential",
            value: value.to_string(),
            reason: "expected morse, woods_saxon, free or table:<path>".into(),
        }),
    }
}

impl RunConfig {
    pub fn from_raw(raw: &RawConfig) -> Result<Self, ConfigError> {
        let method = match raw.method.as_deref().map(str::trim) {
            None => None,
            Some("fedvr") => Some(Method::Fedvr),
            Some("numerov") => Some(Method::Numerov),
            Some(other) => {
                return Err(ConfigError::Value {
                    key: "method",
                    value: other.to_string(),
                    reason: "expected fedvr or numerov".into(),
                })
            }
        };
        let potential = match &raw.potential {
            Some(v) => parse_potential(v)?,
            None => PotentialChoice::Morse,
        };
        let k = match &raw.k {
            Some(v) => positive("k", v)?,
            None => DEFAULT_K,
        };
        let r_max = match &raw.rmax {
            Some(v) => positive("rmax", v)?,
            None => potential
                .default_r_max()
                .ok_or(ConfigError::Missing("--rmax"))?,
        };
        let plen = match &raw.plen {
            Some(v) => parse_f64_list("plen", v)?,
            None => vec![1.0],
        };
        let n = match &raw.n {
            Some(v) => parse_usize_list("n", v)?,
            None => Vec::new(),
        };
        if let Some(&bad) = n
            .iter()
            .find(|&&n| n < fedvr::gausslobatto::MIN_SOLVER_ORDER)
        {
            return Err(ConfigError::Value {
                key: "n",
                value: bad.to_string(),
                reason: format!(
                    "the number of Lobatto points per partition must satisfy N >= {}",
                    fedvr::gausslobatto::MIN_SOLVER_ORDER
                ),
            });
        }
        let points = match &raw.points {
            Some(v) => parse_usize_list("points", v)?,
            None => Vec::new(),
        };
        if let Some(&bad) = points.iter().find(|&&p| p < 4) {
            return Err(ConfigError::Value {
                key: "points",
                value: bad.to_string(),
                reason: "Numerov needs at least 4 steps".into(),
            });
        }
        let beta = match &raw.beta {
            Some(v) => positive("beta", v)?,
            None => DEFAULT_BETA,
        };
        let kernel = match raw.kernel.as_deref().map(str::trim) {
            None | Some("none") => None,
            Some("gaussian") => Some(KernelChoice::Gaussian { beta }),
            Some(other) => {
                return Err(ConfigError::Value {
                    key: "kernel",
                    value: other.to_string(),
                    reason: "expected gaussian or none".into(),
                })
            }
        };
        let reference = match &raw.reference {
            Some(v) => Some(parse_f64("reference", v)?),
            None => potential.default_reference(k, r_max),
        };
        let flop_time = match &raw.flop_time {
            Some(v) => positive("flop_time", v)?,
            None => DEFAULT_FLOP_TIME,
        };
        Ok(RunConfig {
            method,
            potential,
            kernel,
            k,
            r_max,
            plen,
            n,
            points,
            out: raw.out.as_ref().map(PathBuf::from),
            reference,
            flop_time,
        })
    }

    pub fn require_method(&self) -> Result<Method, ConfigError> {
        self.method.ok_or(ConfigError::Missing("--method"))
    }

    pub fn require_n(&self) -> Result<&[usize], ConfigError> {
        if self.n.is_empty() {
            return Err(ConfigError::Missing("--n"));
        }
        Ok(&self.n)
    }

    pub fn require_points(&self) -> Result<&[usize], ConfigError> {
        if self.points.is_empty() {
            return Err(ConfigError::Missing("--points"));
        }
        Ok(&self.points)
    }

    /// Key/value pairs describing the run, for report headers.
    pub fn summary(&self) -> BTreeMap<&'static str, String> {
        let mut m = BTreeMap::new();
        if let Some(method) = self.method {
            m.insert("method", method.to_string());
        }
        m.insert("potential", self.potential.to_string());
        m.insert("k", self.k.to_string());
        m.insert("rmax", self.r_max.to_string());
        if let Some(KernelChoice::Gaussian { beta }) = self.kernel {
            m.insert("kernel", format!("gaussian(beta={beta})"));
        }
        if let Some(r) = self.reference {
            m.insert("reference", r.to_string());
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_flags() {
        let file = RawConfig::parse("# scan\nmethod = fedvr\nn = 8:12:2\nk=0.7\n").unwrap();
        let flags = RawConfig {
            k: Some("0.5".into()),
            ..Default::default()
        };
        let cfg = RunConfig::from_raw(&file.overridden_by(flags)).unwrap();
        assert_eq!(cfg.method, Some(Method::Fedvr));
        assert_eq!(cfg.n, vec![8, 10, 12]);
        assert_eq!(cfg.k, 0.5);
        assert_eq!(cfg.r_max, 100.0);
        assert_eq!(cfg.reference, Some(TAN_DELTA_MORSE));
    }

    #[test]
    fn bad_input() {
        assert!(matches!(
            RawConfig::parse("oops"),
            Err(ConfigError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            RawConfig::parse("colour = red"),
            Err(ConfigError::UnknownKey(_))
        ));
        let small = RawConfig {
            n: Some("3".into()),
            ..Default::default()
        };
        let err = RunConfig::from_raw(&small).unwrap_err();
        assert!(err.to_string().contains("N >= 4"), "{err}");
        assert!(parse_usize_list("n", "").is_err());
        assert!(parse_usize_list("n", "12:8").is_err());
        assert_eq!(parse_usize_list("n", "4, 6:8").unwrap(), vec![4, 6, 7, 8]);
    }

    #[test]
    fn potential_names() {
        assert_eq!(
            parse_potential("woods-saxon").unwrap(),
            PotentialChoice::WoodsSaxon
        );
        assert_eq!(
            parse_potential("table:v.dat").unwrap(),
            PotentialChoice::Table("v.dat".into())
        );
        assert!(parse_potential("coulomb").is_err());
        let raw = RawConfig {
            potential: Some("table:v.dat".into()),
            ..Default::default()
        };
        assert_eq!(
            RunConfig::from_raw(&raw),
            Err(ConfigError::Missing("--rmax"))
        );
    }
}
