//! JSON run configuration.
//!
//! ```json
//! {
//!   "model":   { "k": 1, "mu": 1, "lambda": 1, "Q": 0.5, "Q1hat": 0,
//!                "s1": 10, "s2": 0.5, "s3": 0.5, "s4": 10, "alphaR": 0.8 },
//!   "scheme":  { "h": 0.05, "delta": 0.001, "ellm": 10, "alpha_thr": 0.1,
//!                "a_star_lo": 0.4, "a_star_hi": 0.82, "m01": 0.8, "m02": 0.8,
//!                "T_final": 50 },
//!   "initial": { "alpha0": { "constant": 0.8 }, "c0": { "polynomial": [1, 0, -0.5] } },
//!   "output":  { "directory": "out", "snapshots": 10, "plots": true },
//!   "mode": "strict"
//! }
//! ```
//!
//! `scheme.ell0` defaults to 1 and `scheme.rho` to 0.1. Unknown keys are
//! rejected everywhere.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{Map, Value};
use thiserror::Error;
use tumor_core::orchestrator::Mode;
use tumor_core::{Error as ModelError, ModelParams, SchemeConfig};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path} is not valid JSON: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("{key}: {reason}")]
    Invalid { key: String, reason: String },
}

impl ConfigError {
    fn at(key: impl Into<String>, reason: impl Into<String>) -> Self {
        ConfigError::Invalid {
            key: key.into(),
            reason: reason.into(),
        }
    }

    /// Key path of the offending entry, if the error concerns one.
    pub fn key(&self) -> Option<&str> {
        match self {
            ConfigError::Invalid { key, .. } => Some(key),
            _ => None,
        }
    }
}

/// Initial profile on `(0, ell0)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Profile {
    Constant(f64),
    /// Coefficients of `1, x, x^2, ...`.
    Polynomial(Vec<f64>),
}

impl Profile {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Profile::Constant(v) => *v,
            Profile::Polynomial(c) => c.iter().rev().fold(0.0, |acc, &a| acc * x + a),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputOptions {
    pub directory: PathBuf,
    pub snapshots: usize,
    pub plots: bool,
}

impl Default for OutputOptions {
    fn default() -> Self {
        Self {
            directory: PathBuf::from("out"),
            snapshots: 10,
            plots: true,
        }
    }
}

/// Externally published values that the run summary is compared against.
#[derive(Debug, Clone, PartialEq, Serialize, Default)]
pub struct ReferenceValues {
    pub c_cfl: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub model: ModelParams,
    pub scheme: SchemeConfig,
    pub alpha0: Profile,
    pub c0: Profile,
    pub output: OutputOptions,
    pub mode: Mode,
    pub stop_at_horizon: bool,
    pub reference: ReferenceValues,
}

struct Obj<'a> {
    path: String,
    map: &'a Map<String, Value>,
    seen: BTreeSet<&'a str>,
}

impl<'a> Obj<'a> {
    fn new(path: &str, value: &'a Value) -> Result<Self, ConfigError> {
        let map = value
            .as_object()
            .ok_or_else(|| ConfigError::at(display(path), "expected an object"))?;
        Ok(Self {
            path: path.to_string(),
            map,
            seen: BTreeSet::new(),
        })
    }

    fn key(&self, k: &str) -> String {
        if self.path.is_empty() {
            k.to_string()
        } else {
            format!("{}.{k}", self.path)
        }
    }

    fn get(&mut self, k: &'a str) -> Option<&'a Value> {
        self.seen.insert(k);
        self.map.get(k)
    }

    fn required(&mut self, k: &'a str) -> Result<&'a Value, ConfigError> {
        self.get(k).ok_or_else(|| ConfigError::at(self.key(k), "missing"))
    }

    fn number(&mut self, k: &'a str) -> Result<f64, ConfigError> {
        let v = self.required(k)?;
        as_number(v, &self.key(k))
    }

    fn number_or(&mut self, k: &'a str, default: f64) -> Result<f64, ConfigError> {
        match self.get(k) {
            Some(v) => as_number(v, &self.key(k)),
            None => Ok(default),
        }
    }

    fn object(&mut self, k: &'a str) -> Result<Obj<'a>, ConfigError> {
        let key = self.key(k);
        let v = self.required(k)?;
        Obj::new(&key, v)
    }

    fn finish(self) -> Result<(), ConfigError> {
        match self.map.keys().find(|k| !self.seen.contains(k.as_str())) {
            Some(k) => Err(ConfigError::at(self.key(k), "unknown key")),
            None => Ok(()),
        }
    }
}

fn display(path: &str) -> &str {
    if path.is_empty() {
        "<root>"
    } else {
        path
    }
}

fn as_number(v: &Value, key: &str) -> Result<f64, ConfigError> {
    v.as_f64()
        .filter(|x| x.is_finite())
        .ok_or_else(|| ConfigError::at(key, "expected a finite number"))
}

fn profile(v: &Value, key: &str) -> Result<Profile, ConfigError> {
    let mut obj = Obj::new(key, v)?;
    if obj.map.len() != 1 {
        return Err(ConfigError::at(key, "expected exactly one of `constant`, `polynomial`"));
    }
    let p = if let Some(c) = obj.get("constant") {
        Profile::Constant(as_number(c, &obj.key("constant"))?)
    } else if let Some(c) = obj.get("polynomial") {
        let k = obj.key("polynomial");
        let coeffs = c
            .as_array()
            .ok_or_else(|| ConfigError::at(k.clone(), "expected an array of numbers"))?
            .iter()
            .enumerate()
            .map(|(i, x)| as_number(x, &format!("{k}[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        if coeffs.is_empty() {
            return Err(ConfigError::at(k, "needs at least one coefficient"));
        }
        Profile::Polynomial(coeffs)
    } else {
        return Err(ConfigError::at(key, "expected one of `constant`, `polynomial`"));
    };
    obj.finish()?;
    Ok(p)
}

fn model_error(section: &str, e: ModelError) -> ConfigError {
    match e {
        ModelError::InvalidParameter { name, value, reason } => {
            ConfigError::at(format!("{section}.{name}"), format!("{value}: {reason}"))
        }
        ModelError::NonIntegerGrid { name, ratio } => ConfigError::at(
            format!("{section}.{name}"),
            format!("must be a multiple of h (ratio {ratio})"),
        ),
        other => ConfigError::at(section, other.to_string()),
    }
}

pub fn parse_config_str(text: &str, origin: &Path) -> Result<RunConfig, ConfigError> {
    let root: Value = serde_json::from_str(text).map_err(|source| ConfigError::Json {
        path: origin.to_path_buf(),
        source,
    })?;
    let mut top = Obj::new("", &root)?;

    let mut m = top.object("model")?;
    let model = ModelParams {
        k: m.number("k")?,
        mu: m.number("mu")?,
        lambda: m.number("lambda")?,
        q: m.number("Q")?,
        q1hat: m.number("Q1hat")?,
        s1: m.number("s1")?,
        s2: m.number("s2")?,
        s3: m.number("s3")?,
        s4: m.number("s4")?,
        alpha_r: m.number("alphaR")?,
    };
    m.finish()?;
    model.validate().map_err(|e| model_error("model", e))?;

    let mut s = top.object("scheme")?;
    let scheme = SchemeConfig {
        h: s.number("h")?,
        delta: s.number("delta")?,
        ell0: s.number_or("ell0", 1.0)?,
        ellm: s.number("ellm")?,
        alpha_thr: s.number("alpha_thr")?,
        rho: s.number_or("rho", 0.1)?,
        a_star_lo: s.number("a_star_lo")?,
        a_star_hi: s.number("a_star_hi")?,
        m01: s.number("m01")?,
        m02: s.number("m02")?,
        t_final: s.number("T_final")?,
    };
    s.finish()?;
    scheme.validate().map_err(|e| model_error("scheme", e))?;

    let mut init = top.object("initial")?;
    let alpha0 = profile(init.required("alpha0")?, "initial.alpha0")?;
    let c0 = profile(init.required("c0")?, "initial.c0")?;
    init.finish()?;

    let mut output = OutputOptions::default();
    if let Some(v) = top.get("output") {
        let mut o = Obj::new("output", v)?;
        if let Some(d) = o.get("directory") {
            output.directory = d
                .as_str()
                .ok_or_else(|| ConfigError::at("output.directory", "expected a string"))?
                .into();
        }
        if let Some(n) = o.get("snapshots") {
            output.snapshots = n
                .as_u64()
                .filter(|&n| n >= 1)
                .ok_or_else(|| ConfigError::at("output.snapshots", "expected a positive integer"))?
                as usize;
        }
        if let Some(p) = o.get("plots") {
            output.plots = p
                .as_bool()
                .ok_or_else(|| ConfigError::at("output.plots", "expected a boolean"))?;
        }
        o.finish()?;
    }

    let mode = match top.get("mode") {
        None => Mode::Strict,
        Some(v) => match v.as_str() {
            Some("strict") => Mode::Strict,
            Some("forced") => Mode::Forced,
            _ => return Err(ConfigError::at("mode", "expected \"strict\" or \"forced\"")),
        },
    };
    let stop_at_horizon = match top.get("stop_at_horizon") {
        None => false,
        Some(v) => v
            .as_bool()
            .ok_or_else(|| ConfigError::at("stop_at_horizon", "expected a boolean"))?,
    };

    let mut reference = ReferenceValues::default();
    if let Some(v) = top.get("reference") {
        let mut r = Obj::new("reference", v)?;
        if r.map.contains_key("c_cfl") {
            reference.c_cfl = Some(r.number("c_cfl")?);
        }
        r.finish()?;
    }
    top.finish()?;

    Ok(RunConfig {
        model,
        scheme,
        alpha0,
        c0,
        output,
        mode,
        stop_at_horizon,
        reference,
    })
}

pub fn parse_config(path: &Path) -> Result<RunConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config_str(&text, path)
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = r#"{
        "model": {"k": 1, "mu": 1, "lambda": 1, "Q": 0.5, "Q1hat": 0,
                  "s1": 10, "s2": 0.5, "s3": 0.5, "s4": 10, "alphaR": 0.8},
        "scheme": {"h": 0.05, "delta": 0.001, "ellm": 10, "alpha_thr": 0.1,
                   "a_star_lo": 0.4, "a_star_hi": 0.82, "m01": 0.8, "m02": 0.8, "T_final": 50},
        "initial": {"alpha0": {"constant": 0.8}, "c0": {"polynomial": [1, 0, -0.5]}}
    }"#;

    fn parse(text: &str) -> Result<RunConfig, ConfigError> {
        parse_config_str(text, Path::new("test.json"))
    }

    fn edit(f: impl FnOnce(&mut Value)) -> String {
        let mut v: Value = serde_json::from_str(BASE).unwrap();
        f(&mut v);
        v.to_string()
    }

    #[test]
    fn defaults_fill_in() {
        let c = parse(BASE).unwrap();
        assert_eq!(c.scheme.ell0, 1.0);
        assert_eq!(c.scheme.rho, 0.1);
        assert_eq!(c.output.snapshots, 10);
        assert_eq!(c.mode, Mode::Strict);
        assert_eq!(c.model, ModelParams::reference());
        assert_eq!(c.scheme, SchemeConfig::reference());
        assert_eq!(c.c0.eval(1.0), 0.5);
    }

    #[test]
    fn missing_key_is_named() {
        let text = edit(|v| {
            v["model"].as_object_mut().unwrap().remove("mu");
        });
        assert_eq!(parse(&text).unwrap_err().key(), Some("model.mu"));
    }

    #[test]
    fn out_of_range_threshold() {
        let text = edit(|v| v["scheme"]["alpha_thr"] = 1.5.into());
        assert_eq!(parse(&text).unwrap_err().key(), Some("scheme.alpha_thr"));
    }

    #[test]
    fn unknown_keys_rejected() {
        let text = edit(|v| v["scheme"]["dt"] = 1.0.into());
        assert_eq!(parse(&text).unwrap_err().key(), Some("scheme.dt"));
        let text = edit(|v| v["extra"] = true.into());
        assert_eq!(parse(&text).unwrap_err().key(), Some("extra"));
        let text = edit(|v| v["initial"]["alpha0"]["constant_value"] = 0.8.into());
        assert_eq!(parse(&text).unwrap_err().key(), Some("initial.alpha0"));
    }

    #[test]
    fn misaligned_grid() {
        let text = edit(|v| v["scheme"]["ellm"] = 10.01.into());
        assert_eq!(parse(&text).unwrap_err().key(), Some("scheme.ellm"));
    }

    #[test]
    fn mode_and_reference() {
        let text = edit(|v| {
            v["mode"] = "forced".into();
            v["reference"] = serde_json::json!({"c_cfl": 0.0361});
        });
        let c = parse(&text).unwrap();
        assert_eq!(c.mode, Mode::Forced);
        assert_eq!(c.reference.c_cfl, Some(0.0361));
        let text = edit(|v| v["mode"] = "lenient".into());
        assert_eq!(parse(&text).unwrap_err().key(), Some("mode"));
    }
}
