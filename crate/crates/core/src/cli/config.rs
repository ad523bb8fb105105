//! Run configuration: JSON config files, `--params k=v` overrides, and the
//! built-in named densities and viability predicates.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use super::CliError;
use crate::domain::Domain;
use crate::samplers::{CvtConfig, FpConfig, LhsConfig, Method};

pub const RUN_CONFIG_SCHEMA_VERSION: u32 = 1;

/// Names accepted by `--density`.
pub const DENSITIES: &[&str] = &["gauss-center"];
/// Names accepted by `--viability`.
pub const VIABILITIES: &[&str] = &["parabola-above", "parabola-below"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainSpec {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

/// A complete `generate` run as a JSON document.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct RunConfigFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema_version: Option<u32>,
    pub algorithm: String,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<DomainSpec>,
    /// Algorithm parameters; anything missing takes the benchmark default.
    #[serde(default, skip_serializing_if = "Map::is_empty")]
    pub params: Map<String, Value>,
    #[serde(default)]
    pub latinize: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub density: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub viability: Option<String>,
}

impl RunConfigFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| CliError::usage(format!("config: {e}")))?;
        if let Some(v) = cfg.schema_version {
            if v != RUN_CONFIG_SCHEMA_VERSION {
                return Err(CliError::usage(format!("config: unsupported schemaVersion {v}")));
            }
        }
        Ok(cfg)
    }
}

/// Canonical serde tag for an algorithm name given on the command line.
pub fn canonical_algorithm(name: &str) -> Result<&'static str, CliError> {
    Ok(match name {
        "random" => "random",
        "grid" => "grid",
        "lhs-basic" | "lhs" => "lhs-basic",
        "lhs-maximin" => "lhs-maximin",
        "cvt" => "cvt",
        "poisson" | "poisson-disk" => "poisson",
        "greedy-fp" | "greedyfp" => "greedy-fp",
        "bc" | "best-candidate" => "best-candidate",
        "hybrid" => "hybrid",
        other => return Err(CliError::usage(format!("unknown algorithm {other:?}"))),
    })
}

/// Defaults used when a parameter is not given. Grid without `bins` uses
/// `round(n^(1/d))` bins per dimension.
fn default_params(tag: &str, dim: usize, n: usize) -> Value {
    match tag {
        "grid" => {
            let b = ((n as f64).powf(1.0 / dim.max(1) as f64).round() as usize).max(1);
            serde_json::json!({ "bins": vec![b; dim] })
        }
        "lhs-maximin" => serde_json::to_value(LhsConfig::default()).expect("serializable"),
        "cvt" => serde_json::to_value(CvtConfig::default()).expect("serializable"),
        "poisson" => serde_json::json!({ "ncand": 30 }),
        "greedy-fp" => serde_json::to_value(FpConfig::greedy(10)).expect("serializable"),
        "best-candidate" => serde_json::to_value(FpConfig::best_candidate(250)).expect("serializable"),
        "hybrid" => serde_json::to_value(FpConfig::hybrid(10, 100)).expect("serializable"),
        _ => serde_json::json!({}),
    }
}

fn camel_case(key: &str) -> String {
    let mut out = String::with_capacity(key.len());
    let mut upper = false;
    for c in key.chars() {
        if c == '_' || c == '-' {
            upper = true;
        } else if upper {
            out.extend(c.to_uppercase());
            upper = false;
        } else {
            out.push(c);
        }
    }
    out
}

fn param_key(tag: &str, key: &str) -> String {
    match (tag, key) {
        ("best-candidate", "ncand") => "nCandFixed".into(),
        ("poisson", "r") => "radius".into(),
        _ => camel_case(key),
    }
}

/// Parses `k=v`; the value is read as JSON when possible, else as a string.
pub fn parse_param(text: &str) -> Result<(String, Value), CliError> {
    let (k, v) = text
        .split_once('=')
        .ok_or_else(|| CliError::usage(format!("--params expects key=value, got {text:?}")))?;
    let k = k.trim();
    if k.is_empty() {
        return Err(CliError::usage(format!("empty parameter name in {text:?}")));
    }
    let v = v.trim();
    let value = serde_json::from_str(v).unwrap_or_else(|_| Value::String(v.to_string()));
    Ok((k.to_string(), value))
}

/// Builds a method from its name and parameters layered over the defaults.
pub fn build_method(algorithm: &str, dim: usize, n: usize, params: &Map<String, Value>) -> Result<Method, CliError> {
    let tag = canonical_algorithm(algorithm)?;
    if tag == "random" && !params.is_empty() {
        let keys: Vec<&str> = params.keys().map(String::as_str).collect();
        return Err(CliError::usage(format!("random takes no parameters, got {keys:?}")));
    }
    let mut obj = match default_params(tag, dim, n) {
        Value::Object(m) => m,
        _ => unreachable!("defaults are objects"),
    };
    let mut explicit_fixed = false;
    for (k, v) in params {
        let key = param_key(tag, k);
        explicit_fixed |= key == "nCandFixed";
        obj.insert(key, v.clone());
    }
    // A scaled best-candidate request replaces the fixed default batch.
    if tag == "best-candidate" && !explicit_fixed && (params.keys().any(|k| param_key(tag, k) == "scale" || param_key(tag, k) == "maxCand")) {
        obj.insert("nCandFixed".into(), Value::Null);
    }
    if tag == "poisson" && !obj.contains_key("radius") {
        return Err(CliError::usage("poisson requires --params radius=<r>"));
    }
    obj.insert("algorithm".into(), Value::String(tag.into()));
    serde_json::from_value(Value::Object(obj)).map_err(|e| CliError::usage(format!("{tag} parameters: {e}")))
}

/// Box domain, with the named density and viability attached. Built-ins are
/// expressed in unit coordinates of the box.
pub fn build_domain(
    dim: usize,
    bounds: Option<(Vec<f64>, Vec<f64>)>,
    density: Option<&str>,
    viability: Option<&str>,
) -> Result<Domain, CliError> {
    if dim == 0 {
        return Err(CliError::usage("dimension must be at least 1"));
    }
    let mut domain = match bounds {
        None => Domain::unit(dim),
        Some((lo, hi)) => {
            if lo.len() != dim || hi.len() != dim {
                return Err(CliError::usage(format!("domain bounds must have {dim} entries")));
            }
            Domain::new(lo, hi).map_err(CliError::from)?
        }
    };
    let lo = domain.lower().to_vec();
    let width: Vec<f64> = (0..dim).map(|k| domain.width(k)).collect();
    let unit = move |p: &[f64], k: usize| (p[k] - lo[k]) / width[k];
    if let Some(name) = density {
        let u = unit.clone();
        domain = match name {
            // Peak 1 at the centre of the box.
            "gauss-center" => domain.with_density(
                move |p| {
                    let r2: f64 = (0..p.len()).map(|k| (u(p, k) - 0.5).powi(2)).sum();
                    (-20.0 * r2).exp()
                },
                1.0,
            )?,
            other => return Err(CliError::usage(format!("unknown density {other:?}; known: {DENSITIES:?}"))),
        };
    }
    if let Some(name) = viability {
        if dim < 2 {
            return Err(CliError::usage(format!("viability {name} needs at least 2 dimensions")));
        }
        let above = match name {
            "parabola-above" => true,
            "parabola-below" => false,
            other => {
                return Err(CliError::usage(format!(
                    "unknown viability {other:?}; known: {VIABILITIES:?}"
                )))
            }
        };
        let u = unit;
        domain = domain.with_viability(move |p| {
            let curve = 3.0 * (u(p, 0) - 0.5).powi(2);
            if above {
                u(p, 1) >= curve
            } else {
                u(p, 1) <= curve
            }
        });
    }
    Ok(domain)
}
