use std::path::Path;

use glsm_core::graphs::{DualGraph, LocGraph};
use glsm_core::algebra::{parse_rat, BigRat};
use glsm_core::model::{GlsmModel, ModelError, ModelSpec, Phase};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed config: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid config: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Truncations {
    #[serde(default = "default_q")]
    pub q_max: u32,
    #[serde(default = "default_y")]
    pub y_max: usize,
    #[serde(default = "default_z")]
    pub z_cap: usize,
}

fn default_q() -> u32 {
    8
}
fn default_y() -> usize {
    6
}
fn default_z() -> usize {
    12
}

impl Default for Truncations {
    fn default() -> Self {
        Truncations { q_max: default_q(), y_max: default_y(), z_cap: default_z() }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    pub genus: u32,
    pub degree: u32,
    pub special_points: u32,
    #[serde(default)]
    pub basepoints: Vec<u32>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnumSpec {
    pub g: u32,
    pub n: u32,
    pub beta: u32,
    pub delta: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeSpec {
    pub delta: u32,
    pub beta: u32,
    #[serde(default)]
    pub unstable_vertex: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InsertionSpec {
    /// One of `1`, `H`, `0`, `inf`.
    pub class: String,
    #[serde(default)]
    pub psi: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct P1Spec {
    pub delta: u32,
    pub insertions: Vec<InsertionSpec>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default = "default_model")]
    pub model: ModelSpec,
    #[serde(default)]
    pub truncations: Truncations,
    #[serde(default)]
    pub twisted: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon_2: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<DualGraph>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph_b: Option<DualGraph>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub loc_graph: Option<LocGraph>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta_vec: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<ComponentSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub light_delta: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enumerate: Option<EnumSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge: Option<EdgeSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p1: Option<P1Spec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_chain: Option<usize>,
}

fn default_model() -> ModelSpec {
    ModelSpec { weights: vec![1; 5], n: 1, d: 5, phase: Phase::Lg, epsilon: "2/5".into() }
}

impl Default for RunConfig {
    fn default() -> Self {
        serde_json::from_str("{}").expect("empty config parses")
    }
}

impl RunConfig {
    /// Graph fields may hold a path, relative to the config file, instead of an inline graph.
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| ConfigError::Io { path: path.display().to_string(), source })?;
        let mut raw: serde_json::Value = serde_json::from_str(&text)?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        for key in ["graph", "graph_b", "loc_graph"] {
            if let Some(serde_json::Value::String(file)) = raw.get(key) {
                let p = base.join(file);
                let inner = std::fs::read_to_string(&p)
                    .map_err(|source| ConfigError::Io { path: p.display().to_string(), source })?;
                raw[key] = serde_json::from_str(&inner)?;
            }
        }
        let cfg: RunConfig = serde_json::from_value(raw)?;
        match GlsmModel::from_spec(&cfg.model) {
            Ok(_) | Err(ModelError::OnWall(_)) => {}
            Err(e) => return Err(ConfigError::Invalid(e.to_string())),
        }
        if cfg.truncations.q_max == 0 || cfg.truncations.y_max == 0 || cfg.truncations.z_cap == 0 {
            return Err(ConfigError::Invalid("truncation caps must be positive".into()));
        }
        Ok(cfg)
    }

    /// The stability parameter alone; graph commands accept values on a wall.
    pub fn epsilon(&self) -> Result<BigRat, ConfigError> {
        parse_rat(&self.model.epsilon).map_err(|e| ConfigError::Invalid(e.to_string()))
    }

    pub fn model(&self) -> Result<GlsmModel, ConfigError> {
        GlsmModel::from_spec(&self.model).map_err(|e| ConfigError::Invalid(e.to_string()))
    }
}
