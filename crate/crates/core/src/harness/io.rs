use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::scenariogen::{GenConfig, Scenario};

use super::score::PredictionRecord;

pub const SCHEMA_VERSION: u32 = 1;

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// One compact JSON object per line, `\n` terminated.
pub fn to_jsonl<T: Serialize>(records: &[T]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("records serialize"));
        out.push('\n');
    }
    out
}

pub fn parse_jsonl<T: DeserializeOwned>(text: &str, path: &str) -> Result<Vec<T>> {
    text.lines()
        .enumerate()
        .map(|(i, line)| {
            if line.trim().is_empty() {
                return Err(Error::Malformed {
                    path: path.into(),
                    line: i + 1,
                    message: "empty line".into(),
                });
            }
            serde_json::from_str(line).map_err(|e| Error::Malformed {
                path: path.into(),
                line: i + 1,
                message: e.to_string(),
            })
        })
        .collect()
}

pub fn read_text(path: impl AsRef<Path>) -> Result<String> {
    let p = path.as_ref();
    std::fs::read_to_string(p).map_err(|e| Error::io(p, e))
}

pub fn write_text(path: impl AsRef<Path>, text: &str) -> Result<()> {
    let p = path.as_ref();
    std::fs::write(p, text).map_err(|e| Error::io(p, e))
}

pub fn read_dataset(path: impl AsRef<Path>) -> Result<Vec<Scenario>> {
    let p = path.as_ref();
    parse_jsonl(&read_text(p)?, &p.display().to_string())
}

pub fn read_predictions(path: impl AsRef<Path>) -> Result<Vec<PredictionRecord>> {
    let p = path.as_ref();
    parse_jsonl(&read_text(p)?, &p.display().to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumCount {
    pub n_objects: u32,
    pub n_containers: u32,
    pub count: usize,
}

/// TOML sidecar of a dataset file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetManifest {
    pub name: String,
    pub schema_version: u32,
    pub count: usize,
    pub digest: String,
    /// Lexicon TSV the word sets were derived from; bundled when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lexicon: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gibberish_digest: Option<String>,
    pub config: GenConfig,
    /// Per-cell counts of a stratified dataset.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub strata: Vec<StratumCount>,
}

impl DatasetManifest {
    pub fn new(name: impl Into<String>, config: &GenConfig, jsonl: &str) -> Self {
        let strata = if config.stratified {
            let cells = config.strata();
            cells
                .iter()
                .enumerate()
                .map(|(k, (o, c))| StratumCount {
                    n_objects: *o,
                    n_containers: *c,
                    count: config.count / cells.len() + usize::from(k < config.count % cells.len()),
                })
                .collect()
        } else {
            Vec::new()
        };
        DatasetManifest {
            name: name.into(),
            schema_version: SCHEMA_VERSION,
            count: config.count,
            digest: digest(jsonl.as_bytes()),
            lexicon: None,
            gibberish_digest: None,
            config: config.clone(),
            strata,
        }
    }

    pub fn verify(&self, jsonl: &str) -> bool {
        self.digest == digest(jsonl.as_bytes())
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Toml(e.to_string()))
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Toml(e.to_string()))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_toml(&read_text(path)?)
    }
}

/// A generation config from TOML: either a bare config or a full manifest,
/// whose `[config]` table is used.
pub fn load_config(text: &str) -> Result<GenConfig> {
    let table: toml::Table = toml::from_str(text).map_err(|e| Error::Toml(e.to_string()))?;
    let cfg = match table.get("config") {
        Some(toml::Value::Table(t)) => t.clone(),
        _ => table,
    };
    cfg.try_into().map_err(|e: toml::de::Error| Error::Toml(e.to_string()))
}

/// A bare config as TOML, loadable with [`load_config`].
pub fn config_to_toml(cfg: &GenConfig) -> Result<String> {
    toml::to_string(cfg).map_err(|e| Error::Toml(e.to_string()))
}
