use std::path::Path;

use thiserror::Error;

use crate::engine::{EngineError, ScenarioConfig, Simulation};

/// Version of the scenario document layout understood by this build.
pub const SCHEMA_VERSION: i64 = 1;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("parse error at {location}: {message}")]
    ParseError { location: String, message: String },
    #[error("schema_version {found:?} is not supported (expected {SCHEMA_VERSION})")]
    SchemaVersionMismatch { found: Option<i64> },
    #[error("invalid scenario: {0}")]
    ValidationError(String),
    #[error("cannot serialize scenario: {0}")]
    Serialize(String),
}

impl From<EngineError> for ScenarioError {
    fn from(e: EngineError) -> Self {
        ScenarioError::ValidationError(e.to_string())
    }
}

#[derive(Debug, Clone)]
pub struct LoadedScenario {
    pub config: ScenarioConfig,
    pub warnings: Vec<String>,
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

/// Parses a scenario document without cross-checking it against geometry.
pub fn parse_scenario(text: &str) -> Result<ScenarioConfig, ScenarioError> {
    let mut table: toml::Table =
        text.parse()
            .map_err(|e: toml::de::Error| ScenarioError::ParseError {
                location: e.span().map_or_else(
                    || "document".to_string(),
                    |s| format!("line {}", line_of(text, s.start)),
                ),
                message: e.message().to_string(),
            })?;
    match table.remove("schema_version") {
        Some(toml::Value::Integer(SCHEMA_VERSION)) => {}
        Some(toml::Value::Integer(v)) => {
            return Err(ScenarioError::SchemaVersionMismatch { found: Some(v) })
        }
        _ => return Err(ScenarioError::SchemaVersionMismatch { found: None }),
    }
    serde_path_to_error::deserialize(toml::Value::Table(table)).map_err(|e| {
        let location = e.path().to_string();
        let message = e.inner().to_string();
        // Closed enums (activities, masks, statuses, ...) are a validation
        // matter, not a document-shape one.
        if message.contains("unknown variant") {
            ScenarioError::ValidationError(format!("{location}: {message}"))
        } else {
            ScenarioError::ParseError { location, message }
        }
    })
}

/// Parses and fully validates a scenario: structure, physics, geometry,
/// graph construction and every schedule against the graph.
pub fn check_scenario(text: &str) -> Result<LoadedScenario, ScenarioError> {
    let config = parse_scenario(text)?;
    let sim = Simulation::new(config.clone())?;
    Ok(LoadedScenario {
        config,
        warnings: sim.warnings().to_vec(),
    })
}

pub fn load_scenario(path: &Path) -> Result<LoadedScenario, ScenarioError> {
    let text = std::fs::read_to_string(path).map_err(|source| ScenarioError::Read {
        path: path.display().to_string(),
        source,
    })?;
    check_scenario(&text)
}

/// Emits `config` as a scenario document that loads back to the same value.
pub fn scenario_to_document(config: &ScenarioConfig) -> Result<String, ScenarioError> {
    if config.seed > i64::MAX as u64 {
        return Err(ScenarioError::Serialize(format!(
            "seed {} does not fit a document integer",
            config.seed
        )));
    }
    let body = toml::to_string(config).map_err(|e| ScenarioError::Serialize(e.to_string()))?;
    Ok(format!("schema_version = {SCHEMA_VERSION}\n{body}"))
}
