//! Config-file loading. A file describes either a single scenario (flat
//! keys) or a sweep (a `[base]` scenario plus `[[axes]]`); the presence of
//! an `axes` key decides which.

use std::path::Path;

use actuation_core::{ScenarioConfig, SweepSpec};

use crate::error::{io_err, CliError, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum ConfigFile {
    Scenario(ScenarioConfig),
    Sweep(SweepSpec),
}

pub fn parse_config(text: &str) -> Result<ConfigFile> {
    let table: toml::Table =
        text.parse().map_err(|e: toml::de::Error| CliError::Parse(e.to_string()))?;
    let is_sweep = table.contains_key("axes");
    let value = toml::Value::Table(table);
    if is_sweep {
        let spec: SweepSpec =
            value.try_into().map_err(|e: toml::de::Error| CliError::Parse(e.to_string()))?;
        spec.validate()?;
        Ok(ConfigFile::Sweep(spec))
    } else {
        let cfg: ScenarioConfig =
            value.try_into().map_err(|e: toml::de::Error| CliError::Parse(e.to_string()))?;
        cfg.validate()?;
        Ok(ConfigFile::Scenario(cfg))
    }
}

pub fn load_config(path: &Path) -> Result<ConfigFile> {
    let text = std::fs::read_to_string(path).map_err(io_err(path))?;
    parse_config(&text)
}

/// Serialized form written next to every run so it can be re-parsed and
/// re-run as-is.
pub fn echo_scenario(cfg: &ScenarioConfig) -> String {
    toml::to_string(cfg).expect("scenario config serializes")
}

pub fn echo_sweep(spec: &SweepSpec) -> String {
    // table-valued `base` must come after any scalar top-level keys, so
    // serialize the scalars first
    #[derive(serde::Serialize)]
    struct Ordered<'a> {
        t_max: u32,
        replicates: usize,
        window: u32,
        delta: f64,
        base: &'a ScenarioConfig,
        axes: &'a [actuation_core::Axis],
    }
    toml::to_string(&Ordered {
        t_max: spec.t_max,
        replicates: spec.replicates,
        window: spec.window,
        delta: spec.delta,
        base: &spec.base,
        axes: &spec.axes,
    })
    .expect("sweep spec serializes")
}
