//! Run configuration: a TOML file with `[field]`, `[solver]`, `[output]`
//! tables; command-line flags override file values.

use std::path::Path;

use adenewton_core::series::{FieldPreset, PresetKind};
use adenewton_core::{parse_rat, Error, Rat};
use serde::Deserialize;

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default)]
    pub field: FieldSection,
    #[serde(default)]
    pub solver: SolverSection,
    #[serde(default)]
    pub output: OutputSection,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSection {
    pub preset: Option<String>,
    pub dim: Option<usize>,
    /// Default solve target, a rational like "6" or "13/2".
    pub precision: Option<String>,
    pub max_order: Option<usize>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverSection {
    pub branch_bound: Option<usize>,
    pub depth: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub format: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// Fully resolved configuration.
#[derive(Debug, Clone)]
pub struct Config {
    pub preset: FieldPreset,
    pub default_target: Rat,
    pub max_order: usize,
    pub branch_bound: usize,
    pub depth: usize,
    pub seed: u64,
    pub format: Format,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            preset: FieldPreset::h_type(),
            default_target: parse_rat("8").unwrap(),
            max_order: 8,
            branch_bound: 16,
            depth: 32,
            seed: 42,
            format: Format::Text,
        }
    }
}

pub fn preset_from_name(name: &str, dim: usize) -> Result<FieldPreset, Error> {
    let kind = match name {
        "h-type" | "htype" => PresetKind::HType,
        "monotone" => PresetKind::Monotone,
        other => {
            return Err(Error::Invalid(format!(
                "unknown preset `{other}` (expected h-type or monotone)"
            )))
        }
    };
    FieldPreset::new(kind, dim)
}

pub fn format_from_name(name: &str) -> Result<Format, Error> {
    match name {
        "text" => Ok(Format::Text),
        "json" => Ok(Format::Json),
        other => Err(Error::Invalid(format!(
            "unknown format `{other}` (expected text or json)"
        ))),
    }
}

impl Config {
    /// Loads the file (when given) and applies the overrides.
    pub fn resolve(
        path: Option<&Path>,
        preset: Option<&str>,
        dim: Option<usize>,
        format: Option<&str>,
        seed: Option<u64>,
        max_order: Option<usize>,
    ) -> Result<Config, Error> {
        let file: ConfigFile = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| Error::Invalid(format!("cannot read config {}: {e}", p.display())))?;
                toml::from_str(&text)
                    .map_err(|e| Error::Invalid(format!("config parse error: {e}")))?
            }
            None => ConfigFile::default(),
        };
        let mut cfg = Config::default();
        let preset_name = preset
            .map(str::to_string)
            .or(file.field.preset.clone())
            .unwrap_or_else(|| "h-type".to_string());
        let dim = dim.or(file.field.dim).unwrap_or(1);
        cfg.preset = preset_from_name(&preset_name, dim)?;
        if let Some(p) = &file.field.precision {
            cfg.default_target = parse_rat(p)?;
        }
        if let Some(m) = max_order.or(file.field.max_order) {
            cfg.max_order = m;
        }
        if let Some(b) = file.solver.branch_bound {
            cfg.branch_bound = b;
        }
        if let Some(d) = file.solver.depth {
            cfg.depth = d;
        }
        if let Some(s) = seed.or(file.solver.seed) {
            cfg.seed = s;
        }
        let format_name = format.map(str::to_string).or(file.output.format);
        if let Some(f) = format_name {
            cfg.format = format_from_name(&f)?;
        }
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_overrides() {
        let cfg = Config::resolve(None, None, None, None, None, None).unwrap();
        assert_eq!(cfg.branch_bound, 16);
        assert_eq!(cfg.depth, 32);
        assert_eq!(cfg.preset, FieldPreset::h_type());
        let cfg = Config::resolve(None, Some("monotone"), Some(2), Some("json"), Some(7), None).unwrap();
        assert_eq!(cfg.preset.dim, 2);
        assert_eq!(cfg.format, Format::Json);
        assert_eq!(cfg.seed, 7);
        assert!(Config::resolve(None, Some("h-type"), Some(2), None, None, None).is_err());
    }

    #[test]
    fn file_values_sit_below_flags() {
        let dir = std::env::temp_dir().join("adenewton-config-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("cfg.toml");
        std::fs::write(
            &path,
            "[field]\npreset = \"monotone\"\nprecision = \"13/2\"\n[solver]\nbranch_bound = 4\n[output]\nformat = \"json\"\n",
        )
        .unwrap();
        let cfg = Config::resolve(Some(&path), None, None, None, None, None).unwrap();
        assert_eq!(cfg.preset, FieldPreset::monotone());
        assert_eq!(cfg.branch_bound, 4);
        assert_eq!(cfg.format, Format::Json);
        assert_eq!(cfg.default_target, parse_rat("13/2").unwrap());
        let cfg = Config::resolve(Some(&path), Some("h-type"), None, Some("text"), None, None).unwrap();
        assert_eq!(cfg.preset, FieldPreset::h_type());
        assert_eq!(cfg.format, Format::Text);
    }
}
