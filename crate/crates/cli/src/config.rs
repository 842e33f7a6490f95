use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::exit::Failure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

/// Limits and output settings shared by every command.
///
/// `exponent_bound` may be 0, which restricts a search to the torsion box.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub exponent_bound: u32,
    pub enumeration_ceiling: u64,
    pub discriminant_bound: u64,
    pub sieve_cutoff: u64,
    pub cache_path: Option<PathBuf>,
    pub output_format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            exponent_bound: 10,
            enumeration_ceiling: 1_000_000_000,
            discriminant_bound: 1_000_000,
            sieve_cutoff: 1_000_000,
            cache_path: None,
            output_format: OutputFormat::Json,
        }
    }
}

/// Environment variable naming the cache file; overrides the config file.
pub const CACHE_ENV: &str = "QUARTIC_CACHE";

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::input(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Failure::input(format!("invalid config {}: {e}", path.display())))
    }

    pub fn validate(&self) -> Result<(), Failure> {
        for (name, v) in [
            ("enumeration_ceiling", self.enumeration_ceiling),
            ("discriminant_bound", self.discriminant_bound),
            ("sieve_cutoff", self.sieve_cutoff),
        ] {
            if v == 0 {
                return Err(Failure::input(format!("{name} must be positive")));
            }
        }
        Ok(())
    }

    /// The settings that can change a payload; the cache path and output
    /// format cannot.
    pub fn semantic_key(&self) -> serde_json::Value {
        serde_json::json!({
            "exponent_bound": self.exponent_bound,
            "enumeration_ceiling": self.enumeration_ceiling,
            "discriminant_bound": self.discriminant_bound,
            "sieve_cutoff": self.sieve_cutoff,
        })
    }
}
