//! Runtime configuration, optionally read from a JSON file.

use std::fs;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::cache::DiskCache;
use crate::error::{Error, Result};
use crate::exact::{parse_rational, Rational};
use crate::oracle::Caps;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub cache_dir: PathBuf,
    pub oracle_caps: Caps,
    pub default_precision: Rational,
    pub output_format: OutputFormat,
}

/// File form; every field is optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    cache_dir: Option<PathBuf>,
    oracle_caps: Option<Caps>,
    default_precision: Option<String>,
    output_format: Option<OutputFormat>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            cache_dir: DiskCache::from_env().dir().to_path_buf(),
            oracle_caps: Caps::default(),
            default_precision: Rational::new(1.into(), 10_000_000_000u64.into()),
            output_format: OutputFormat::Text,
        }
    }
}

impl Config {
    /// Defaults overridden by the fields present in the JSON file at `path`.
    pub fn load(path: &Path) -> Result<Config> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let file: ConfigFile =
            serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        let mut c = Config::default();
        if let Some(dir) = file.cache_dir {
            c.cache_dir = dir;
        }
        if let Some(caps) = file.oracle_caps {
            c.oracle_caps = caps;
        }
        if let Some(p) = file.default_precision {
            c.default_precision = parse_rational(&p)?;
        }
        if let Some(f) = file.output_format {
            c.output_format = f;
        }
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        let caps = &self.oracle_caps;
        let all = [
            caps.matchings,
            caps.irreducible_shadows,
            caps.gamma_matchings,
            caps.shapes,
            caps.structures,
        ];
        if all.contains(&0) {
            return Err(Error::InvalidArgument("oracle caps must be positive".into()));
        }
        let p = &self.default_precision;
        if *p <= Rational::from_integer(0.into()) || *p >= Rational::from_integer(1.into()) {
            return Err(Error::InvalidArgument("default_precision must lie in (0, 1)".into()));
        }
        Ok(())
    }

    pub fn cache(&self) -> DiskCache {
        DiskCache::new(&self.cache_dir)
    }
}
