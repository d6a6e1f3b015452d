//! Settings merged from defaults, an optional config file, the environment
//! and command-line flags, in increasing priority.

use std::path::Path;

use pfc_core::partition::{DEFAULT_MAX_GROUND, MAX_GROUND_CEILING};
use serde::Deserialize;

use crate::error::{CliError, CliResult};

pub const MAX_GROUND_ENV: &str = "PFC_MAX_GROUND";

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct FileConfig {
    pub max_ground: Option<usize>,
    pub jobs: Option<usize>,
    pub seed: Option<u64>,
    pub t_order: Option<usize>,
    pub n: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))
    }
}

#[derive(Clone, Debug)]
pub struct Settings {
    pub max_ground: usize,
    pub jobs: usize,
    pub seed: u64,
    pub t_order: usize,
    pub n: usize,
}

impl Settings {
    pub fn resolve(
        file: FileConfig,
        env_ground: Option<String>,
        jobs: Option<usize>,
        seed: Option<u64>,
        t_order: Option<usize>,
        n: Option<usize>,
    ) -> CliResult<Self> {
        let mut max_ground = file.max_ground.unwrap_or(DEFAULT_MAX_GROUND);
        if let Some(v) = env_ground {
            max_ground = v
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("{MAX_GROUND_ENV} must be a number, got {v:?}")))?;
        }
        if max_ground > MAX_GROUND_CEILING {
            return Err(CliError::Bounds(format!(
                "maximum ground size {max_ground} exceeds the ceiling {MAX_GROUND_CEILING}"
            )));
        }
        let jobs = jobs
            .or(file.jobs)
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
        if jobs == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        Ok(Settings {
            max_ground,
            jobs,
            seed: seed.or(file.seed).unwrap_or(0),
            t_order: t_order.or(file.t_order).unwrap_or(3),
            n: n.or(file.n).unwrap_or(2),
        })
    }

    pub fn check_ground(&self, size: usize) -> CliResult<()> {
        if size > self.max_ground {
            return Err(CliError::Bounds(format!(
                "ground set of size {size} exceeds the limit {} (raise it with {MAX_GROUND_ENV} or max-ground in the config)",
                self.max_ground
            )));
        }
        Ok(())
    }
}
