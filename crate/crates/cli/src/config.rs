//! Experiment configuration: one TOML file, every key optional.

use std::path::{Path, PathBuf};

use irs_pricing::{Dims, Error as CoreError, FadingParams, GameOptions, Geometry, SolverOptions};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("invalid config key `{key}`: {message}")]
    Key { key: String, message: String },
    #[error("could not parse config: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("could not read config {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl ConfigError {
    fn key(key: impl Into<String>, message: impl Into<String>) -> Self {
        ConfigError::Key {
            key: key.into(),
            message: message.into(),
        }
    }

    /// Re-labels a core validation error with the config section it came
    /// from.
    fn from_core(section: &str, err: CoreError) -> Self {
        match err {
            CoreError::Domain { what, requirement, value } => {
                ConfigError::key(format!("{section}.{what}"), format!("must be {requirement}, got {value}"))
            }
            other => ConfigError::key(section, other.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    Game,
    RandomPricing,
    DirectOnly,
}

impl Scheme {
    pub const ALL: [Scheme; 3] = [Scheme::Game, Scheme::RandomPricing, Scheme::DirectOnly];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Game => "game",
            Scheme::RandomPricing => "random_pricing",
            Scheme::DirectOnly => "direct_only",
        }
    }

    pub fn parse(s: &str) -> Option<Scheme> {
        Scheme::ALL.into_iter().find(|x| x.name() == s)
    }

    /// Stable index used in seed derivation.
    pub fn tag(self) -> u64 {
        match self {
            Scheme::Game => 0,
            Scheme::RandomPricing => 1,
            Scheme::DirectOnly => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DimsConfig {
    /// BS antennas.
    pub m: usize,
    /// Users.
    pub k: usize,
    /// IRS modules.
    pub s: usize,
    /// Elements per module.
    pub n: usize,
}

impl Default for DimsConfig {
    fn default() -> Self {
        DimsConfig { m: 4, k: 4, s: 8, n: 8 }
    }
}

impl From<&DimsConfig> for Dims {
    fn from(d: &DimsConfig) -> Self {
        Dims::new(d.m, d.k, d.s, d.n)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    pub dims: DimsConfig,
    pub geometry: Geometry,
    pub fading: FadingParams,
    pub delta: f64,
    pub p_max_grid_dbm: Vec<f64>,
    pub trials: usize,
    pub base_seed: u64,
    pub schemes: Vec<Scheme>,
    pub solver: SolverOptions,
    pub game: GameOptions,
    pub output_path: PathBuf,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            dims: DimsConfig::default(),
            geometry: Geometry::default(),
            fading: FadingParams::default(),
            delta: 0.1,
            p_max_grid_dbm: vec![-5.0, -2.5, 0.0, 2.5, 5.0],
            trials: 20,
            base_seed: 2024,
            schemes: Scheme::ALL.to_vec(),
            solver: SolverOptions::default(),
            game: GameOptions::default(),
            output_path: PathBuf::from("results.csv"),
        }
    }
}

impl ExperimentConfig {
    pub fn dims(&self) -> Dims {
        Dims::from(&self.dims)
    }

    /// Range checks with the offending key in every message.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.trials < 1 {
            return Err(ConfigError::key("trials", "must be >= 1"));
        }
        if !(self.delta > 0.0 && self.delta.is_finite()) {
            return Err(ConfigError::key("delta", format!("must be finite and > 0, got {}", self.delta)));
        }
        if self.p_max_grid_dbm.is_empty() {
            return Err(ConfigError::key("p_max_grid_dbm", "must not be empty"));
        }
        if let Some(p) = self.p_max_grid_dbm.iter().find(|p| !p.is_finite()) {
            return Err(ConfigError::key("p_max_grid_dbm", format!("entries must be finite, got {p}")));
        }
        if self.schemes.is_empty() {
            return Err(ConfigError::key("schemes", "must not be empty"));
        }
        for (name, v) in [
            ("dims.m", self.dims.m),
            ("dims.k", self.dims.k),
            ("dims.s", self.dims.s),
            ("dims.n", self.dims.n),
        ] {
            if v < 1 {
                return Err(ConfigError::key(name, "must be >= 1"));
            }
        }
        if !self.geometry.user_positions.is_empty() && self.geometry.user_positions.len() != self.dims.k {
            return Err(ConfigError::key(
                "geometry.user_positions",
                format!("needs {} entries (one per user), got {}", self.dims.k, self.geometry.user_positions.len()),
            ));
        }
        self.geometry.validate().map_err(|e| ConfigError::from_core("geometry", e))?;
        self.fading.validate().map_err(|e| ConfigError::from_core("fading", e))?;
        self.solver.validate().map_err(|e| ConfigError::from_core("solver", e))?;
        self.game.validate().map_err(|e| ConfigError::from_core("game", e))?;
        Ok(())
    }
}

/// Parses TOML text, fills defaults for omitted keys and range-checks the
/// result. Unknown keys are errors.
pub fn validate_config(raw: &str) -> Result<ExperimentConfig, ConfigError> {
    let cfg: ExperimentConfig = toml::from_str(raw)?;
    cfg.validate()?;
    Ok(cfg)
}

pub fn load_config(path: &Path) -> Result<ExperimentConfig, ConfigError> {
    let raw = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    validate_config(&raw)
}
