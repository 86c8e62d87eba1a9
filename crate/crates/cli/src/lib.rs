//! Configuration and Monte-Carlo driver behind the `irs-pricing` binary.

pub mod config;
pub mod experiment;

pub use config::{load_config, validate_config, ConfigError, ExperimentConfig, Scheme};
pub use experiment::{format_summary, run_experiment, summarize, write_csv, Row, SummaryLine};
