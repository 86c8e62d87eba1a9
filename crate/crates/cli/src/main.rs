use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::Parser;
use irs_pricing_cli::{format_summary, load_config, run_experiment, summarize, write_csv, ExperimentConfig, Scheme};

/// Monte-Carlo comparison of IRS module pricing against random pricing and
/// direct-link-only transmission.
#[derive(Parser, Debug)]
#[command(version, about)]
struct Cli {
    /// TOML config; every key is optional.
    #[arg(short, long)]
    config: Option<PathBuf>,
    /// CSV destination (overrides `output_path`).
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Base seed (overrides `base_seed`).
    #[arg(long)]
    seed: Option<u64>,
    /// Trials per power level (overrides `trials`).
    #[arg(long)]
    trials: Option<usize>,
    /// Comma-separated power levels in dBm (overrides `p_max_grid_dbm`).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    p_max: Option<Vec<f64>>,
    /// Comma-separated subset of game, random_pricing, direct_only.
    #[arg(long, value_delimiter = ',')]
    schemes: Option<Vec<String>>,
    /// Print the resolved config and per-row failures.
    #[arg(short, long, action = clap::ArgAction::Count)]
    verbose: u8,
    /// Suppress the summary table.
    #[arg(short, long)]
    quiet: bool,
}

fn resolve(cli: &Cli) -> anyhow::Result<ExperimentConfig> {
    let mut cfg = match &cli.config {
        Some(path) => load_config(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(o) = &cli.output {
        cfg.output_path = o.clone();
    }
    if let Some(s) = cli.seed {
        cfg.base_seed = s;
    }
    if let Some(t) = cli.trials {
        cfg.trials = t;
    }
    if let Some(p) = &cli.p_max {
        cfg.p_max_grid_dbm = p.clone();
    }
    if let Some(names) = &cli.schemes {
        cfg.schemes = names
            .iter()
            .map(|n| Scheme::parse(n.trim()).with_context(|| format!("unknown scheme `{n}`")))
            .collect::<anyhow::Result<_>>()?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn main() -> anyhow::Result<()> {
    let cli = Cli::parse();
    let cfg = resolve(&cli)?;
    if cli.verbose > 0 {
        eprintln!("{}", toml::to_string(&cfg).context("serializing config")?);
    }
    let start = Instant::now();
    let rows = run_experiment(&cfg);
    write_csv(&rows, &cfg.output_path).with_context(|| format!("writing {}", cfg.output_path.display()))?;

    let failed: Vec<_> = rows.iter().filter(|r| r.failed()).collect();
    if cli.verbose > 0 {
        for r in &failed {
            eprintln!(
                "failed: {} p_max={} trial={}: {}",
                r.scheme.name(),
                r.p_max_dbm,
                r.trial,
                r.error.as_deref().unwrap_or("")
            );
        }
    }
    if !cli.quiet {
        print!("{}", format_summary(&summarize(&rows)));
        println!(
            "{} rows -> {} in {:.1} s",
            rows.len(),
            cfg.output_path.display(),
            start.elapsed().as_secs_f64()
        );
    }
    if !failed.is_empty() {
        eprintln!("{} of {} runs failed; their rows carry NaN metrics", failed.len(), rows.len());
    }
    if failed.len() == rows.len() {
        bail!("every run failed");
    }
    Ok(())
}
