//! Seeded Monte-Carlo sweep over the power grid for every scheme.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use irs_pricing::channel::{dbm_to_watts, derive_seed, sample_instance};
use irs_pricing::leader::{baseline_direct_only, baseline_random_pricing, solve_game};
use irs_pricing::{GameOutcome, GameParams};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{ExperimentConfig, Scheme};

/// One CSV record. Failed runs keep their keys and carry NaN metrics.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub scheme: Scheme,
    pub p_max_dbm: f64,
    pub trial: usize,
    pub seed: u64,
    #[serde(rename = "U_relaxed")]
    pub u_relaxed: f64,
    #[serde(rename = "U_discrete")]
    pub u_discrete: f64,
    #[serde(rename = "V_relaxed")]
    pub v_relaxed: f64,
    #[serde(rename = "V_discrete")]
    pub v_discrete: f64,
    pub sum_rate: f64,
    /// Empty for schemes without an IRS price.
    pub r: Option<f64>,
    pub active_modules: usize,
    pub inner_iters: usize,
    pub outer_iters: usize,
    pub wall_ms: f64,
    #[serde(skip)]
    pub error: Option<String>,
}

impl Row {
    pub fn failed(&self) -> bool {
        self.error.is_some()
    }
}

/// Channel realizations depend on the trial only, so every scheme and every
/// power level sees the same instance.
pub fn channel_seed(base_seed: u64, trial: usize) -> u64 {
    derive_seed(base_seed, &[0, trial as u64])
}

/// Seed recorded on each row; also drives the random-pricing draw.
pub fn row_seed(base_seed: u64, scheme: Scheme, p_index: usize, trial: usize) -> u64 {
    derive_seed(base_seed, &[1, scheme.tag(), p_index as u64, trial as u64])
}

fn game_params(cfg: &ExperimentConfig, p_dbm: f64) -> GameParams {
    GameParams {
        delta: cfg.delta,
        sigma2: cfg.fading.noise_power_watts(),
        p_max: dbm_to_watts(p_dbm),
        solver: cfg.solver.clone(),
    }
}

fn row_from(scheme: Scheme, p_dbm: f64, trial: usize, seed: u64, res: Result<GameOutcome, String>, wall_ms: f64) -> Row {
    match res {
        Ok(o) => Row {
            scheme,
            p_max_dbm: p_dbm,
            trial,
            seed,
            u_relaxed: o.u_relaxed,
            u_discrete: o.u_discrete,
            v_relaxed: o.v_relaxed,
            v_discrete: o.v_discrete,
            sum_rate: o.sum_rate,
            r: o.r_star.map(|p| p.get()),
            active_modules: o.active_modules,
            inner_iters: o.inner_iters,
            outer_iters: o.outer_iters,
            wall_ms,
            error: None,
        },
        Err(e) => Row {
            scheme,
            p_max_dbm: p_dbm,
            trial,
            seed,
            u_relaxed: f64::NAN,
            u_discrete: f64::NAN,
            v_relaxed: f64::NAN,
            v_discrete: f64::NAN,
            sum_rate: f64::NAN,
            r: None,
            active_modules: 0,
            inner_iters: 0,
            outer_iters: 0,
            wall_ms,
            error: Some(e),
        },
    }
}

fn run_cell(cfg: &ExperimentConfig, p_index: usize, trial: usize) -> Vec<Row> {
    let p_dbm = cfg.p_max_grid_dbm[p_index];
    let params = game_params(cfg, p_dbm);
    let channels = sample_instance(&cfg.geometry, &cfg.fading, cfg.dims(), channel_seed(cfg.base_seed, trial));
    cfg.schemes
        .iter()
        .map(|&scheme| {
            let seed = row_seed(cfg.base_seed, scheme, p_index, trial);
            let start = Instant::now();
            let res = match &channels {
                Err(e) => Err(e.to_string()),
                Ok(ch) => match scheme {
                    Scheme::Game => solve_game(ch, &params, &cfg.game),
                    Scheme::RandomPricing => baseline_random_pricing(ch, &params, &cfg.game, seed),
                    Scheme::DirectOnly => baseline_direct_only(ch, &params),
                }
                .map_err(|e| e.to_string()),
            };
            let wall_ms = start.elapsed().as_secs_f64() * 1e3;
            row_from(scheme, p_dbm, trial, seed, res, wall_ms)
        })
        .collect()
}

/// Runs every (power level, trial) cell in parallel and returns rows sorted
/// by scheme (config order), power level and trial.
pub fn run_experiment(cfg: &ExperimentConfig) -> Vec<Row> {
    let cells: Vec<(usize, usize)> = (0..cfg.p_max_grid_dbm.len())
        .flat_map(|p| (0..cfg.trials).map(move |t| (p, t)))
        .collect();
    let mut rows: Vec<(usize, usize, Row)> = cells
        .par_iter()
        .flat_map_iter(|&(p, t)| run_cell(cfg, p, t).into_iter().map(move |row| (p, t, row)))
        .collect();
    let order = |s: Scheme| cfg.schemes.iter().position(|&x| x == s).unwrap_or(usize::MAX);
    rows.sort_by_key(|(p, t, row)| (order(row.scheme), *p, *t));
    rows.into_iter().map(|(_, _, row)| row).collect()
}

pub fn write_csv(rows: &[Row], path: &Path) -> csv::Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

/// Per-(scheme, power) means over successful trials.
#[derive(Clone, Debug, PartialEq)]
pub struct SummaryLine {
    pub scheme: Scheme,
    pub p_max_dbm: f64,
    pub trials: usize,
    pub failed: usize,
    pub u_relaxed: f64,
    pub v_relaxed: f64,
    pub sum_rate: f64,
    pub r: Option<f64>,
    pub active_modules: f64,
}

pub fn summarize(rows: &[Row]) -> Vec<SummaryLine> {
    let mut groups: BTreeMap<(usize, u64), Vec<&Row>> = BTreeMap::new();
    let mut schemes: Vec<Scheme> = Vec::new();
    for row in rows {
        if !schemes.contains(&row.scheme) {
            schemes.push(row.scheme);
        }
        let si = schemes.iter().position(|&s| s == row.scheme).expect("inserted above");
        // Total order on finite grid values; the grid is validated finite.
        let key = (si, (row.p_max_dbm + 1e6).to_bits());
        groups.entry(key).or_default().push(row);
    }
    groups
        .into_values()
        .map(|group| {
            let ok: Vec<&&Row> = group.iter().filter(|r| !r.failed()).collect();
            let n = ok.len().max(1) as f64;
            let mean = |f: fn(&Row) -> f64| ok.iter().map(|r| f(r)).sum::<f64>() / n;
            let prices: Vec<f64> = ok.iter().filter_map(|r| r.r).collect();
            SummaryLine {
                scheme: group[0].scheme,
                p_max_dbm: group[0].p_max_dbm,
                trials: group.len(),
                failed: group.len() - ok.len(),
                u_relaxed: mean(|r| r.u_relaxed),
                v_relaxed: mean(|r| r.v_relaxed),
                sum_rate: mean(|r| r.sum_rate),
                r: (!prices.is_empty()).then(|| prices.iter().sum::<f64>() / prices.len() as f64),
                active_modules: mean(|r| r.active_modules as f64),
            }
        })
        .collect()
}

pub fn format_summary(lines: &[SummaryLine]) -> String {
    let mut out = format!(
        "{:<15} {:>9} {:>7} {:>12} {:>12} {:>12} {:>12} {:>7}\n",
        "scheme", "p_max_dBm", "trials", "mean_U", "mean_V", "sum_rate", "mean_r", "active"
    );
    for l in lines {
        let r = l.r.map_or("-".to_string(), |r| format!("{r:.4e}"));
        let trials = if l.failed > 0 {
            format!("{}!{}", l.trials, l.failed)
        } else {
            l.trials.to_string()
        };
        out.push_str(&format!(
            "{:<15} {:>9.2} {:>7} {:>12.5e} {:>12.5e} {:>12.5e} {:>12} {:>7.2}\n",
            l.scheme.name(),
            l.p_max_dbm,
            trials,
            l.u_relaxed,
            l.v_relaxed,
            l.sum_rate,
            r,
            l.active_modules
        ));
    }
    out
}
