//! The IRS operator's pricing and the outer Stackelberg loop.
//!
//! Given the follower's prox inputs `x_s = c phi_s - Lambda_s`, block `s`
//! stays active at price `r` iff `||x_s|| > r delta`, and then earns
//! `(-delta^2 r^2 + delta ||x_s|| r) / c`. The leader's revenue is therefore a
//! continuous piecewise quadratic in `r`, maximized at the vertex of one of
//! its pieces.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::channel::{rng_from_seed, ChannelSet};
use crate::error::{Error, Result};
use crate::follower::{mrt_init, optimize_beamformers, solve_follower, FollowerSolution, FollowerState, SolverOptions};
use crate::game::{
    sum_rate, utility_leader, BeamformingMatrix, PhaseProfile, Price, UtilityKind,
};
use crate::CVector;

/// Per-instance parameters shared by every scheme.
#[derive(Clone, Debug, PartialEq)]
pub struct GameParams {
    /// Sparsity balance between payment and block norm.
    pub delta: f64,
    /// Noise power, watts.
    pub sigma2: f64,
    /// Sum-power budget, watts.
    pub p_max: f64,
    pub solver: SolverOptions,
}

impl GameParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.delta > 0.0 && self.delta.is_finite()) {
            return Err(Error::domain("delta", "finite and > 0", self.delta));
        }
        if !(self.sigma2 > 0.0) {
            return Err(Error::domain("sigma2", "> 0", self.sigma2));
        }
        if !(self.p_max > 0.0 && self.p_max.is_finite()) {
            return Err(Error::domain("p_max", "finite and > 0", self.p_max));
        }
        self.solver.validate()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GameOptions {
    pub r_init: f64,
    pub max_outer_iters: usize,
    pub v_rel_tol: f64,
    /// Uniform range of the random-pricing baseline; `(0.01, 2 r_init)` when
    /// unset.
    pub baseline_r_range: Option<(f64, f64)>,
}

impl Default for GameOptions {
    fn default() -> Self {
        GameOptions {
            r_init: 1.0,
            max_outer_iters: 50,
            v_rel_tol: 1e-4,
            baseline_r_range: None,
        }
    }
}

impl GameOptions {
    pub fn baseline_range(&self) -> (f64, f64) {
        self.baseline_r_range.unwrap_or((0.01, 2.0 * self.r_init))
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.r_init > 0.0 && self.r_init.is_finite()) {
            return Err(Error::domain("r_init", "finite and > 0", self.r_init));
        }
        if !(self.v_rel_tol > 0.0) {
            return Err(Error::domain("v_rel_tol", "> 0", self.v_rel_tol));
        }
        if self.max_outer_iters < 1 {
            return Err(Error::domain("max_outer_iters", ">= 1", self.max_outer_iters as f64));
        }
        let (lo, hi) = self.baseline_range();
        if !(lo > 0.0 && hi > lo && hi.is_finite()) {
            return Err(Error::domain("baseline_r_range", "0 < low < high", lo));
        }
        Ok(())
    }
}

/// Converged (or last) strategies of both players and their payoffs.
#[derive(Clone, Debug)]
pub struct GameOutcome {
    /// Price the deployed strategies respond to; `None` when no IRS is used.
    pub r_star: Option<Price>,
    pub w_star: BeamformingMatrix,
    pub phases_star: PhaseProfile,
    pub u_relaxed: f64,
    pub u_discrete: f64,
    pub v_relaxed: f64,
    pub v_discrete: f64,
    pub sum_rate: f64,
    pub active_modules: usize,
    pub price_trace: Vec<f64>,
    pub u_trace: Vec<f64>,
    pub v_trace: Vec<f64>,
    pub inner_iters: usize,
    pub outer_iters: usize,
    /// The last price update fell back because no block could be active.
    pub price_fallback: bool,
    pub follower_converged: bool,
    /// The price reproduces itself under the leader's update.
    pub game_converged: bool,
    /// Follower variables behind the deployed strategies, when the follower
    /// solver produced them.
    pub follower_state: Option<FollowerState>,
}

/// `kappa_s = 1` iff `||x_s|| > r_delta`.
pub fn kappa(x_norms: &[f64], r_delta: f64) -> Vec<bool> {
    x_norms.iter().map(|&x| x > r_delta).collect()
}

/// Leader revenue `sum_s kappa_s (-delta^2 r^2 + delta ||x_s|| r) / c`.
pub fn leader_value(price: f64, x_norms: &[f64], delta: f64, c: f64) -> Result<f64> {
    if !(price > 0.0) {
        return Err(Error::domain("price", "> 0", price));
    }
    if !(c > 0.0) {
        return Err(Error::domain("c", "> 0", c));
    }
    Ok(leader_value_unchecked(price, x_norms, delta, c))
}

fn leader_value_unchecked(r: f64, x_norms: &[f64], delta: f64, c: f64) -> f64 {
    x_norms
        .iter()
        .filter(|&&x| x > r * delta)
        .map(|&x| (-delta * delta * r * r + delta * x * r) / c)
        .sum()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PriceChoice {
    pub price: Price,
    pub value: f64,
    pub active: usize,
    pub fallback: bool,
}

/// Revenue-maximizing price for fixed prox inputs.
///
/// Candidate active sets are the `m` largest norms, `m = 1..S`; each gives
/// the vertex `sum_top_m ||x_s|| / (2 delta m)`. Only candidates whose active
/// set re-derived at their own vertex is exactly the top `m` are kept, and
/// the best of those is returned. When every norm is zero no price earns
/// anything and `fallback` is returned, flagged.
pub fn optimal_price(x_norms: &[f64], delta: f64, c: f64, fallback: Price) -> Result<PriceChoice> {
    if !(delta > 0.0) {
        return Err(Error::domain("delta", "> 0", delta));
    }
    if !(c > 0.0) {
        return Err(Error::domain("c", "> 0", c));
    }
    let mut sorted: Vec<f64> = x_norms.iter().copied().filter(|&x| x > 0.0).collect();
    sorted.sort_by(|a, b| b.total_cmp(a));

    let mut best: Option<PriceChoice> = None;
    let mut prefix = 0.0;
    for m in 1..=sorted.len() {
        prefix += sorted[m - 1];
        let r = prefix / (2.0 * delta * m as f64);
        let consistent = sorted[m - 1] > r * delta && sorted.get(m).is_none_or(|&next| next <= r * delta);
        if !consistent {
            continue;
        }
        let value = leader_value_unchecked(r, x_norms, delta, c);
        if best.is_none_or(|b| value > b.value) {
            best = Some(PriceChoice {
                price: Price::new(r)?,
                value,
                active: m,
                fallback: false,
            });
        }
    }

    Ok(best.unwrap_or(PriceChoice {
        price: fallback,
        value: 0.0,
        active: 0,
        fallback: true,
    }))
}

fn outcome_from_follower(
    channels: &ChannelSet,
    params: &GameParams,
    price: Price,
    sol: FollowerSolution,
) -> Result<GameOutcome> {
    let rate = sum_rate(channels, &sol.phases, &sol.w, params.sigma2)?;
    let n = channels.dims.n;
    let v_relaxed = utility_leader(price.get(), params.delta, sol.phases.phi(), n, UtilityKind::Relaxed)?;
    let v_discrete = utility_leader(price.get(), params.delta, sol.phases.phi(), n, UtilityKind::Discrete)?;
    let active = sol.phases.active_modules();
    Ok(GameOutcome {
        r_star: Some(price),
        u_relaxed: rate - v_relaxed,
        u_discrete: rate - v_discrete,
        v_relaxed,
        v_discrete,
        sum_rate: rate,
        active_modules: active,
        price_trace: vec![price.get()],
        u_trace: vec![rate - v_relaxed],
        v_trace: vec![v_relaxed],
        inner_iters: sol.iterations,
        outer_iters: 1,
        price_fallback: false,
        follower_converged: sol.converged,
        game_converged: true,
        w_star: sol.w,
        phases_star: sol.phases,
        follower_state: Some(sol.state),
    })
}

/// One follower best response at a fixed price.
pub fn evaluate_at_price(channels: &ChannelSet, params: &GameParams, price: Price) -> Result<GameOutcome> {
    params.validate()?;
    let sol = solve_follower(channels, price, params.delta, params.sigma2, params.p_max, &params.solver)?;
    outcome_from_follower(channels, params, price, sol)
}

struct Visit {
    out: GameOutcome,
    next: PriceChoice,
}

impl Visit {
    fn price(&self) -> f64 {
        self.out.r_star.map_or(0.0, Price::get)
    }

    /// Sign of `T(r) - r`, the gap between the leader's update and the price
    /// the follower responded to.
    fn gap(&self) -> f64 {
        self.next.price.get() - self.price()
    }
}

/// Tightest `(low, high)` pair of visited prices with the update pointing up
/// at `low` and down at `high`.
fn bracket(visits: &[Visit]) -> Option<(f64, f64)> {
    let mut best: Option<(f64, f64)> = None;
    for lo in visits.iter().filter(|v| v.gap() > 0.0) {
        for hi in visits.iter().filter(|v| v.gap() < 0.0) {
            let (l, h) = (lo.price(), hi.price());
            if l < h && best.is_none_or(|(bl, bh)| h / l < bh / bl) {
                best = Some((l, h));
            }
        }
    }
    best
}

/// Alternates follower best responses and price updates until both the
/// leader's realized revenue and the price settle to `v_rel_tol`.
///
/// When the plain iteration revisits a price (a cycle), the update map is
/// bracketed between visited prices where it points up and down, and the
/// bracket is bisected in log-price. If no settled price is found within
/// `max_outer_iters` follower solves, the visited point with the largest
/// realized revenue is returned with `game_converged` unset.
pub fn solve_game(channels: &ChannelSet, params: &GameParams, opts: &GameOptions) -> Result<GameOutcome> {
    params.validate()?;
    opts.validate()?;
    let tol = opts.v_rel_tol;
    let mut visits: Vec<Visit> = Vec::new();
    let visit = |price: Price, visits: &mut Vec<Visit>| -> Result<()> {
        let out = evaluate_at_price(channels, params, price)?;
        let x_norms = out
            .follower_state
            .as_ref()
            .map(FollowerState::prox_input_norms)
            .unwrap_or_default();
        let next = optimal_price(&x_norms, params.delta, params.solver.c, price)?;
        visits.push(Visit { out, next });
        Ok(())
    };
    let near = |a: f64, b: f64| (a - b).abs() <= tol * a.abs().max(b.abs());

    let mut price = Price::new(opts.r_init)?;
    let mut settled = None;
    while visits.len() < opts.max_outer_iters {
        visit(price, &mut visits)?;
        let cur = visits.last().expect("just pushed");
        let r_settled = near(cur.next.price.get(), cur.price());
        let v_settled = match visits.len() {
            1 => true,
            n => {
                let pv = visits[n - 2].out.v_relaxed;
                (cur.out.v_relaxed - pv).abs() <= tol * cur.out.v_relaxed.abs().max(1e-12)
            }
        };
        if r_settled && v_settled {
            settled = Some(visits.len() - 1);
            break;
        }
        let cycled = visits[..visits.len() - 1].iter().any(|v| near(v.price(), cur.next.price.get()));
        if cycled && bracket(&visits).is_some() {
            break;
        }
        price = cur.next.price;
    }

    if settled.is_none() {
        while visits.len() < opts.max_outer_iters {
            let Some((lo, hi)) = bracket(&visits) else { break };
            if hi / lo - 1.0 <= tol {
                break;
            }
            visit(Price::new((lo * hi).sqrt())?, &mut visits)?;
            let cur = visits.last().expect("just pushed");
            if near(cur.next.price.get(), cur.price()) {
                settled = Some(visits.len() - 1);
                break;
            }
        }
    }

    let converged = settled.is_some();
    let pick = settled.unwrap_or_else(|| {
        visits
            .iter()
            .enumerate()
            .fold(0, |best, (i, v)| if v.out.v_relaxed > visits[best].out.v_relaxed { i } else { best })
    });
    let price_trace = visits.iter().map(Visit::price).collect();
    let u_trace = visits.iter().map(|v| v.out.u_relaxed).collect();
    let v_trace = visits.iter().map(|v| v.out.v_relaxed).collect();
    let inner_iters = visits.iter().map(|v| v.out.inner_iters).sum();
    let outer_iters = visits.len();
    let chosen = visits.swap_remove(pick);
    Ok(GameOutcome {
        price_trace,
        u_trace,
        v_trace,
        inner_iters,
        outer_iters,
        price_fallback: chosen.next.fallback,
        game_converged: converged,
        ..chosen.out
    })
}

/// The IRS ignores the base station and draws its price uniformly from the
/// baseline range; the base station best-responds once.
pub fn baseline_random_pricing(
    channels: &ChannelSet,
    params: &GameParams,
    opts: &GameOptions,
    seed: u64,
) -> Result<GameOutcome> {
    opts.validate()?;
    let (lo, hi) = opts.baseline_range();
    let mut rng = rng_from_seed(seed);
    let r: f64 = rng.random_range(lo..hi);
    evaluate_at_price(channels, params, Price::new(r)?)
}

/// No module is purchased: reflection fixed at zero, only the beamformers
/// are optimized.
pub fn baseline_direct_only(channels: &ChannelSet, params: &GameParams) -> Result<GameOutcome> {
    params.validate()?;
    channels.validate()?;
    let d = channels.dims;
    let phases = PhaseProfile::zeros(d.s, d.n);
    let zero = CVector::zeros(d.sn());
    let (w, iters) = if channels.is_zero() {
        (vec![CVector::zeros(d.m); d.k], 1)
    } else {
        let (w, _, iters) = optimize_beamformers(
            channels,
            &zero,
            mrt_init(channels, params.p_max),
            params.sigma2,
            params.p_max,
            &params.solver,
        )?;
        (w, iters)
    };
    let w_star = BeamformingMatrix { w, p_max: params.p_max };
    let rate = sum_rate(channels, &phases, &w_star, params.sigma2)?;
    Ok(GameOutcome {
        r_star: None,
        w_star,
        phases_star: phases,
        u_relaxed: rate,
        u_discrete: rate,
        v_relaxed: 0.0,
        v_discrete: 0.0,
        sum_rate: rate,
        active_modules: 0,
        price_trace: Vec::new(),
        u_trace: vec![rate],
        v_trace: vec![0.0],
        inner_iters: iters,
        outer_iters: 0,
        price_fallback: false,
        follower_converged: true,
        game_converged: true,
        follower_state: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(r: f64) -> Price {
        Price::new(r).unwrap()
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(kappa(&[0.0, 0.0], 0.1), vec![false, false]);
        assert_eq!(kappa(&[5.0, 0.05], 0.1), vec![true, false]);
        assert_eq!(kappa(&[0.1], 0.1), vec![false]);
    }

    #[test]
    fn leader_value_examples() {
        assert_eq!(leader_value(3.0, &[0.0, 0.1], 0.1, 1.0).unwrap(), 0.0);
        let v = leader_value(10.0, &[2.0], 0.1, 1.0).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
        assert!(leader_value(0.0, &[2.0], 0.1, 1.0).is_err());
        assert!(leader_value(1.0, &[2.0], 0.1, 0.0).is_err());
    }

    #[test]
    fn optimal_price_examples() {
        let one = optimal_price(&[2.0], 0.1, 1.0, p(1.0)).unwrap();
        assert!((one.price.get() - 10.0).abs() < 1e-12);
        assert!(!one.fallback);
        let two = optimal_price(&[2.0, 2.0], 0.1, 1.0, p(1.0)).unwrap();
        assert!((two.price.get() - 10.0).abs() < 1e-12);
        assert_eq!(two.active, 2);
    }

    #[test]
    fn optimal_price_mixed_active_set_beats_grid() {
        let norms = [10.0, 0.1];
        let choice = optimal_price(&norms, 0.1, 1.0, p(1.0)).unwrap();
        let best_grid = (1..=200_000)
            .map(|i| i as f64 * 3.0 * choice.price.get() / 200_000.0)
            .map(|r| leader_value(r, &norms, 0.1, 1.0).unwrap())
            .fold(f64::NEG_INFINITY, f64::max);
        assert!(choice.value >= best_grid - 1e-12);
        assert!((choice.value - best_grid).abs() < 1e-4);
        assert_eq!(choice.active, 1);
    }

    #[test]
    fn all_zero_norms_fall_back() {
        let choice = optimal_price(&[0.0, 0.0], 0.1, 1.0, p(0.7)).unwrap();
        assert!(choice.fallback);
        assert_eq!(choice.price.get(), 0.7);
        assert_eq!(choice.value, 0.0);
    }

    #[test]
    fn options_defaults_and_validation() {
        let o = GameOptions::default();
        assert_eq!(o.baseline_range(), (0.01, 2.0));
        o.validate().unwrap();
        let bad = GameOptions {
            baseline_r_range: Some((1.0, 0.5)),
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = GameOptions {
            r_init: -1.0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }
}
