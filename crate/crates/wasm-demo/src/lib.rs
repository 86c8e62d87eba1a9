//! Browser bindings for the pricing game. Three entry points back the demo
//! page: the leader's revenue curve for hand-entered prox norms, a full game
//! solve on a seeded instance, and the follower's response over a price
//! sweep.

use irs_pricing::channel::{dbm_to_watts, sample_instance};
use irs_pricing::leader::{self, baseline_direct_only, evaluate_at_price, solve_game};
use irs_pricing::{Dims, FadingParams, GameOptions, GameParams, Geometry, Price, SolverOptions};
use wasm_bindgen::prelude::*;

fn js_err(e: irs_pricing::Error) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen]
pub struct RevenueCurve {
    prices: Vec<f64>,
    values: Vec<f64>,
    r_star: f64,
    v_star: f64,
    active: usize,
}

#[wasm_bindgen]
impl RevenueCurve {
    #[wasm_bindgen(getter)]
    pub fn prices(&self) -> Vec<f64> {
        self.prices.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn values(&self) -> Vec<f64> {
        self.values.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn r_star(&self) -> f64 {
        self.r_star
    }
    #[wasm_bindgen(getter)]
    pub fn v_star(&self) -> f64 {
        self.v_star
    }
    #[wasm_bindgen(getter)]
    pub fn active(&self) -> usize {
        self.active
    }
}

/// Leader revenue `V(r)` on `points` prices over `(0, 3 r*]` for fixed prox
/// input norms, plus the optimal price itself.
pub fn revenue_curve_native(norms: &[f64], delta: f64, c: f64, points: usize) -> irs_pricing::Result<RevenueCurve> {
    let choice = leader::optimal_price(norms, delta, c, Price::new(1.0)?)?;
    let r_star = choice.price.get();
    let top = if choice.fallback { 1.0 } else { 3.0 * r_star };
    let prices: Vec<f64> = (1..=points.max(2)).map(|i| top * i as f64 / points.max(2) as f64).collect();
    let values = prices
        .iter()
        .map(|&r| leader::leader_value(r, norms, delta, c))
        .collect::<irs_pricing::Result<Vec<_>>>()?;
    Ok(RevenueCurve {
        prices,
        values,
        r_star,
        v_star: choice.value,
        active: choice.active,
    })
}

#[wasm_bindgen]
pub fn revenue_curve(norms: &[f64], delta: f64, c: f64, points: usize) -> Result<RevenueCurve, JsError> {
    revenue_curve_native(norms, delta, c, points).map_err(js_err)
}

/// Instance description shared by the solver entry points.
#[wasm_bindgen]
#[derive(Clone, Copy, Debug)]
pub struct Scenario {
    pub m: usize,
    pub k: usize,
    pub s: usize,
    pub n: usize,
    pub seed: u64,
    pub p_max_dbm: f64,
    pub delta: f64,
}

#[wasm_bindgen]
impl Scenario {
    #[wasm_bindgen(constructor)]
    pub fn new(m: usize, k: usize, s: usize, n: usize, seed: u64, p_max_dbm: f64, delta: f64) -> Scenario {
        Scenario { m, k, s, n, seed, p_max_dbm, delta }
    }
}

impl Scenario {
    fn build(&self) -> irs_pricing::Result<(irs_pricing::ChannelSet, GameParams)> {
        let fading = FadingParams::default();
        let channels = sample_instance(&Geometry::default(), &fading, Dims::new(self.m, self.k, self.s, self.n), self.seed)?;
        let params = GameParams {
            delta: self.delta,
            sigma2: fading.noise_power_watts(),
            p_max: dbm_to_watts(self.p_max_dbm),
            solver: SolverOptions::default(),
        };
        params.validate()?;
        Ok((channels, params))
    }
}

#[wasm_bindgen]
pub struct GameReport {
    r_star: f64,
    u: f64,
    v: f64,
    sum_rate: f64,
    direct_rate: f64,
    active_modules: usize,
    converged: bool,
    block_norms: Vec<f64>,
    price_trace: Vec<f64>,
}

#[wasm_bindgen]
impl GameReport {
    #[wasm_bindgen(getter)]
    pub fn r_star(&self) -> f64 {
        self.r_star
    }
    #[wasm_bindgen(getter)]
    pub fn u(&self) -> f64 {
        self.u
    }
    #[wasm_bindgen(getter)]
    pub fn v(&self) -> f64 {
        self.v
    }
    #[wasm_bindgen(getter)]
    pub fn sum_rate(&self) -> f64 {
        self.sum_rate
    }
    #[wasm_bindgen(getter)]
    pub fn direct_rate(&self) -> f64 {
        self.direct_rate
    }
    #[wasm_bindgen(getter)]
    pub fn active_modules(&self) -> usize {
        self.active_modules
    }
    #[wasm_bindgen(getter)]
    pub fn converged(&self) -> bool {
        self.converged
    }
    /// Per-module norm of the deployed reflection profile.
    #[wasm_bindgen(getter)]
    pub fn block_norms(&self) -> Vec<f64> {
        self.block_norms.clone()
    }
    /// Price at every outer iteration.
    #[wasm_bindgen(getter)]
    pub fn price_trace(&self) -> Vec<f64> {
        self.price_trace.clone()
    }
}

pub fn solve_native(scenario: &Scenario) -> irs_pricing::Result<GameReport> {
    let (channels, params) = scenario.build()?;
    let game = solve_game(&channels, &params, &GameOptions::default())?;
    let direct = baseline_direct_only(&channels, &params)?;
    Ok(GameReport {
        r_star: game.r_star.map(|p| p.get()).unwrap_or(0.0),
        u: game.u_relaxed,
        v: game.v_relaxed,
        sum_rate: game.sum_rate,
        direct_rate: direct.sum_rate,
        active_modules: game.active_modules,
        converged: game.game_converged,
        block_norms: game.phases_star.block_norms(),
        price_trace: game.price_trace,
    })
}

#[wasm_bindgen]
pub fn solve(scenario: &Scenario) -> Result<GameReport, JsError> {
    solve_native(scenario).map_err(js_err)
}

#[wasm_bindgen]
pub struct PriceResponse {
    prices: Vec<f64>,
    u: Vec<f64>,
    v: Vec<f64>,
    sum_rate: Vec<f64>,
    active: Vec<u32>,
}

#[wasm_bindgen]
impl PriceResponse {
    #[wasm_bindgen(getter)]
    pub fn prices(&self) -> Vec<f64> {
        self.prices.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn u(&self) -> Vec<f64> {
        self.u.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn v(&self) -> Vec<f64> {
        self.v.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn sum_rate(&self) -> Vec<f64> {
        self.sum_rate.clone()
    }
    #[wasm_bindgen(getter)]
    pub fn active(&self) -> Vec<u32> {
        self.active.clone()
    }
}

/// Follower best response at `points` log-spaced prices in `[r_lo, r_hi]`.
pub fn price_response_native(scenario: &Scenario, r_lo: f64, r_hi: f64, points: usize) -> irs_pricing::Result<PriceResponse> {
    let lo = Price::new(r_lo)?.get();
    let hi = Price::new(r_hi)?.get();
    let (channels, params) = scenario.build()?;
    let n = points.max(2);
    let mut out = PriceResponse {
        prices: Vec::with_capacity(n),
        u: Vec::with_capacity(n),
        v: Vec::with_capacity(n),
        sum_rate: Vec::with_capacity(n),
        active: Vec::with_capacity(n),
    };
    for i in 0..n {
        let r = lo * (hi / lo).powf(i as f64 / (n - 1) as f64);
        let o = evaluate_at_price(&channels, &params, Price::new(r)?)?;
        out.prices.push(r);
        out.u.push(o.u_relaxed);
        out.v.push(o.v_relaxed);
        out.sum_rate.push(o.sum_rate);
        out.active.push(o.active_modules as u32);
    }
    Ok(out)
}

#[wasm_bindgen]
pub fn price_response(scenario: &Scenario, r_lo: f64, r_hi: f64, points: usize) -> Result<PriceResponse, JsError> {
    price_response_native(scenario, r_lo, r_hi, points).map_err(js_err)
}
