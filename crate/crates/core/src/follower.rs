//! The base station's best response at a fixed price.
//!
//! One inner iteration refreshes, in order: the dual-transform weights
//! `alpha`, the beamforming auxiliaries `beta`, the beamformers `W` with the
//! power multiplier, the phase auxiliaries `epsilon`, the reflection vector
//! `phi` with its magnitude multipliers `mu`, the consensus copy `theta`
//! (block soft-thresholding) and the consensus dual `Lambda`.
//!
//! The group-lasso regularizer is the non-squared block norm everywhere. The
//! prox and the leader's closed-form price are only consistent with it.

use nalgebra::SymmetricEigen;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::channel::{rng_from_seed, ChannelSet};
use crate::error::{Error, Result};
use crate::game::{
    active_count, block_norms_unchecked, combined_channel_raw, sinr_from_combined,
    sum_rate_from_sinr, total_power, BeamformingMatrix, PhaseProfile, Price, ACTIVE_EPS,
};
use crate::linalg::{all_finite, clamp_unit_disk, inner, max_abs_diff, solve_hpd};
use crate::{CMatrix, CVector, C64};

/// How the sum-power constraint is enforced after the beamformer update.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PowerMode {
    /// Multiplier set to the constraint slack, then radial scaling onto the
    /// power ball if the budget is exceeded.
    PaperEq23,
    /// Water-level search on the multiplier so the stationary beamformers
    /// meet the budget with complementary slackness.
    Bisection,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolverOptions {
    pub max_inner_iters: usize,
    pub obj_rel_tol: f64,
    pub consensus_tol: f64,
    /// ADMM penalty.
    pub c: f64,
    pub power_mode: PowerMode,
    /// Seed of the random initial reflection phases.
    pub init_seed: u64,
    pub magnitude_rule: MagnitudeRule,
}

/// How the unit-magnitude multipliers are refreshed after the reflection
/// update.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MagnitudeRule {
    /// `mu_i = max(0, 1 - |phi_i|^2)`, then clamping.
    Slack,
    /// `mu = 0`; feasibility by clamping alone.
    Projection,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            max_inner_iters: 500,
            obj_rel_tol: 1e-5,
            consensus_tol: 1e-3,
            c: 1e-4,
            power_mode: PowerMode::Bisection,
            init_seed: 0,
            magnitude_rule: MagnitudeRule::Projection,
        }
    }
}

impl SolverOptions {
    pub fn validate(&self) -> Result<()> {
        if self.max_inner_iters < 1 {
            return Err(Error::domain("max_inner_iters", ">= 1", self.max_inner_iters as f64));
        }
        if !(self.obj_rel_tol > 0.0) {
            return Err(Error::domain("obj_rel_tol", "> 0", self.obj_rel_tol));
        }
        if !(self.consensus_tol > 0.0) {
            return Err(Error::domain("consensus_tol", "> 0", self.consensus_tol));
        }
        if !(self.c > 0.0 && self.c.is_finite()) {
            return Err(Error::domain("c", "finite and > 0", self.c));
        }
        Ok(())
    }
}

/// Every primal, auxiliary and dual variable of the inner loop.
#[derive(Clone, Debug, PartialEq)]
pub struct FollowerState {
    pub alpha: Vec<f64>,
    pub beta: Vec<C64>,
    pub epsilon: Vec<C64>,
    pub phi: CVector,
    pub theta: CVector,
    pub lambda_dual: CVector,
    pub mu: Vec<f64>,
    pub lambda0: f64,
    pub c: f64,
    pub w: Vec<CVector>,
    pub block_size: usize,
}

impl FollowerState {
    /// `x_s = c * phi_s - Lambda_s`, the prox input of every block.
    pub fn prox_inputs(&self) -> CVector {
        &self.phi * C64::from(self.c) - &self.lambda_dual
    }

    pub fn prox_input_norms(&self) -> Vec<f64> {
        block_norms_unchecked(&self.prox_inputs(), self.block_size)
    }

    pub fn consensus_residual(&self) -> f64 {
        max_abs_diff(&self.theta, &self.phi)
    }
}

/// One inner iteration, as emitted to the trace.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IterationRecord {
    pub iteration: usize,
    /// Dual-transform objective at the refreshed `(W, phi)`.
    pub objective: f64,
    pub power: f64,
    pub consensus_residual: f64,
    pub active_blocks: usize,
    /// Weighted ratio objective with `alpha` fixed, before and after the
    /// beamformer sweep.
    pub w_sweep_before: f64,
    pub w_sweep_after: f64,
}

#[derive(Clone, Debug)]
pub struct FollowerSolution {
    pub w: BeamformingMatrix,
    /// Reflection profile actually deployed: the consensus copy `theta`,
    /// whose pruned blocks are exactly zero.
    pub phases: PhaseProfile,
    pub state: FollowerState,
    pub trace: Vec<IterationRecord>,
    pub iterations: usize,
    pub converged: bool,
}

/// Cascaded coefficients of every (beam j, user k) pair:
/// `a[j][k] = diag(g_k^H) H w_j` and `b[j][k] = h_{d,k}^H w_j`.
#[derive(Clone, Debug)]
pub struct Cascade {
    pub a: Vec<Vec<CVector>>,
    pub b: Vec<Vec<C64>>,
}

impl Cascade {
    pub fn new(channels: &ChannelSet, w: &[CVector]) -> Self {
        let g_conj: Vec<CVector> = channels.g_irs.iter().map(|g| g.map(|z| z.conj())).collect();
        let mut a = Vec::with_capacity(w.len());
        let mut b = Vec::with_capacity(w.len());
        for wj in w {
            let hw = &channels.h_irs * wj;
            a.push(g_conj.iter().map(|gc| gc.component_mul(&hw)).collect());
            b.push(channels.h_direct.iter().map(|hd| inner(hd, wj)).collect());
        }
        Cascade { a, b }
    }

    /// `b_{j,k} + phi^H a_{j,k}`, the effective gain of beam j at user k.
    pub fn gain(&self, phi: &CVector, j: usize, k: usize) -> C64 {
        self.b[j][k] + inner(phi, &self.a[j][k])
    }

    fn users(&self) -> usize {
        self.a.first().map_or(0, Vec::len)
    }
}

/// Dual-transform objective: `sum log2(1+alpha) - sum alpha +
/// sum (1+alpha) gamma / (1+gamma) - price * delta * sum_s ||phi_s||`.
pub fn dual_transform_objective(
    alpha: &[f64],
    gamma: &[f64],
    price: f64,
    delta: f64,
    block_norm_sum: f64,
) -> f64 {
    alpha
        .iter()
        .zip(gamma)
        .map(|(&a, &g)| (1.0 + a).log2() - a + (1.0 + a) * g / (1.0 + g))
        .sum::<f64>()
        - price * delta * block_norm_sum
}

/// `sum_k (1+alpha_k) |h_k^H w_k|^2 / (sum_j |h_k^H w_j|^2 + sigma2)`.
pub fn ratio_objective(h: &[CVector], w: &[CVector], alpha: &[f64], sigma2: f64) -> f64 {
    h.iter()
        .zip(alpha)
        .enumerate()
        .map(|(k, (hk, a))| {
            let total: f64 = w.iter().map(|wj| inner(hk, wj).norm_sqr()).sum::<f64>() + sigma2;
            (1.0 + a) * inner(hk, &w[k]).norm_sqr() / total
        })
        .sum()
}

/// Quadratic-transform surrogate of [`ratio_objective`] in `(W, beta)`.
pub fn beamforming_qt_objective(
    h: &[CVector],
    w: &[CVector],
    alpha: &[f64],
    beta: &[C64],
    sigma2: f64,
) -> f64 {
    h.iter()
        .enumerate()
        .map(|(k, hk)| {
            let total: f64 = w.iter().map(|wj| inner(hk, wj).norm_sqr()).sum::<f64>() + sigma2;
            2.0 * (1.0 + alpha[k]).sqrt() * (beta[k].conj() * inner(hk, &w[k])).re
                - beta[k].norm_sqr() * total
        })
        .sum()
}

/// Quadratic-transform surrogate in `(phi, epsilon)`, without the
/// regularizer.
pub fn phase_qt_objective(
    cascade: &Cascade,
    phi: &CVector,
    alpha: &[f64],
    epsilon: &[C64],
    sigma2: f64,
) -> f64 {
    (0..cascade.users())
        .map(|k| {
            let total: f64 = (0..cascade.a.len())
                .map(|j| cascade.gain(phi, j, k).norm_sqr())
                .sum::<f64>()
                + sigma2;
            2.0 * (1.0 + alpha[k]).sqrt() * (epsilon[k].conj() * cascade.gain(phi, k, k)).re
                - epsilon[k].norm_sqr() * total
        })
        .sum()
}

/// Optimal dual-transform weights: `alpha_k = gamma_k`.
pub fn update_alpha(gamma: &[f64]) -> Vec<f64> {
    gamma.to_vec()
}

/// Maximizer of the beamforming surrogate over `beta` with `W` fixed.
pub fn update_beta(h: &[CVector], w: &[CVector], alpha: &[f64], sigma2: f64) -> Vec<C64> {
    h.iter()
        .enumerate()
        .map(|(k, hk)| {
            let total: f64 = w.iter().map(|wj| inner(hk, wj).norm_sqr()).sum::<f64>() + sigma2;
            inner(hk, &w[k]) * ((1.0 + alpha[k]).sqrt() / total)
        })
        .collect()
}

fn beam_rhs(h: &[CVector], alpha: &[f64], beta: &[C64]) -> Vec<CVector> {
    h.iter()
        .zip(alpha.iter().zip(beta))
        .map(|(hk, (a, b))| hk * (b * (1.0 + a).sqrt()))
        .collect()
}

/// Stationary beamformers of the surrogate for a given power multiplier:
/// `w_k = sqrt(1+alpha_k) beta_k (lambda0 I + sum_j |beta_j|^2 h_j h_j^H)^-1 h_k`.
pub fn update_w(h: &[CVector], alpha: &[f64], beta: &[C64], lambda0: f64) -> Result<Vec<CVector>> {
    if !(lambda0 >= 0.0) {
        return Err(Error::domain("lambda0", ">= 0", lambda0));
    }
    let m = h.first().map_or(0, |v| v.len());
    let mut a = CMatrix::zeros(m, m);
    for (hj, bj) in h.iter().zip(beta) {
        a.gerc(C64::from(bj.norm_sqr()), hj, hj, C64::from(1.0));
    }
    for i in 0..m {
        a[(i, i)] += C64::from(lambda0);
    }
    let rhs = beam_rhs(h, alpha, beta);
    if rhs.iter().all(|r| r.iter().all(|z| z.norm_sqr() == 0.0)) {
        return Ok(vec![CVector::zeros(m); h.len()]);
    }
    let chol = nalgebra::Cholesky::new(a).ok_or(Error::Singular("beamformer update"))?;
    Ok(rhs.iter().map(|r| chol.solve(r)).collect())
}

/// Beamformers as a function of the power multiplier, through one
/// eigendecomposition of the Hermitian system matrix. Directions in its null
/// space are dropped, which gives the minimum-norm solution at `lambda0 = 0`.
pub struct BeamformerFamily {
    eigvecs: CMatrix,
    eigvals: Vec<f64>,
    coords: Vec<CVector>,
}

impl BeamformerFamily {
    pub fn new(h: &[CVector], alpha: &[f64], beta: &[C64]) -> Self {
        let m = h.first().map_or(0, |v| v.len());
        let mut a = CMatrix::zeros(m, m);
        for (hj, bj) in h.iter().zip(beta) {
            a.gerc(C64::from(bj.norm_sqr()), hj, hj, C64::from(1.0));
        }
        let eig = SymmetricEigen::new(a);
        let eigvals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        let top = eigvals.iter().fold(0.0f64, |acc, &d| acc.max(d.abs()));
        let floor = top * 1e-13;
        let coords = beam_rhs(h, alpha, beta)
            .iter()
            .map(|r| {
                let mut c = eig.eigenvectors.ad_mul(r);
                for (ci, &d) in c.iter_mut().zip(&eigvals) {
                    if d <= floor {
                        *ci = C64::from(0.0);
                    }
                }
                c
            })
            .collect();
        BeamformerFamily {
            eigvecs: eig.eigenvectors,
            eigvals,
            coords,
        }
    }

    pub fn power(&self, lambda0: f64) -> f64 {
        self.coords
            .iter()
            .map(|c| {
                c.iter()
                    .zip(&self.eigvals)
                    .filter(|(ci, _)| ci.norm_sqr() > 0.0)
                    .map(|(ci, d)| ci.norm_sqr() / (d + lambda0).powi(2))
                    .sum::<f64>()
            })
            .sum()
    }

    pub fn beams(&self, lambda0: f64) -> Vec<CVector> {
        self.coords
            .iter()
            .map(|c| {
                let scaled = CVector::from_iterator(
                    c.len(),
                    c.iter().zip(&self.eigvals).map(|(ci, d)| {
                        if ci.norm_sqr() > 0.0 {
                            ci / (d + lambda0)
                        } else {
                            C64::from(0.0)
                        }
                    }),
                );
                &self.eigvecs * scaled
            })
            .collect()
    }

    fn rhs_energy(&self) -> f64 {
        self.coords.iter().map(|c| c.norm_squared()).sum()
    }
}

/// Enforces `sum ||w_k||^2 <= p_max` and returns the beamformers together
/// with the power multiplier.
///
/// `lambda0_prev` is only used by [`PowerMode::PaperEq23`], which evaluates
/// the stationary beamformers at the previous multiplier before refreshing it.
pub fn enforce_power(
    family: &BeamformerFamily,
    p_max: f64,
    mode: PowerMode,
    lambda0_prev: f64,
) -> Result<(Vec<CVector>, f64)> {
    if !(p_max > 0.0) {
        return Err(Error::domain("p_max", "> 0", p_max));
    }
    match mode {
        PowerMode::Bisection => {
            if family.power(0.0) <= p_max {
                return Ok((family.beams(0.0), 0.0));
            }
            // power(lambda) <= rhs_energy / lambda^2
            let mut hi = (family.rhs_energy() / p_max).sqrt();
            let mut lo = 0.0;
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                let p = family.power(mid);
                if p > p_max {
                    lo = mid;
                } else {
                    hi = mid;
                    if p >= p_max * (1.0 - 1e-10) {
                        break;
                    }
                }
            }
            Ok((family.beams(hi), hi))
        }
        PowerMode::PaperEq23 => {
            let w = family.beams(lambda0_prev.max(0.0));
            Ok(scale_to_budget(w, p_max))
        }
    }
}

/// Literal slack update of the multiplier, followed by radial scaling onto
/// the power ball when the budget is violated.
pub fn scale_to_budget(mut w: Vec<CVector>, p_max: f64) -> (Vec<CVector>, f64) {
    let p = total_power(&w);
    let lambda0 = (p_max - p).max(0.0);
    if p > p_max {
        let s = C64::from((p_max / p).sqrt());
        for v in &mut w {
            *v *= s;
        }
    }
    (w, lambda0)
}

/// Maximizer of the phase surrogate over `epsilon` with `phi` fixed.
pub fn update_epsilon(cascade: &Cascade, phi: &CVector, alpha: &[f64], sigma2: f64) -> Vec<C64> {
    (0..cascade.users())
        .map(|k| {
            let total: f64 = (0..cascade.a.len())
                .map(|j| cascade.gain(phi, j, k).norm_sqr())
                .sum::<f64>()
                + sigma2;
            cascade.gain(phi, k, k) * ((1.0 + alpha[k]).sqrt() / total)
        })
        .collect()
}

/// Inputs of the reflection-vector update beyond the channels.
pub struct PhiUpdate<'a> {
    pub w: &'a [CVector],
    pub alpha: &'a [f64],
    pub epsilon: &'a [C64],
    pub theta: &'a CVector,
    pub lambda_dual: &'a CVector,
    pub mu: &'a [f64],
    pub c: f64,
}

/// Stationary point in `phi` of the augmented Lagrangian, magnitude
/// multipliers included: solves
/// `(2 sum_k |eps_k|^2 sum_j a_jk a_jk^H + 2 diag(mu) + c I) phi = rhs` with
/// `rhs = 2 sum_k sqrt(1+alpha_k) conj(eps_k) a_kk + Lambda + c theta
///        - 2 sum_k |eps_k|^2 sum_j conj(b_jk) a_jk`.
pub fn update_phi(channels: &ChannelSet, cascade: &Cascade, p: &PhiUpdate<'_>) -> Result<CVector> {
    if !(p.c > 0.0) {
        return Err(Error::domain("c", "> 0", p.c));
    }
    let sn = channels.dims.sn();
    let k_users = channels.dims.k;

    // sum_j a_jk a_jk^H = (H W W^H H^H) o (conj(g_k) g_k^T)
    let mut hw = CMatrix::zeros(sn, p.w.len());
    for (j, wj) in p.w.iter().enumerate() {
        hw.set_column(j, &(&channels.h_irs * wj));
    }
    let mut gw = CMatrix::zeros(sn, k_users);
    for (k, g) in channels.g_irs.iter().enumerate() {
        gw.set_column(k, &(g * C64::from(p.epsilon[k].norm())));
    }
    let bb = &hw * hw.adjoint();
    let gg = &gw * gw.adjoint();
    let mut q = bb.zip_map(&gg, |x, y| x * y.conj() * 2.0);
    for i in 0..sn {
        q[(i, i)] += C64::from(2.0 * p.mu[i] + p.c);
    }

    let mut rhs = p.lambda_dual + p.theta * C64::from(p.c);
    for k in 0..k_users {
        let e2 = p.epsilon[k].norm_sqr();
        rhs += &cascade.a[k][k] * (p.epsilon[k].conj() * 2.0 * (1.0 + p.alpha[k]).sqrt());
        if e2 > 0.0 {
            for j in 0..p.w.len() {
                rhs -= &cascade.a[j][k] * (cascade.b[j][k].conj() * 2.0 * e2);
            }
        }
    }
    solve_hpd(q, &rhs, "reflection update")
}

/// `mu_i = max(0, 1 - |phi_i|^2)`.
pub fn update_mu(phi: &CVector) -> Vec<f64> {
    phi.iter().map(|z| (1.0 - z.norm_sqr()).max(0.0)).collect()
}

/// Block soft-thresholding: the maximizer over `theta_s` of
/// `-r_delta ||theta_s|| + Re(x_s^H theta_s) - c/2 ||theta_s||^2`.
///
/// Returns exact zeros when `||x_s|| <= r_delta`.
pub fn prox_group(x: &CVector, r_delta: f64, c: f64) -> CVector {
    let nx = x.norm();
    if nx <= r_delta {
        CVector::zeros(x.len())
    } else {
        x * C64::from((nx - r_delta) / (c * nx))
    }
}

/// Applies [`prox_group`] to every block of `c phi - Lambda`.
pub fn update_theta(phi: &CVector, lambda_dual: &CVector, r_delta: f64, c: f64, n: usize) -> CVector {
    let x = phi * C64::from(c) - lambda_dual;
    let mut theta = CVector::zeros(x.len());
    for s in 0..x.len() / n {
        let xs = x.rows(s * n, n).into_owned();
        theta.rows_mut(s * n, n).copy_from(&prox_group(&xs, r_delta, c));
    }
    theta
}

/// `Lambda <- Lambda + c (theta - phi)`.
pub fn update_lambda_dual(lambda_dual: &CVector, theta: &CVector, phi: &CVector, c: f64) -> CVector {
    lambda_dual + (theta - phi) * C64::from(c)
}

/// Result of one `(alpha, beta, W)` sweep with the reflection fixed.
pub struct BeamSweep {
    pub alpha: Vec<f64>,
    pub beta: Vec<C64>,
    pub w: Vec<CVector>,
    pub lambda0: f64,
    pub before: f64,
    pub after: f64,
}

pub fn beamforming_sweep(
    h: &[CVector],
    w: &[CVector],
    sigma2: f64,
    p_max: f64,
    mode: PowerMode,
    lambda0_prev: f64,
) -> Result<BeamSweep> {
    let gamma = sinr_from_combined(h, w, sigma2);
    let alpha = update_alpha(&gamma);
    let beta = update_beta(h, w, &alpha, sigma2);
    let family = BeamformerFamily::new(h, &alpha, &beta);
    let (w_new, lambda0) = enforce_power(&family, p_max, mode, lambda0_prev)?;
    let before = ratio_objective(h, w, &alpha, sigma2);
    let after = ratio_objective(h, &w_new, &alpha, sigma2);
    Ok(BeamSweep {
        alpha,
        beta,
        w: w_new,
        lambda0,
        before,
        after,
    })
}

/// Maximum-ratio transmission toward each direct channel, `p_max / K` each.
pub fn mrt_init(channels: &ChannelSet, p_max: f64) -> Vec<CVector> {
    let per_user = (p_max / channels.dims.k as f64).sqrt();
    channels
        .h_direct
        .iter()
        .map(|hd| {
            let n = hd.norm();
            if n > 0.0 {
                hd * C64::from(per_user / n)
            } else {
                let mut e = CVector::zeros(hd.len());
                e[0] = C64::from(per_user);
                e
            }
        })
        .collect()
}

/// Runs `(alpha, beta, W)` sweeps with the reflection fixed until the sum
/// rate settles. Returns the beamformers, the last multiplier and the number
/// of sweeps.
pub fn optimize_beamformers(
    channels: &ChannelSet,
    phi: &CVector,
    w_init: Vec<CVector>,
    sigma2: f64,
    p_max: f64,
    opts: &SolverOptions,
) -> Result<(Vec<CVector>, f64, usize)> {
    let h = combined_channel_raw(channels, phi);
    let mut w = w_init;
    let mut lambda0 = 0.0;
    let mut prev = sum_rate_from_sinr(&sinr_from_combined(&h, &w, sigma2));
    for it in 1..=opts.max_inner_iters {
        let sweep = beamforming_sweep(&h, &w, sigma2, p_max, opts.power_mode, lambda0)?;
        w = sweep.w;
        lambda0 = sweep.lambda0;
        if !w.iter().all(all_finite) {
            return Err(Error::NonFinite {
                iteration: it,
                quantity: "beamformers",
                trace: Vec::new(),
            });
        }
        let rate = sum_rate_from_sinr(&sinr_from_combined(&h, &w, sigma2));
        if (rate - prev).abs() <= opts.obj_rel_tol * rate.abs().max(f64::MIN_POSITIVE) {
            return Ok((w, lambda0, it));
        }
        prev = rate;
    }
    Ok((w, lambda0, opts.max_inner_iters))
}

fn random_unit_phases(len: usize, seed: u64) -> CVector {
    let mut rng = rng_from_seed(seed);
    CVector::from_fn(len, |_, _| {
        let t: f64 = rng.random::<f64>() * std::f64::consts::TAU;
        C64::from_polar(1.0, t)
    })
}

/// Initial state: MRT beamformers, unit-magnitude random phases with
/// `theta = phi`, zero duals.
pub fn initial_state(channels: &ChannelSet, p_max: f64, opts: &SolverOptions) -> FollowerState {
    let d = channels.dims;
    let phi = random_unit_phases(d.sn(), opts.init_seed);
    FollowerState {
        alpha: vec![0.0; d.k],
        beta: vec![C64::from(0.0); d.k],
        epsilon: vec![C64::from(0.0); d.k],
        theta: phi.clone(),
        phi,
        lambda_dual: CVector::zeros(d.sn()),
        mu: vec![0.0; d.sn()],
        lambda0: 0.0,
        c: opts.c,
        w: mrt_init(channels, p_max),
        block_size: d.n,
    }
}

fn check_inputs(channels: &ChannelSet, delta: f64, sigma2: f64, p_max: f64, opts: &SolverOptions) -> Result<()> {
    channels.validate()?;
    opts.validate()?;
    if !(delta >= 0.0 && delta.is_finite()) {
        return Err(Error::domain("delta", "finite and >= 0", delta));
    }
    if !(sigma2 > 0.0) {
        return Err(Error::domain("sigma2", "> 0", sigma2));
    }
    if !(p_max > 0.0 && p_max.is_finite()) {
        return Err(Error::domain("p_max", "finite and > 0", p_max));
    }
    Ok(())
}

/// Solves the follower's relaxed problem at price `price`.
///
/// Stops once the relative change of the dual-transform objective is below
/// `obj_rel_tol` and `||theta - phi||_inf < consensus_tol`, or after
/// `max_inner_iters`. The deployed reflection is `theta` (projected onto the
/// unit disk) and the beamformers are then re-optimized for it.
pub fn solve_follower(
    channels: &ChannelSet,
    price: Price,
    delta: f64,
    sigma2: f64,
    p_max: f64,
    opts: &SolverOptions,
) -> Result<FollowerSolution> {
    check_inputs(channels, delta, sigma2, p_max, opts)?;
    let d = channels.dims;
    let r_delta = price.get() * delta;

    if channels.is_zero() {
        let mut state = initial_state(channels, p_max, opts);
        state.w = vec![CVector::zeros(d.m); d.k];
        state.phi = CVector::zeros(d.sn());
        state.theta = CVector::zeros(d.sn());
        state.mu = update_mu(&state.phi);
        let record = IterationRecord {
            iteration: 1,
            objective: 0.0,
            power: 0.0,
            consensus_residual: 0.0,
            active_blocks: 0,
            w_sweep_before: 0.0,
            w_sweep_after: 0.0,
        };
        return Ok(FollowerSolution {
            w: BeamformingMatrix::zeros(d.k, d.m, p_max),
            phases: PhaseProfile::zeros(d.s, d.n),
            state,
            trace: vec![record],
            iterations: 1,
            converged: true,
        });
    }

    let mut st = initial_state(channels, p_max, opts);
    let mut trace: Vec<IterationRecord> = Vec::new();
    let mut prev_obj: Option<f64> = None;
    let mut converged = false;

    let non_finite = |iteration: usize, quantity: &'static str, trace: &[IterationRecord]| Error::NonFinite {
        iteration,
        quantity,
        trace: trace.to_vec(),
    };

    for it in 1..=opts.max_inner_iters {
        // alpha, beta, W
        let h = combined_channel_raw(channels, &st.phi);
        let sweep = beamforming_sweep(&h, &st.w, sigma2, p_max, opts.power_mode, st.lambda0)?;
        st.alpha = sweep.alpha;
        st.beta = sweep.beta;
        st.w = sweep.w;
        st.lambda0 = sweep.lambda0;
        if !st.w.iter().all(all_finite) {
            return Err(non_finite(it, "beamformers", &trace));
        }

        // epsilon, phi, mu
        let cascade = Cascade::new(channels, &st.w);
        st.epsilon = update_epsilon(&cascade, &st.phi, &st.alpha, sigma2);
        let mut phi = update_phi(
            channels,
            &cascade,
            &PhiUpdate {
                w: &st.w,
                alpha: &st.alpha,
                epsilon: &st.epsilon,
                theta: &st.theta,
                lambda_dual: &st.lambda_dual,
                mu: &st.mu,
                c: st.c,
            },
        )?;
        if !all_finite(&phi) {
            return Err(non_finite(it, "reflection vector", &trace));
        }
        st.mu = match opts.magnitude_rule {
            MagnitudeRule::Slack => update_mu(&phi),
            MagnitudeRule::Projection => vec![0.0; phi.len()],
        };
        clamp_unit_disk(&mut phi);
        st.phi = phi;

        // theta, Lambda
        st.theta = update_theta(&st.phi, &st.lambda_dual, r_delta, st.c, d.n);
        st.lambda_dual = update_lambda_dual(&st.lambda_dual, &st.theta, &st.phi, st.c);
        if !all_finite(&st.theta) || !all_finite(&st.lambda_dual) {
            return Err(non_finite(it, "consensus variables", &trace));
        }

        let h = combined_channel_raw(channels, &st.phi);
        let gamma = sinr_from_combined(&h, &st.w, sigma2);
        let norm_sum: f64 = block_norms_unchecked(&st.phi, d.n).iter().sum();
        let objective = dual_transform_objective(&gamma, &gamma, price.get(), delta, norm_sum);
        if !objective.is_finite() {
            return Err(non_finite(it, "objective", &trace));
        }
        let residual = st.consensus_residual();
        trace.push(IterationRecord {
            iteration: it,
            objective,
            power: total_power(&st.w),
            consensus_residual: residual,
            active_blocks: active_count(&block_norms_unchecked(&st.theta, d.n), ACTIVE_EPS),
            w_sweep_before: sweep.before,
            w_sweep_after: sweep.after,
        });

        if let Some(prev) = prev_obj {
            let settled = (objective - prev).abs() <= opts.obj_rel_tol * objective.abs().max(1e-12);
            if settled && residual < opts.consensus_tol {
                converged = true;
                break;
            }
        }
        prev_obj = Some(objective);
    }

    let mut deployed = st.theta.clone();
    clamp_unit_disk(&mut deployed);
    let (w, lambda0, _) = optimize_beamformers(channels, &deployed, st.w.clone(), sigma2, p_max, opts)?;
    st.w = w.clone();
    st.lambda0 = lambda0;

    let iterations = trace.len();
    Ok(FollowerSolution {
        w: BeamformingMatrix { w, p_max },
        phases: PhaseProfile::new(deployed, d.n)?,
        state: st,
        trace,
        iterations,
        converged,
    })
}
