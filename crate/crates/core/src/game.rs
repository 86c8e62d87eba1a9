//! Strategy objects of both players and the metrics shared by the solvers:
//! combined channels, SINR, block norms and the two utilities.
//!
//! Phase convention: the stored vector `phi` holds the conjugates of the
//! diagonal of the reflection matrix, so that `g^H Phi H = phi^H diag(g^H) H`.

use crate::channel::ChannelSet;
use crate::error::{Error, Result};
use crate::linalg::inner;
use crate::{CMatrix, CVector, C64};

/// Block-norm threshold above which a module counts as active.
pub const ACTIVE_EPS: f64 = 1e-6;

/// Slack allowed on the unit-magnitude and power constraints.
pub const FEAS_TOL: f64 = 1e-6;

/// Reflection coefficients of `S` modules with `N` elements each.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseProfile {
    phi: CVector,
    block_size: usize,
}

impl PhaseProfile {
    pub fn new(phi: CVector, block_size: usize) -> Result<Self> {
        if block_size == 0 || phi.len() % block_size != 0 || phi.is_empty() {
            return Err(Error::dim("phase profile length", block_size, phi.len()));
        }
        if let Some(m) = phi.iter().map(|z| z.norm()).find(|&m| !(m <= 1.0 + FEAS_TOL)) {
            return Err(Error::domain("reflection magnitude", "<= 1", m));
        }
        Ok(PhaseProfile { phi, block_size })
    }

    pub fn zeros(num_blocks: usize, block_size: usize) -> Self {
        PhaseProfile {
            phi: CVector::zeros(num_blocks * block_size),
            block_size,
        }
    }

    pub fn phi(&self) -> &CVector {
        &self.phi
    }

    pub fn into_inner(self) -> CVector {
        self.phi
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn num_blocks(&self) -> usize {
        self.phi.len() / self.block_size
    }

    pub fn block(&self, s: usize) -> CVector {
        self.phi.rows(s * self.block_size, self.block_size).into_owned()
    }

    pub fn block_norms(&self) -> Vec<f64> {
        block_norms_unchecked(&self.phi, self.block_size)
    }

    pub fn active_modules(&self) -> usize {
        active_count(&self.block_norms(), ACTIVE_EPS)
    }

    /// The diagonal reflection matrix `Phi = diag(conj(phi))`.
    pub fn reflection_matrix(&self) -> CMatrix {
        CMatrix::from_diagonal(&self.phi.map(|z| z.conj()))
    }
}

/// Transmit beamformers `w_1..w_K` under a sum-power budget.
#[derive(Clone, Debug, PartialEq)]
pub struct BeamformingMatrix {
    pub w: Vec<CVector>,
    pub p_max: f64,
}

impl BeamformingMatrix {
    pub fn new(w: Vec<CVector>, p_max: f64) -> Result<Self> {
        if !(p_max > 0.0) {
            return Err(Error::domain("p_max", "> 0", p_max));
        }
        let bf = BeamformingMatrix { w, p_max };
        let p = bf.power();
        if !(p <= p_max * (1.0 + FEAS_TOL)) {
            return Err(Error::domain("beamforming power", "<= p_max", p));
        }
        Ok(bf)
    }

    pub fn zeros(k: usize, m: usize, p_max: f64) -> Self {
        BeamformingMatrix {
            w: vec![CVector::zeros(m); k],
            p_max,
        }
    }

    pub fn power(&self) -> f64 {
        total_power(&self.w)
    }
}

pub fn total_power(w: &[CVector]) -> f64 {
    w.iter().map(|v| v.norm_squared()).sum()
}

/// Price per unit of purchased reflection resource. Always strictly positive.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Price(f64);

impl Price {
    pub fn new(r: f64) -> Result<Self> {
        if r > 0.0 && r.is_finite() {
            Ok(Price(r))
        } else {
            Err(Error::domain("price", "finite and > 0", r))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UtilityKind {
    /// Block-l1 cost `r * delta * sum_s ||phi_s||`.
    Relaxed,
    /// Module-count cost `r * #active`.
    Discrete,
}

fn check_phases(channels: &ChannelSet, phases: &PhaseProfile) -> Result<()> {
    let d = channels.dims;
    if phases.phi.len() != d.sn() {
        return Err(Error::dim("phase profile length", d.sn(), phases.phi.len()));
    }
    if phases.block_size != d.n {
        return Err(Error::dim("phase block size", d.n, phases.block_size));
    }
    Ok(())
}

fn check_beams(channels: &ChannelSet, w: &[CVector]) -> Result<()> {
    let d = channels.dims;
    if w.len() != d.k {
        return Err(Error::dim("beamformer count", d.k, w.len()));
    }
    for v in w {
        if v.len() != d.m {
            return Err(Error::dim("beamformer length", d.m, v.len()));
        }
    }
    Ok(())
}

/// Combined BS-to-user channels `h_k = h_{d,k} + H^H diag(g_k) phi`.
pub fn combined_channel(channels: &ChannelSet, phases: &PhaseProfile) -> Result<Vec<CVector>> {
    check_phases(channels, phases)?;
    Ok(combined_channel_raw(channels, &phases.phi))
}

pub(crate) fn combined_channel_raw(channels: &ChannelSet, phi: &CVector) -> Vec<CVector> {
    channels
        .h_direct
        .iter()
        .zip(&channels.g_irs)
        .map(|(hd, g)| hd + channels.h_irs.ad_mul(&g.component_mul(phi)))
        .collect()
}

/// Per-user SINR given combined channels.
pub fn sinr_from_combined(h: &[CVector], w: &[CVector], sigma2: f64) -> Vec<f64> {
    h.iter()
        .enumerate()
        .map(|(k, hk)| {
            let mut signal = 0.0;
            let mut interference = 0.0;
            for (j, wj) in w.iter().enumerate() {
                let p = inner(hk, wj).norm_sqr();
                if j == k {
                    signal = p;
                } else {
                    interference += p;
                }
            }
            signal / (interference + sigma2)
        })
        .collect()
}

pub fn sinr(
    channels: &ChannelSet,
    phases: &PhaseProfile,
    w: &BeamformingMatrix,
    sigma2: f64,
) -> Result<Vec<f64>> {
    if !(sigma2 > 0.0) {
        return Err(Error::domain("sigma2", "> 0", sigma2));
    }
    check_beams(channels, &w.w)?;
    let h = combined_channel(channels, phases)?;
    Ok(sinr_from_combined(&h, &w.w, sigma2))
}

pub fn sum_rate_from_sinr(gamma: &[f64]) -> f64 {
    gamma.iter().map(|g| (1.0 + g).log2()).sum()
}

pub fn sum_rate(
    channels: &ChannelSet,
    phases: &PhaseProfile,
    w: &BeamformingMatrix,
    sigma2: f64,
) -> Result<f64> {
    Ok(sum_rate_from_sinr(&sinr(channels, phases, w, sigma2)?))
}

/// Euclidean norm of each length-`n` block.
pub fn block_norms(v: &CVector, n: usize) -> Result<Vec<f64>> {
    if n == 0 || v.len() % n != 0 {
        return Err(Error::dim("block_norms length", n, v.len()));
    }
    Ok(block_norms_unchecked(v, n))
}

pub(crate) fn block_norms_unchecked(v: &CVector, n: usize) -> Vec<f64> {
    v.as_slice()
        .chunks(n)
        .map(|b| b.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect()
}

pub fn active_count(norms: &[f64], eps: f64) -> usize {
    norms.iter().filter(|&&x| x > eps).count()
}

/// The base station's utility: sum rate minus what it pays the IRS.
///
/// `price` may be zero here, in which case the utility is the sum rate.
pub fn utility_follower(
    channels: &ChannelSet,
    phases: &PhaseProfile,
    w: &BeamformingMatrix,
    price: f64,
    delta: f64,
    sigma2: f64,
    kind: UtilityKind,
) -> Result<f64> {
    let rate = sum_rate(channels, phases, w, sigma2)?;
    let norms = phases.block_norms();
    Ok(rate - price * cost_units(&norms, delta, kind))
}

fn cost_units(norms: &[f64], delta: f64, kind: UtilityKind) -> f64 {
    match kind {
        UtilityKind::Relaxed => delta * norms.iter().sum::<f64>(),
        UtilityKind::Discrete => active_count(norms, ACTIVE_EPS) as f64,
    }
}

/// The IRS operator's revenue for the reflection profile `v` (blocks of `n`).
pub fn utility_leader(price: f64, delta: f64, v: &CVector, n: usize, kind: UtilityKind) -> Result<f64> {
    if !(price > 0.0) {
        return Err(Error::domain("price", "> 0", price));
    }
    let norms = block_norms(v, n)?;
    Ok(price * cost_units(&norms, delta, kind))
}

/// Convenience: `(1 + i)`-style literal constructor used in tests and demos.
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}
