#![allow(dead_code)]

use irs_pricing::channel::{dbm_to_watts, rng_from_seed, sample_cn, sample_instance};
use irs_pricing::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Unit-variance channels with no path loss.
pub fn unit_channels(dims: Dims, rng: &mut ChaCha8Rng) -> ChannelSet {
    ChannelSet {
        h_direct: (0..dims.k).map(|_| cvec(dims.m, rng)).collect(),
        h_irs: CMatrix::from_fn(dims.sn(), dims.m, |_, _| sample_cn(rng)),
        g_irs: (0..dims.k).map(|_| cvec(dims.sn(), rng)).collect(),
        dims,
    }
}

pub fn cvec(len: usize, rng: &mut ChaCha8Rng) -> CVector {
    CVector::from_fn(len, |_, _| sample_cn(rng))
}

pub fn beams(dims: Dims, rng: &mut ChaCha8Rng) -> Vec<CVector> {
    (0..dims.k).map(|_| cvec(dims.m, rng)).collect()
}

/// Uniform point of the closed unit disk per element.
pub fn disk_phases(len: usize, rng: &mut ChaCha8Rng) -> CVector {
    CVector::from_fn(len, |_, _| {
        let r: f64 = rng.random::<f64>().sqrt();
        let t: f64 = rng.random::<f64>() * std::f64::consts::TAU;
        C64::from_polar(r, t)
    })
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    rng_from_seed(seed)
}

/// Default-geometry instance plus game parameters at `p_dbm`.
pub fn paper_instance(dims: Dims, seed: u64, p_dbm: f64) -> (ChannelSet, GameParams) {
    let fading = FadingParams::default();
    let ch = sample_instance(&Geometry::default(), &fading, dims, seed).unwrap();
    let params = GameParams {
        delta: 0.1,
        sigma2: fading.noise_power_watts(),
        p_max: dbm_to_watts(p_dbm),
        solver: SolverOptions::default(),
    };
    (ch, params)
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}
