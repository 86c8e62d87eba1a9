//! Problem-instance generation: deployment geometry, log-distance path loss,
//! Rayleigh small-scale fading and the stacking of per-module IRS channels.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::{CMatrix, CVector, C64};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn distance(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// Planar deployment in meters.
///
/// An empty `user_positions` means users are dropped uniformly in the cell
/// every time an instance is sampled.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Geometry {
    pub bs_pos: Point,
    pub irs_pos: Point,
    pub cell_center: Point,
    pub cell_radius: f64,
    pub user_positions: Vec<Point>,
}

impl Default for Geometry {
    fn default() -> Self {
        Geometry {
            bs_pos: Point::new(0.0, 0.0),
            irs_pos: Point::new(50.0, 50.0),
            cell_center: Point::new(200.0, 0.0),
            cell_radius: 10.0,
            user_positions: Vec::new(),
        }
    }
}

impl Geometry {
    pub fn validate(&self) -> Result<()> {
        let pts = [self.bs_pos, self.irs_pos, self.cell_center];
        for p in pts.iter().chain(self.user_positions.iter()) {
            if !(p.x.is_finite() && p.y.is_finite()) {
                return Err(Error::domain("coordinate", "finite", f64::NAN));
            }
        }
        if !(self.cell_radius.is_finite() && self.cell_radius >= 0.0) {
            return Err(Error::domain("cell_radius", "finite and >= 0", self.cell_radius));
        }
        for p in &self.user_positions {
            let d = p.distance(&self.cell_center);
            if d > self.cell_radius * (1.0 + 1e-12) {
                return Err(Error::domain(
                    "user distance from cell center",
                    "within cell_radius",
                    d,
                ));
            }
        }
        Ok(())
    }
}

/// Large-scale propagation parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FadingParams {
    /// Path loss at the 1 m reference distance, dB.
    pub pl_ref_db: f64,
    /// Path-loss exponent of the BS-user link.
    pub exp_direct: f64,
    /// Path-loss exponent of the BS-IRS and IRS-user links.
    pub exp_irs: f64,
    /// Receiver noise power sigma^2, dBm.
    pub noise_power_dbm: f64,
    /// Standard-deviation multiplier on the small-scale fading. `0` yields
    /// all-zero channels.
    pub fading_scale: f64,
}

impl Default for FadingParams {
    fn default() -> Self {
        FadingParams {
            pl_ref_db: 30.0,
            exp_direct: 3.5,
            exp_irs: 2.0,
            noise_power_dbm: -80.0,
            fading_scale: 1.0,
        }
    }
}

impl FadingParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.exp_direct > 0.0) {
            return Err(Error::domain("exp_direct", "> 0", self.exp_direct));
        }
        if !(self.exp_irs > 0.0) {
            return Err(Error::domain("exp_irs", "> 0", self.exp_irs));
        }
        if !(self.pl_ref_db >= 0.0) {
            return Err(Error::domain("pl_ref_db", ">= 0", self.pl_ref_db));
        }
        if !self.noise_power_dbm.is_finite() {
            return Err(Error::domain("noise_power_dbm", "finite", self.noise_power_dbm));
        }
        if !(self.fading_scale >= 0.0 && self.fading_scale.is_finite()) {
            return Err(Error::domain("fading_scale", "finite and >= 0", self.fading_scale));
        }
        Ok(())
    }

    pub fn noise_power_watts(&self) -> f64 {
        dbm_to_watts(self.noise_power_dbm)
    }
}

/// Problem dimensions: BS antennas, users, IRS modules, elements per module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dims {
    pub m: usize,
    pub k: usize,
    pub s: usize,
    pub n: usize,
}

impl Dims {
    pub const fn new(m: usize, k: usize, s: usize, n: usize) -> Self {
        Dims { m, k, s, n }
    }

    /// Total number of reflecting elements.
    pub const fn sn(&self) -> usize {
        self.s * self.n
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("M", self.m), ("K", self.k), ("S", self.s), ("N", self.n)] {
            if v == 0 {
                return Err(Error::domain(name, ">= 1", v as f64));
            }
        }
        Ok(())
    }
}

/// All channels of one instance.
///
/// `h_irs` stacks the per-module BS-to-IRS matrices row-wise; block `s`
/// occupies rows `s*N .. (s+1)*N`. Each `g_irs[k]` is stacked the same way.
#[derive(Clone, Debug, PartialEq)]
pub struct ChannelSet {
    pub h_direct: Vec<CVector>,
    pub h_irs: CMatrix,
    pub g_irs: Vec<CVector>,
    pub dims: Dims,
}

impl ChannelSet {
    pub fn zeros(dims: Dims) -> Self {
        ChannelSet {
            h_direct: vec![CVector::zeros(dims.m); dims.k],
            h_irs: CMatrix::zeros(dims.sn(), dims.m),
            g_irs: vec![CVector::zeros(dims.sn()); dims.k],
            dims,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let d = self.dims;
        d.validate()?;
        if self.h_direct.len() != d.k {
            return Err(Error::dim("h_direct count", d.k, self.h_direct.len()));
        }
        if self.g_irs.len() != d.k {
            return Err(Error::dim("g_irs count", d.k, self.g_irs.len()));
        }
        if self.h_irs.nrows() != d.sn() {
            return Err(Error::dim("h_irs rows", d.sn(), self.h_irs.nrows()));
        }
        if self.h_irs.ncols() != d.m {
            return Err(Error::dim("h_irs cols", d.m, self.h_irs.ncols()));
        }
        for h in &self.h_direct {
            if h.len() != d.m {
                return Err(Error::dim("h_direct length", d.m, h.len()));
            }
        }
        for g in &self.g_irs {
            if g.len() != d.sn() {
                return Err(Error::dim("g_irs length", d.sn(), g.len()));
            }
        }
        Ok(())
    }

    /// True when every channel coefficient is exactly zero.
    pub fn is_zero(&self) -> bool {
        let zero = |z: &C64| z.re == 0.0 && z.im == 0.0;
        self.h_irs.iter().all(zero)
            && self.h_direct.iter().all(|v| v.iter().all(zero))
            && self.g_irs.iter().all(|v| v.iter().all(zero))
    }

    /// Module `s` of the BS-to-IRS matrix (N x M).
    pub fn module_h(&self, s: usize) -> CMatrix {
        let n = self.dims.n;
        self.h_irs.rows(s * n, n).into_owned()
    }

    /// Module `s` of user `k`'s IRS-to-user vector.
    pub fn module_g(&self, s: usize, k: usize) -> CVector {
        let n = self.dims.n;
        self.g_irs[k].rows(s * n, n).into_owned()
    }
}

/// Log-distance path loss `pl_ref_db + 10 * exponent * log10(distance)` in dB.
pub fn pathloss_db(distance: f64, exponent: f64, pl_ref_db: f64) -> Result<f64> {
    if !(distance > 0.0) || !distance.is_finite() {
        return Err(Error::domain("distance", "finite and > 0", distance));
    }
    Ok(pl_ref_db + 10.0 * exponent * distance.log10())
}

/// `10^((dBm - 30) / 10)`.
pub fn dbm_to_watts(dbm: f64) -> f64 {
    10f64.powf((dbm - 30.0) / 10.0)
}

fn amplitude_gain(loss_db: f64) -> f64 {
    10f64.powf(-loss_db / 20.0)
}

/// SplitMix64 finalizer, used to derive independent sub-stream seeds.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives a sub-stream seed from a base seed and a path of stream indices.
pub fn derive_seed(base: u64, path: &[u64]) -> u64 {
    path.iter()
        .fold(splitmix64(base), |acc, &p| splitmix64(acc ^ splitmix64(p)))
}

/// The generator every sampler in this crate uses.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Circularly-symmetric complex Gaussian with unit variance.
pub fn sample_cn<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

fn sample_in_disk<R: Rng + ?Sized>(rng: &mut R, center: Point, radius: f64) -> Point {
    let u: f64 = rng.random();
    let v: f64 = rng.random();
    let rho = radius * u.sqrt();
    let ang = 2.0 * std::f64::consts::PI * v;
    Point::new(center.x + rho * ang.cos(), center.y + rho * ang.sin())
}

/// Draws one Rayleigh-faded instance.
///
/// Deterministic in all arguments. Each entry is CN(0, 1) scaled by the
/// amplitude gain of its link; the IRS links use `exp_irs` for both hops.
pub fn sample_instance(
    geometry: &Geometry,
    fading: &FadingParams,
    dims: Dims,
    seed: u64,
) -> Result<ChannelSet> {
    dims.validate()?;
    geometry.validate()?;
    fading.validate()?;
    let mut rng = rng_from_seed(seed);

    let users: Vec<Point> = if geometry.user_positions.is_empty() {
        (0..dims.k)
            .map(|_| sample_in_disk(&mut rng, geometry.cell_center, geometry.cell_radius))
            .collect()
    } else if geometry.user_positions.len() == dims.k {
        geometry.user_positions.clone()
    } else {
        return Err(Error::dim("user_positions", dims.k, geometry.user_positions.len()));
    };

    let scale = fading.fading_scale;
    let bs_irs = geometry.bs_pos.distance(&geometry.irs_pos);
    let a_bs_irs = scale * amplitude_gain(pathloss_db(bs_irs, fading.exp_irs, fading.pl_ref_db)?);

    let mut per_module_h = Vec::with_capacity(dims.s);
    for _ in 0..dims.s {
        per_module_h.push(CMatrix::from_fn(dims.n, dims.m, |_, _| {
            sample_cn(&mut rng) * a_bs_irs
        }));
    }

    let mut per_user_g = Vec::with_capacity(dims.k);
    let mut h_direct = Vec::with_capacity(dims.k);
    for user in &users {
        let d_irs = geometry.irs_pos.distance(user);
        let a_irs =
            scale * amplitude_gain(pathloss_db(d_irs, fading.exp_irs, fading.pl_ref_db)?);
        let blocks: Vec<CVector> = (0..dims.s)
            .map(|_| CVector::from_fn(dims.n, |_, _| sample_cn(&mut rng) * a_irs))
            .collect();
        per_user_g.push(blocks);

        let d_direct = geometry.bs_pos.distance(user);
        let a_direct =
            scale * amplitude_gain(pathloss_db(d_direct, fading.exp_direct, fading.pl_ref_db)?);
        h_direct.push(CVector::from_fn(dims.m, |_, _| sample_cn(&mut rng) * a_direct));
    }

    let (h_irs, g_irs) = stack_blocks(&per_module_h, &per_user_g)?;
    Ok(ChannelSet {
        h_direct,
        h_irs,
        g_irs,
        dims,
    })
}

/// Stacks per-module channels in module order.
///
/// `per_module_h[s]` is the N x M BS-to-module matrix; `per_user_g[k][s]` is
/// the length-N module-to-user vector.
pub fn stack_blocks(
    per_module_h: &[CMatrix],
    per_user_g: &[Vec<CVector>],
) -> Result<(CMatrix, Vec<CVector>)> {
    let s_count = per_module_h.len();
    let first = per_module_h
        .first()
        .ok_or(Error::dim("stack_blocks module count", 1, 0))?;
    let (n, m) = first.shape();
    for h in per_module_h {
        if h.nrows() != n {
            return Err(Error::dim("module rows", n, h.nrows()));
        }
        if h.ncols() != m {
            return Err(Error::dim("module cols", m, h.ncols()));
        }
    }
    let mut stacked = CMatrix::zeros(s_count * n, m);
    for (s, h) in per_module_h.iter().enumerate() {
        stacked.rows_mut(s * n, n).copy_from(h);
    }

    let mut gs = Vec::with_capacity(per_user_g.len());
    for blocks in per_user_g {
        if blocks.len() != s_count {
            return Err(Error::dim("user module count", s_count, blocks.len()));
        }
        let mut g = CVector::zeros(s_count * n);
        for (s, b) in blocks.iter().enumerate() {
            if b.len() != n {
                return Err(Error::dim("module vector length", n, b.len()));
            }
            g.rows_mut(s * n, n).copy_from(b);
        }
        gs.push(g);
    }
    Ok((stacked, gs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn pathloss_reference_and_hand_values() {
        assert!((pathloss_db(1.0, 3.5, 30.0).unwrap() - 30.0).abs() < 1e-12);
        assert!((pathloss_db(10.0, 2.0, 30.0).unwrap() - 50.0).abs() < 1e-12);
        assert!((pathloss_db(100.0, 3.5, 30.0).unwrap() - 100.0).abs() < 1e-12);
    }

    #[test]
    fn pathloss_rejects_nonpositive_distance() {
        assert!(pathloss_db(0.0, 2.0, 30.0).is_err());
        assert!(pathloss_db(-3.0, 2.0, 30.0).is_err());
    }

    #[test]
    fn dbm_conversion() {
        assert!((dbm_to_watts(30.0) - 1.0).abs() < 1e-15);
        assert!((dbm_to_watts(-80.0) - 1e-11).abs() < 1e-25);
    }

    #[test]
    fn instance_shapes_follow_dims() {
        let dims = Dims::new(4, 4, 8, 8);
        let ch = sample_instance(&Geometry::default(), &FadingParams::default(), dims, 3).unwrap();
        assert_eq!(ch.h_irs.shape(), (64, 4));
        assert!(ch.g_irs.iter().all(|g| g.len() == 64));
        assert!(ch.h_direct.iter().all(|h| h.len() == 4));
        ch.validate().unwrap();
    }

    #[test]
    fn same_seed_is_bit_identical() {
        let dims = Dims::new(2, 3, 2, 4);
        let g = Geometry::default();
        let f = FadingParams::default();
        let a = sample_instance(&g, &f, dims, 99).unwrap();
        let b = sample_instance(&g, &f, dims, 99).unwrap();
        assert_eq!(a, b);
        let c = sample_instance(&g, &f, dims, 100).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn zero_fading_scale_gives_zero_channels() {
        let f = FadingParams {
            fading_scale: 0.0,
            ..Default::default()
        };
        let ch = sample_instance(&Geometry::default(), &f, Dims::new(2, 2, 2, 2), 1).unwrap();
        assert!(ch.is_zero());
    }

    #[test]
    fn fixed_user_positions_are_used_and_checked() {
        let mut g = Geometry {
            user_positions: vec![Point::new(200.0, 0.0)],
            ..Default::default()
        };
        assert!(sample_instance(&g, &FadingParams::default(), Dims::new(1, 1, 1, 1), 0).is_ok());
        assert!(sample_instance(&g, &FadingParams::default(), Dims::new(1, 2, 1, 1), 0).is_err());
        g.user_positions = vec![Point::new(0.0, 0.0)];
        assert!(g.validate().is_err());
    }

    #[test]
    fn reference_loss_plus_ten_db_scales_amplitudes() {
        let dims = Dims::new(2, 2, 2, 3);
        let g = Geometry::default();
        let f = FadingParams::default();
        let f10 = FadingParams {
            pl_ref_db: f.pl_ref_db + 10.0,
            ..f.clone()
        };
        let a = sample_instance(&g, &f, dims, 5).unwrap();
        let b = sample_instance(&g, &f10, dims, 5).unwrap();
        let ratio = 10f64.powf(-0.5);
        let check = |x: &C64, y: &C64| assert!((x * ratio - y).norm() <= 1e-12 * x.norm());
        for (x, y) in a.h_irs.iter().zip(b.h_irs.iter()) {
            check(x, y);
        }
        for k in 0..2 {
            for (x, y) in a.h_direct[k].iter().zip(b.h_direct[k].iter()) {
                check(x, y);
            }
            for (x, y) in a.g_irs[k].iter().zip(b.g_irs[k].iter()) {
                check(x, y);
            }
        }
    }

    #[test]
    fn small_scale_power_is_unit() {
        let mut rng = rng_from_seed(11);
        let n = 20_000;
        let p: f64 = (0..n).map(|_| sample_cn(&mut rng).norm_sqr()).sum::<f64>() / n as f64;
        assert!((p - 1.0).abs() < 0.05, "mean power {p}");
    }

    #[test]
    fn users_land_inside_cell() {
        let g = Geometry::default();
        let mut rng = rng_from_seed(2);
        for _ in 0..1000 {
            let p = sample_in_disk(&mut rng, g.cell_center, g.cell_radius);
            assert!(p.distance(&g.cell_center) <= g.cell_radius);
        }
    }

    #[test]
    fn stack_single_module_is_identity() {
        let h = CMatrix::from_fn(3, 2, |i, j| c(i as f64, j as f64));
        let g = CVector::from_fn(3, |i, _| c(0.0, i as f64));
        let (hs, gs) = stack_blocks(&[h.clone()], &[vec![g.clone()]]).unwrap();
        assert_eq!(hs, h);
        assert_eq!(gs[0], g);
    }

    #[test]
    fn stack_two_scalar_modules() {
        let h1 = CMatrix::from_element(1, 1, c(1.0, 0.0));
        let h2 = CMatrix::from_element(1, 1, c(0.0, 2.0));
        let (hs, _) = stack_blocks(&[h1, h2], &[]).unwrap();
        assert_eq!(hs[(0, 0)], c(1.0, 0.0));
        assert_eq!(hs[(1, 0)], c(0.0, 2.0));
    }

    #[test]
    fn stack_rejects_mismatch() {
        let h1 = CMatrix::zeros(2, 2);
        let h2 = CMatrix::zeros(3, 2);
        assert!(stack_blocks(&[h1.clone(), h2], &[]).is_err());
        let g = vec![vec![CVector::zeros(2)]];
        assert!(stack_blocks(&[h1.clone(), h1], &g).is_err());
        assert!(stack_blocks(&[], &[]).is_err());
    }

    proptest! {
        #[test]
        fn stack_extract_round_trip(s in 1usize..5, n in 1usize..4, m in 1usize..4, k in 1usize..3, seed in any::<u64>()) {
            let mut rng = rng_from_seed(seed);
            let hs: Vec<CMatrix> = (0..s).map(|_| CMatrix::from_fn(n, m, |_, _| sample_cn(&mut rng))).collect();
            let gs: Vec<Vec<CVector>> = (0..k)
                .map(|_| (0..s).map(|_| CVector::from_fn(n, |_, _| sample_cn(&mut rng))).collect())
                .collect();
            let (h, g) = stack_blocks(&hs, &gs).unwrap();
            let ch = ChannelSet { h_direct: vec![CVector::zeros(m); k], h_irs: h, g_irs: g, dims: Dims::new(m, k, s, n) };
            ch.validate().unwrap();
            for si in 0..s {
                prop_assert_eq!(&ch.module_h(si), &hs[si]);
                for ki in 0..k {
                    prop_assert_eq!(&ch.module_g(si, ki), &gs[ki][si]);
                }
            }
        }

        #[test]
        fn pathloss_strictly_increasing(d in 0.1f64..1e4, step in 1e-3f64..100.0, e in 0.1f64..6.0) {
            prop_assert!(pathloss_db(d + step, e, 30.0).unwrap() > pathloss_db(d, e, 30.0).unwrap());
        }
    }
}
