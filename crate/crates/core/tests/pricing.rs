mod common;

use common::*;
use irs_pricing::follower::prox_group;
use irs_pricing::leader::{kappa, leader_value, optimal_price};
use irs_pricing::*;
use proptest::prelude::*;
use rand::Rng;

fn prox_objective(theta: &CVector, x: &CVector, r_delta: f64, c: f64) -> f64 {
    -r_delta * theta.norm() + x.dotc(theta).re - 0.5 * c * theta.norm_squared()
}

/// The maximizer lies along `x`, so a grid over the magnitude `t` of
/// `t x / ||x||` is a complete search.
fn prox_by_grid(x: &CVector, r_delta: f64, c: f64, points: usize) -> CVector {
    let nx = x.norm();
    let dir = x / C64::from(nx);
    let t_max = 2.0 * nx / c;
    let best = (0..=points)
        .map(|i| t_max * i as f64 / points as f64)
        .map(|t| (t, prox_objective(&(&dir * C64::from(t)), x, r_delta, c)))
        .fold((0.0, f64::NEG_INFINITY), |a, b| if b.1 > a.1 { b } else { a });
    &dir * C64::from(best.0)
}

#[test]
fn prox_matches_magnitude_grid() {
    let mut r = rng(11);
    for draw in 0..200 {
        let n = r.random_range(1..6);
        let x = cvec(n, &mut r);
        let r_delta = r.random_range(0.0..2.0 * x.norm());
        let c = r.random_range(0.1..5.0);
        let got = prox_group(&x, r_delta, c);
        let grid = prox_by_grid(&x, r_delta, c, 10_000);
        assert!((&got - &grid).norm() < 1e-3 * (1.0 + x.norm() / c), "draw {draw}");
        assert!(prox_objective(&got, &x, r_delta, c) >= prox_objective(&grid, &x, r_delta, c) - 1e-12);
        if x.norm() <= r_delta {
            assert!(got.iter().all(|z| *z == C64::from(0.0)));
        }
    }
}

#[test]
fn kappa_follows_prox_branch() {
    let mut r = rng(12);
    for _ in 0..200 {
        let x = cvec(3, &mut r);
        let r_delta = r.random_range(0.0..3.0);
        let active = kappa(&[x.norm()], r_delta)[0];
        let nonzero = prox_group(&x, r_delta, 1.0).iter().any(|z| z.norm() > 0.0);
        assert_eq!(active, nonzero);
    }
}

#[test]
fn kappa_examples() {
    assert_eq!(kappa(&[0.0, 0.0], 0.1), vec![false, false]);
    assert_eq!(kappa(&[5.0, 0.05], 0.1), vec![true, false]);
}

#[test]
fn leader_value_is_price_times_pruned_norms() {
    let mut r = rng(13);
    for _ in 0..100 {
        let blocks: Vec<CVector> = (0..4).map(|_| cvec(3, &mut r) * C64::from(r.random_range(0.0..2.0))).collect();
        let norms: Vec<f64> = blocks.iter().map(|b| b.norm()).collect();
        let delta = r.random_range(0.05..0.5);
        let c = r.random_range(0.1..3.0);
        let price = r.random_range(0.1..10.0);
        let revenue: f64 = blocks
            .iter()
            .map(|x| price * delta * prox_group(x, price * delta, c).norm())
            .sum();
        let v = leader_value(price, &norms, delta, c).unwrap();
        assert!((v - revenue).abs() < 1e-12 * (1.0 + revenue.abs()));
    }
}

#[test]
fn optimal_price_beats_price_grid() {
    let mut r = rng(14);
    for draw in 0..100 {
        let s = r.random_range(1..9);
        // Mix large and small norms so that partial active sets occur.
        let norms: Vec<f64> = (0..s)
            .map(|_| {
                if r.random_bool(0.3) {
                    0.0
                } else {
                    10f64.powf(r.random_range(-2.0..1.0))
                }
            })
            .collect();
        let delta = r.random_range(0.05..0.5);
        let c = r.random_range(0.1..3.0);
        let choice = optimal_price(&norms, delta, c, Price::new(1.0).unwrap()).unwrap();
        if norms.iter().all(|&x| x == 0.0) {
            assert!(choice.fallback);
            continue;
        }
        let r_star = choice.price.get();
        let v_star = leader_value(r_star, &norms, delta, c).unwrap();
        assert!((v_star - choice.value).abs() < 1e-12);
        let best_grid = (1..=1000)
            .map(|i| 3.0 * r_star * i as f64 / 1000.0)
            .map(|p| leader_value(p, &norms, delta, c).unwrap())
            .fold(f64::NEG_INFINITY, f64::max);
        assert!(v_star >= best_grid - 1e-6, "draw {draw}: {v_star} < {best_grid}");
        assert!(v_star >= 0.0);
    }
}

proptest! {
    #[test]
    fn optimal_price_is_self_consistent(norms in prop::collection::vec(0.0f64..5.0, 1..8), delta in 0.05f64..1.0) {
        let choice = optimal_price(&norms, delta, 1.0, Price::new(1.0).unwrap()).unwrap();
        prop_assume!(!choice.fallback);
        let active = kappa(&norms, choice.price.get() * delta).iter().filter(|&&k| k).count();
        prop_assert_eq!(active, choice.active);
        let active_sum: f64 = norms.iter().filter(|&&x| x > choice.price.get() * delta).sum();
        prop_assert!((choice.price.get() - active_sum / (2.0 * delta * active as f64)).abs() < 1e-12 * (1.0 + choice.price.get()));
    }

    #[test]
    fn prox_never_grows_past_unpenalized_step(re in prop::collection::vec(-3.0f64..3.0, 1..6), r_delta in 0.0f64..4.0, c in 0.1f64..4.0) {
        let x = CVector::from_iterator(re.len(), re.iter().map(|&v| C64::new(v, -0.5 * v)));
        let t = prox_group(&x, r_delta, c);
        prop_assert!(t.norm() <= x.norm() / c + 1e-12);
    }
}
