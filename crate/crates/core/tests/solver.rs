mod common;

use common::*;
use irs_pricing::follower::solve_follower;
use irs_pricing::leader::*;
use irs_pricing::*;

fn assert_feasible(out: &GameOutcome, p_max: f64) {
    assert!(out.w_star.power() <= p_max * (1.0 + 1e-6));
    assert!(out.phases_star.phi().iter().all(|z| z.norm() <= 1.0 + 1e-6));
    let n = out.phases_star.block_size();
    for (s, norm) in out.phases_star.block_norms().iter().enumerate() {
        if *norm == 0.0 {
            assert!(out.phases_star.phi().rows(s * n, n).iter().all(|z| *z == C64::from(0.0)));
        }
    }
    assert!(out.sum_rate >= 0.0);
    assert!(out.active_modules <= out.phases_star.num_blocks());
}

#[test]
fn follower_solutions_are_feasible() {
    let dims = Dims::new(4, 4, 4, 4);
    for seed in 0..10 {
        let (ch, params) = paper_instance(dims, seed, 0.0);
        for price in [1e-4, 2e-3, 1.0] {
            let sol = solve_follower(&ch, Price::new(price).unwrap(), 0.1, params.sigma2, params.p_max, &params.solver).unwrap();
            assert!(sol.w.power() <= params.p_max * (1.0 + 1e-6));
            assert!(sol.phases.phi().iter().all(|z| z.norm() <= 1.0 + 1e-6));
            assert!(sol.state.alpha.iter().all(|&a| a >= 0.0));
            assert!(sol.state.mu.iter().all(|&m| m >= 0.0));
            if sol.converged {
                assert!(sol.state.consensus_residual() < params.solver.consensus_tol);
            }
            for rec in &sol.trace {
                assert!(rec.w_sweep_after >= rec.w_sweep_before - 1e-8);
            }
        }
    }
}

#[test]
fn zero_channels_are_trivial() {
    let dims = Dims::new(2, 2, 2, 2);
    let ch = ChannelSet::zeros(dims);
    let (_, params) = paper_instance(dims, 0, 0.0);
    let sol = solve_follower(&ch, Price::new(1.0).unwrap(), 0.1, params.sigma2, params.p_max, &params.solver).unwrap();
    assert_eq!(sol.iterations, 1);
    assert_eq!(sol.w.power(), 0.0);
    assert!(sol.phases.phi().iter().all(|z| *z == C64::from(0.0)));
    assert_eq!(sol.trace[0].objective, 0.0);

    let game = solve_game(&ch, &params, &GameOptions::default()).unwrap();
    assert!(game.price_fallback);
    assert_eq!(game.r_star.unwrap().get(), GameOptions::default().r_init);
    assert_eq!(game.u_relaxed, 0.0);
    assert_eq!(game.v_relaxed, 0.0);
    let direct = baseline_direct_only(&ch, &params).unwrap();
    assert_eq!(direct.sum_rate, 0.0);
}

#[test]
fn prohibitive_price_prunes_everything() {
    let dims = Dims::new(2, 2, 2, 2);
    for seed in 0..5 {
        let (ch, params) = paper_instance(dims, seed, 0.0);
        let out = evaluate_at_price(&ch, &params, Price::new(1e6).unwrap()).unwrap();
        assert_eq!(out.active_modules, 0);
        assert!(out.phases_star.phi().iter().all(|z| *z == C64::from(0.0)));
        let direct = baseline_direct_only(&ch, &params).unwrap();
        assert!(rel_err(out.sum_rate, direct.sum_rate) < 1e-4, "seed {seed}");
        assert_eq!(out.v_relaxed, 0.0);
    }
}

#[test]
fn single_antenna_single_user_direct_rate_is_closed_form() {
    let dims = Dims::new(1, 1, 2, 2);
    for seed in 0..5 {
        let (ch, params) = paper_instance(dims, seed, 0.0);
        let out = baseline_direct_only(&ch, &params).unwrap();
        let expect = (1.0 + params.p_max * ch.h_direct[0].norm_squared() / params.sigma2).log2();
        assert!((out.sum_rate - expect).abs() < 1e-6, "seed {seed}");
        assert_eq!(out.u_relaxed, out.sum_rate);
        assert_eq!(out.v_relaxed, 0.0);
    }
}

#[test]
fn degenerate_dimensions_run() {
    for dims in [Dims::new(2, 1, 2, 2), Dims::new(2, 2, 1, 2), Dims::new(2, 2, 2, 1), Dims::new(1, 1, 1, 1)] {
        let (ch, params) = paper_instance(dims, 3, 0.0);
        let game = solve_game(&ch, &params, &GameOptions::default()).unwrap();
        assert_feasible(&game, params.p_max);
        assert!(game.u_relaxed.is_finite() && game.v_relaxed >= 0.0);
        let direct = baseline_direct_only(&ch, &params).unwrap();
        assert_feasible(&direct, params.p_max);
    }
}

#[test]
fn follower_rarely_loses_to_direct_link() {
    let dims = Dims::new(2, 2, 2, 2);
    let mut wins = 0;
    for seed in 0..100 {
        let (ch, params) = paper_instance(dims, seed, 0.0);
        let out = evaluate_at_price(&ch, &params, Price::new(1e-4).unwrap()).unwrap();
        let direct = baseline_direct_only(&ch, &params).unwrap();
        if out.sum_rate >= direct.sum_rate - 1e-6 {
            wins += 1;
        }
    }
    assert!(wins >= 90, "{wins}/100");
}

#[test]
fn random_pricing_is_deterministic_and_reuses_follower() {
    let dims = Dims::new(2, 2, 2, 2);
    let (ch, params) = paper_instance(dims, 1, 0.0);
    let opts = GameOptions::default();
    let a = baseline_random_pricing(&ch, &params, &opts, 42).unwrap();
    let b = baseline_random_pricing(&ch, &params, &opts, 42).unwrap();
    assert_eq!(a.r_star, b.r_star);
    assert_eq!(a.u_relaxed, b.u_relaxed);
    let (lo, hi) = opts.baseline_range();
    let r = a.r_star.unwrap().get();
    assert!(lo <= r && r < hi);

    let game = solve_game(&ch, &params, &opts).unwrap();
    let r_star = game.r_star.unwrap();
    let pinned = GameOptions {
        baseline_r_range: Some((r_star.get(), r_star.get() * (1.0 + 1e-15))),
        ..opts
    };
    let again = baseline_random_pricing(&ch, &params, &pinned, 7).unwrap();
    let direct = evaluate_at_price(&ch, &params, again.r_star.unwrap()).unwrap();
    assert_eq!(again.u_relaxed, direct.u_relaxed);
    assert!(rel_err(again.u_relaxed, game.u_relaxed) < 1e-9);
}

#[test]
fn converged_game_price_is_leader_optimal() {
    let dims = Dims::new(4, 4, 4, 8);
    let mut converged = 0;
    for seed in 0..5 {
        let (ch, params) = paper_instance(dims, seed, 5.0);
        let game = solve_game(&ch, &params, &GameOptions::default()).unwrap();
        assert_feasible(&game, params.p_max);
        assert_eq!(game.price_trace.len(), game.outer_iters);
        if !game.game_converged {
            continue;
        }
        converged += 1;
        let x = game.follower_state.as_ref().unwrap().prox_input_norms();
        let r_star = game.r_star.unwrap().get();
        let c = params.solver.c;
        let v_star = leader_value(r_star, &x, params.delta, c).unwrap();
        for i in 1..=200 {
            let r = 2.0 * r_star * i as f64 / 200.0;
            assert!(v_star >= leader_value(r, &x, params.delta, c).unwrap() - 1e-6);
        }
    }
    assert!(converged >= 3, "{converged}/5");
}
