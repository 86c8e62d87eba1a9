use irs_pricing_cli::*;

fn small_config(dir: &std::path::Path) -> ExperimentConfig {
    let mut cfg = validate_config(
        r#"
        trials = 2
        p_max_grid_dbm = [-5.0, 5.0]
        [dims]
        m = 2
        k = 2
        s = 2
        n = 2
        "#,
    )
    .unwrap();
    cfg.output_path = dir.join("out.csv");
    cfg
}

fn strip_wall_ms(csv_text: &str) -> Vec<String> {
    let mut rdr = csv::Reader::from_reader(csv_text.as_bytes());
    let headers = rdr.headers().unwrap().clone();
    let wall = headers.iter().position(|h| h == "wall_ms").unwrap();
    rdr.records()
        .map(|r| {
            let r = r.unwrap();
            r.iter().enumerate().filter(|(i, _)| *i != wall).map(|(_, f)| f).collect::<Vec<_>>().join(",")
        })
        .collect()
}

#[test]
fn one_scheme_one_level_one_trial_is_one_row() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = small_config(dir.path());
    cfg.trials = 1;
    cfg.p_max_grid_dbm = vec![0.0];
    cfg.schemes = vec![Scheme::DirectOnly];
    let rows = run_experiment(&cfg);
    assert_eq!(rows.len(), 1);
    write_csv(&rows, &cfg.output_path).unwrap();
    let text = std::fs::read_to_string(&cfg.output_path).unwrap();
    assert_eq!(text.lines().count(), 2);
    assert_eq!(
        text.lines().next().unwrap(),
        "scheme,p_max_dbm,trial,seed,U_relaxed,U_discrete,V_relaxed,V_discrete,sum_rate,r,active_modules,inner_iters,outer_iters,wall_ms"
    );
}

#[test]
fn row_count_and_order() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_config(dir.path());
    let rows = run_experiment(&cfg);
    assert_eq!(rows.len(), 3 * 2 * 2);
    let keys: Vec<(Scheme, usize)> = rows.iter().map(|r| (r.scheme, r.trial)).collect();
    assert_eq!(keys[0], (Scheme::Game, 0));
    assert_eq!(keys[1], (Scheme::Game, 1));
    assert_eq!(rows[2].p_max_dbm, 5.0);
    assert!(rows.iter().all(|r| !r.failed()));
    assert!(rows.iter().filter(|r| r.scheme == Scheme::DirectOnly).all(|r| r.r.is_none()));
}

#[test]
fn reruns_are_identical_except_timing() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = small_config(dir.path());
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    write_csv(&run_experiment(&cfg), &a).unwrap();
    write_csv(&run_experiment(&cfg), &b).unwrap();
    let ta = std::fs::read_to_string(a).unwrap();
    let tb = std::fs::read_to_string(b).unwrap();
    assert_eq!(strip_wall_ms(&ta), strip_wall_ms(&tb));
}

#[test]
fn schemes_share_channels() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = small_config(dir.path());
    cfg.game.r_init = 1e6;
    cfg.game.max_outer_iters = 1;
    let rows = run_experiment(&cfg);
    // A prohibitive price prunes every module, so the game collapses to the
    // direct link on the same realization.
    for g in rows.iter().filter(|r| r.scheme == Scheme::Game) {
        let d = rows
            .iter()
            .find(|r| r.scheme == Scheme::DirectOnly && r.trial == g.trial && r.p_max_dbm == g.p_max_dbm)
            .unwrap();
        assert!((g.sum_rate - d.sum_rate).abs() <= 1e-3 * d.sum_rate, "{} vs {}", g.sum_rate, d.sum_rate);
    }
}

#[test]
fn seeds_depend_on_scheme_level_and_trial() {
    let dir = tempfile::tempdir().unwrap();
    let rows = run_experiment(&small_config(dir.path()));
    let mut seeds: Vec<u64> = rows.iter().map(|r| r.seed).collect();
    seeds.sort_unstable();
    seeds.dedup();
    assert_eq!(seeds.len(), rows.len());
}

#[test]
fn summary_has_one_line_per_scheme_and_level() {
    let dir = tempfile::tempdir().unwrap();
    let rows = run_experiment(&small_config(dir.path()));
    let lines = summarize(&rows);
    assert_eq!(lines.len(), 6);
    assert!(lines.iter().all(|l| l.trials == 2 && l.failed == 0));
    let text = format_summary(&lines);
    assert_eq!(text.lines().count(), 7);
    assert!(text.contains("random_pricing"));
}

#[test]
fn config_errors_name_keys() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    std::fs::write(&path, "trials = 0\n").unwrap();
    assert!(load_config(&path).unwrap_err().to_string().contains("trials"));
    std::fs::write(&path, "delta = -1.0\n").unwrap();
    assert!(load_config(&path).unwrap_err().to_string().contains("delta"));
    std::fs::write(&path, "").unwrap();
    assert_eq!(load_config(&path).unwrap(), ExperimentConfig::default());
    assert!(load_config(&dir.path().join("missing.toml")).is_err());
}
