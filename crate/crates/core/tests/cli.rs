use std::path::Path;
use std::process::Command;

use uavbs::algorithms::Algorithm;
use uavbs::cli::report::{cdf_csv_path, read_cdf_csv, read_sweep_csv, write_users_csv};
use uavbs::cli::{cmd_place, cmd_simulate, cmd_sweep, CdfMetric, Overrides, ResultDocument, ScenarioFile};
use uavbs::placement::User;

const SCENARIO: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios/urban_two_class.toml");

fn scenario(trials: u64) -> ScenarioFile {
    let mut f = ScenarioFile::from_path(Path::new(SCENARIO)).unwrap();
    f.sim.trials = trials;
    f
}

fn without_runtimes(mut doc: ResultDocument) -> ResultDocument {
    for r in &mut doc.trials {
        r.runtime_s = 0.0;
    }
    for s in &mut doc.summaries {
        s.mean_runtime_s = 0.0;
    }
    doc.cdfs.retain(|c| c.metric != CdfMetric::Runtime);
    doc
}

fn uavbs(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_uavbs")).args(args).output().unwrap()
}

#[test]
fn place_single_user_is_covered_by_every_algorithm() {
    let dir = tempfile::tempdir().unwrap();
    let users = dir.path().join("users.csv");
    write_users_csv(&users, &[User::new(1500.0, 1500.0, 1)]).unwrap();
    let doc = cmd_place(&scenario(1), &Overrides::default(), Some(&users), dir.path()).unwrap();
    assert_eq!(doc.trials.len(), 3);
    for r in &doc.trials {
        assert_eq!((r.covered, r.total_users), (1, 1), "{:?}", r.algorithm);
    }
    assert_eq!(ResultDocument::read(&dir.path().join("result.json")).unwrap(), doc);
}

#[test]
fn place_on_synthetic_users_orders_es_above_lq() {
    let dir = tempfile::tempdir().unwrap();
    let doc = cmd_place(&scenario(1), &Overrides::default(), None, dir.path()).unwrap();
    let covered = |alg| doc.trials.iter().find(|r| r.algorithm == alg).unwrap().covered;
    assert!(covered(Algorithm::Es) >= covered(Algorithm::Lq));
    assert!(covered(Algorithm::Es) >= covered(Algorithm::Mwa));
}

#[test]
fn place_rejects_unknown_class() {
    let dir = tempfile::tempdir().unwrap();
    let users = dir.path().join("users.csv");
    write_users_csv(&users, &[User::new(0.0, 0.0, 7)]).unwrap();
    let err = cmd_place(&scenario(1), &Overrides::default(), Some(&users), dir.path()).unwrap_err();
    assert!(err.to_string().contains("class_id 7"), "{err}");
}

#[test]
fn simulate_writes_readable_cdfs_and_is_repeatable() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let file = scenario(12);
    let doc = cmd_simulate(&file, &Overrides::default(), a.path()).unwrap();
    assert_eq!(doc.trials.len(), 36);
    assert_eq!(doc.cdfs.len(), 6);
    for entry in &doc.cdfs {
        let path = cdf_csv_path(a.path(), entry.metric, entry.algorithm);
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("value,probability\n"), "{}", path.display());
        assert_eq!(read_cdf_csv(&path).unwrap(), entry.series);
    }
    let again = cmd_simulate(&file, &Overrides::default(), b.path()).unwrap();
    assert_eq!(without_runtimes(again), without_runtimes(doc));
}

#[test]
fn seed_override_changes_draws() {
    let dir = tempfile::tempdir().unwrap();
    let file = scenario(4);
    let base = cmd_simulate(&file, &Overrides::default(), dir.path()).unwrap();
    let other = cmd_simulate(
        &file,
        &Overrides {
            seed: Some(1),
            ..Overrides::default()
        },
        dir.path(),
    )
    .unwrap();
    assert_eq!(other.master_seed, 1);
    let users = |d: &ResultDocument| d.trials.iter().map(|r| r.total_users).collect::<Vec<_>>();
    let seeds = |d: &ResultDocument| d.trials.iter().map(|r| r.seed).collect::<Vec<_>>();
    assert_ne!(seeds(&base), seeds(&other));
    assert_eq!(users(&base).len(), users(&other).len());
}

#[test]
fn sweep_writes_one_row_per_rho_and_algorithm() {
    let dir = tempfile::tempdir().unwrap();
    let doc = cmd_sweep(&scenario(5), &Overrides::default(), &[0.5, 2.0], dir.path()).unwrap();
    let rows = read_sweep_csv(&dir.path().join("sweep.csv")).unwrap();
    assert_eq!(rows.len(), 6);
    assert_eq!(rows, doc.sweep);
    assert!(rows.iter().all(|p| p.mean_covered >= 0.0 && p.stderr >= 0.0));
}

#[test]
fn binary_radius_reports_reference_point() {
    let out = uavbs(&["radius", "--gamma-th-db", "50"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("l_th_db        100.000"), "{text}");
    assert!(text.contains("theta_star_deg 42.43"), "{text}");
}

#[test]
fn binary_exit_codes() {
    assert_eq!(uavbs(&["radius", "--gamma-th-db", "200"]).status.code(), Some(3));
    assert_eq!(uavbs(&["radius", "--l-th-db", "100", "--altitude-m", "-5"]).status.code(), Some(2));
    assert_eq!(uavbs(&["simulate", "--scenario", "/nonexistent/scenario.toml"]).status.code(), Some(2));
    assert_ne!(uavbs(&["radius"]).status.code(), Some(0));
}

#[test]
fn binary_place_writes_result() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("run");
    let out = uavbs(&["place", "--scenario", SCENARIO, "--out", out_dir.to_str().unwrap(), "--fixed-count"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = ResultDocument::read(&out_dir.join("result.json")).unwrap();
    assert_eq!(doc.trials.len(), 3);
    assert_eq!(doc.trials[0].total_users, 99);
}
