use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use uavbs::algorithms::{exhaustive_search, solve, Algorithm, AltitudeGrid, SolveOptions};
use uavbs::channel::ClassId;
use uavbs::placement::{solve_exact, RadiusMap, User};
use uavbs::radius::{altitude_bracket, coverage_discs};
use uavbs::sim::{cdf, generate_users, run_trials, samples, summarize, sweep_rho, CountMode, Scenario};

fn mean_of(records: &[uavbs::sim::TrialRecord], alg: Algorithm) -> f64 {
    summarize(records).into_iter().find(|a| a.algorithm == alg).unwrap().mean_covered
}

fn min_time(reps: usize, mut f: impl FnMut()) -> Duration {
    (0..reps)
        .map(|_| {
            let t = Instant::now();
            f();
            t.elapsed()
        })
        .min()
        .unwrap()
}

#[test]
fn es_covered_cdf_lies_right_of_lq() {
    let s = Scenario::urban_reference(1.0).unwrap();
    let records = run_trials(&s).unwrap();
    let es = cdf(&samples(&records, Algorithm::Es).0).unwrap();
    let lq = cdf(&samples(&records, Algorithm::Lq).0).unwrap();
    let qs: Vec<f64> = (1..=99).map(|i| i as f64 / 100.0).collect();
    let dominated = qs.iter().filter(|&&p| es.quantile(p) >= lq.quantile(p)).count();
    assert!(dominated as f64 >= 0.9 * qs.len() as f64, "{dominated}/{}", qs.len());
}

#[test]
fn mwa_stays_close_to_es_at_every_density_ratio() {
    let s = Scenario::urban_reference(1.0).unwrap();
    let sweep = sweep_rho(&s, &[0.5, 1.0, 2.0, 4.0]).unwrap();
    for rho in [0.5, 1.0, 2.0, 4.0] {
        let get = |alg| sweep.iter().find(|p| p.rho == rho && p.algorithm == alg).unwrap().mean_covered;
        let (es, mwa) = (get(Algorithm::Es), get(Algorithm::Mwa));
        assert!((es - mwa).abs() <= 0.05 * es, "rho {rho}: ES {es}, MWA {mwa}");
    }
}

#[test]
fn nearly_single_class_makes_algorithms_agree() {
    let s = Scenario::urban_reference(1e-3).unwrap();
    let records = run_trials(&s).unwrap();
    let es = mean_of(&records, Algorithm::Es);
    for alg in [Algorithm::Mwa, Algorithm::Lq] {
        let m = mean_of(&records, alg);
        assert!((es - m).abs() <= 0.5, "ES {es} vs {alg} {m}");
    }
}

#[test]
fn fixed_count_splits_reference_density() {
    let mut s = Scenario::urban_reference(1.0).unwrap();
    s.count_mode = CountMode::Fixed;
    let users = generate_users(&s, 3).unwrap();
    let per = |id| users.iter().filter(|u| u.class_id == ClassId(id)).count();
    assert_eq!(users.len(), 99);
    assert_eq!((per(1), per(2)), (49, 50));
}

#[test]
fn paired_trials_share_users() {
    let mut s = Scenario::urban_reference(1.0).unwrap();
    s.trials = 10;
    let records = run_trials(&s).unwrap();
    for chunk in records.chunks(3) {
        assert!(chunk.iter().all(|r| r.trial_id == chunk[0].trial_id && r.total_users == chunk[0].total_users));
        for r in chunk {
            assert_eq!(r.per_class_covered.values().sum::<usize>(), r.covered);
        }
    }
}

#[test]
fn es_costs_about_one_placement_per_grid_point() {
    let s = Scenario::urban_reference(1.0).unwrap();
    let users = generate_users(&s, 0).unwrap();
    let bracket = altitude_bracket(&s.classes, &s.env, &s.radio).unwrap();
    let grid = AltitudeGrid::over(&bracket, 9).unwrap();
    let mid = 0.5 * (bracket.h_lo + bracket.h_hi);
    let radii = RadiusMap::from_discs(&coverage_discs(mid, &s.classes, &s.env, &s.radio).unwrap()).unwrap();
    let one = min_time(5, || {
        solve_exact(&users, &radii).unwrap();
    });
    let es = min_time(5, || {
        exhaustive_search(&users, &s.classes, &s.env, &s.radio, &grid).unwrap();
    });
    let ratio = es.as_secs_f64() / (9.0 * one.as_secs_f64());
    assert!((0.5..=2.0).contains(&ratio), "ES {es:?}, single placement {one:?}, ratio {ratio}");
}

#[test]
fn exact_placement_scales_at_most_cubically() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let instance = |rng: &mut ChaCha8Rng, n: usize| -> Vec<User> {
        (0..n)
            .map(|_| User::new(rng.random_range(0.0..1000.0), rng.random_range(0.0..1000.0), rng.random_range(1..=2)))
            .collect()
    };
    let mut radii = RadiusMap::new();
    radii.insert(ClassId(1), 400.0).unwrap();
    radii.insert(ClassId(2), 550.0).unwrap();
    let small: Vec<Vec<User>> = (0..4).map(|_| instance(&mut rng, 60)).collect();
    let large: Vec<Vec<User>> = (0..4).map(|_| instance(&mut rng, 120)).collect();
    let total = |set: &[Vec<User>]| {
        min_time(3, || {
            for users in set {
                solve_exact(users, &radii).unwrap();
            }
        })
    };
    let (t_small, t_large) = (total(&small), total(&large));
    let ratio = t_large.as_secs_f64() / t_small.as_secs_f64();
    assert!(ratio <= 9.0, "doubling n took {ratio:.2}x ({t_small:?} -> {t_large:?})");
}

#[test]
fn solve_reports_radii_at_chosen_altitude() {
    let s = Scenario::urban_reference(2.0).unwrap();
    let users = generate_users(&s, 1).unwrap();
    for alg in Algorithm::ALL {
        let r = solve(alg, &users, &s.classes, &s.env, &s.radio, &SolveOptions::default()).unwrap();
        let bracket = altitude_bracket(&s.classes, &s.env, &s.radio).unwrap();
        assert!(bracket.contains(r.h), "{alg}: h {}", r.h);
        assert!(r.runtime_s > 0.0);
        assert_eq!(r.per_class.values().sum::<usize>(), r.covered_count);
        assert_eq!(r.radii_used.iter().count(), 2);
    }
}
