//! Commands behind the `uavbs` binary.
//!
//! Each command takes already-parsed arguments, does its work through the
//! library, writes its outputs and returns the in-memory result so callers
//! (and tests) can inspect it without reparsing files.

pub mod report;
pub mod scenario;

use std::fmt;
use std::path::Path;

use crate::algorithms::{solve, Algorithm};
use crate::channel::{loss_threshold, Environment, RadioConfig};
use crate::error::{Error, Result};
use crate::radius::{coverage_radius, optimal_pair};
use crate::sim::{cdf, generate_users, run_trials, samples, summarize, sweep_rho, trial_seed, Scenario, TrialRecord};

pub use report::{CdfEntry, CdfMetric, ResultDocument, SCHEMA_VERSION};
pub use scenario::{Overrides, ScenarioFile};

/// Which loss threshold `radius` works with.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Threshold {
    GammaDb(f64),
    LossDb(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiusArgs {
    pub threshold: Threshold,
    pub altitude_m: Option<f64>,
    pub env: Environment,
    pub radio: RadioConfig,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiusReport {
    pub l_th: f64,
    pub theta_star: f64,
    pub h_star: f64,
    pub r_star: f64,
    pub altitude_m: Option<f64>,
    pub radius_m: Option<f64>,
}

impl fmt::Display for RadiusReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "l_th_db        {:.3}", self.l_th)?;
        writeln!(f, "theta_star_deg {:.4}", self.theta_star)?;
        writeln!(f, "h_star_m       {:.2}", self.h_star)?;
        write!(f, "r_star_m       {:.2}", self.r_star)?;
        if let (Some(h), Some(r)) = (self.altitude_m, self.radius_m) {
            write!(f, "\naltitude_m     {h:.2}\nradius_m       {r:.2}")?;
        }
        Ok(())
    }
}

pub fn cmd_radius(args: &RadiusArgs) -> Result<RadiusReport> {
    args.env.validate()?;
    args.radio.validate()?;
    let l_th = match args.threshold {
        Threshold::GammaDb(g) => loss_threshold(&args.radio, g),
        Threshold::LossDb(l) => l,
    };
    let best = optimal_pair(l_th, &args.env, &args.radio)?;
    let radius_m = match args.altitude_m {
        Some(h) => Some(coverage_radius(h, l_th, &args.env, &args.radio).map_err(|e| match e {
            Error::Domain(m) => Error::input(format!("altitude_m: {m}")),
            other => other,
        })?),
        None => None,
    };
    Ok(RadiusReport {
        l_th,
        theta_star: best.theta_star,
        h_star: best.h_star,
        r_star: best.r_star,
        altitude_m: args.altitude_m,
        radius_m,
    })
}

fn document(file: &ScenarioFile, scenario: &Scenario, trials: Vec<TrialRecord>) -> ResultDocument {
    ResultDocument {
        schema_version: SCHEMA_VERSION,
        scenario: file.clone(),
        master_seed: scenario.master_seed,
        count_mode: scenario.count_mode,
        lq_mode: scenario.solve.lq_mode,
        summaries: summarize(&trials),
        trials,
        cdfs: Vec::new(),
        sweep: Vec::new(),
    }
}

fn ensure_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|source| Error::Io {
        path: dir.to_path_buf(),
        source,
    })
}

/// Runs every requested algorithm once, on users from a CSV file or on the
/// scenario's first synthetic trial, and writes `result.json`.
pub fn cmd_place(
    file: &ScenarioFile,
    overrides: &Overrides,
    users_path: Option<&Path>,
    out_dir: &Path,
) -> Result<ResultDocument> {
    let scenario = file.to_scenario(overrides)?;
    let users = match users_path {
        Some(p) => report::read_users_csv(p)?,
        None => generate_users(&scenario, 0)?,
    };
    for (i, u) in users.iter().enumerate() {
        if !scenario.classes.iter().any(|c| c.id == u.class_id) {
            return Err(Error::input(format!("user {i}: class_id {} is not defined in the scenario", u.class_id)));
        }
    }
    let seed = trial_seed(scenario.master_seed, 0);
    let records = scenario
        .algorithms
        .iter()
        .map(|&alg| {
            let r = solve(alg, &users, &scenario.classes, &scenario.env, &scenario.radio, &scenario.solve)?;
            Ok(TrialRecord {
                trial_id: 0,
                algorithm: alg,
                total_users: users.len(),
                covered: r.covered_count,
                per_class_covered: r.per_class,
                h: r.h,
                x_d: r.x_d,
                y_d: r.y_d,
                runtime_s: r.runtime_s,
                seed,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let doc = document(file, &scenario, records);
    ensure_dir(out_dir)?;
    doc.write(&out_dir.join("result.json"))?;
    Ok(doc)
}

/// Monte Carlo run: writes `result.json` plus `cdf_covered_<alg>.csv` and
/// `cdf_runtime_<alg>.csv` for every algorithm.
pub fn cmd_simulate(file: &ScenarioFile, overrides: &Overrides, out_dir: &Path) -> Result<ResultDocument> {
    let scenario = file.to_scenario(overrides)?;
    let trials = run_trials(&scenario)?;
    let mut doc = document(file, &scenario, trials);
    for &alg in &scenario.algorithms {
        let (covered, runtime) = samples(&doc.trials, alg);
        for (metric, values) in [(CdfMetric::Covered, covered), (CdfMetric::Runtime, runtime)] {
            doc.cdfs.push(CdfEntry {
                algorithm: alg,
                metric,
                series: cdf(&values)?,
            });
        }
    }
    ensure_dir(out_dir)?;
    for entry in &doc.cdfs {
        report::write_cdf_csv(&report::cdf_csv_path(out_dir, entry.metric, entry.algorithm), &entry.series)?;
    }
    doc.write(&out_dir.join("result.json"))?;
    Ok(doc)
}

/// Density-ratio sweep: writes `sweep.csv` and `result.json`.
pub fn cmd_sweep(file: &ScenarioFile, overrides: &Overrides, rho_values: &[f64], out_dir: &Path) -> Result<ResultDocument> {
    if rho_values.is_empty() {
        return Err(Error::input("rho: at least one density ratio is required"));
    }
    let scenario = file.to_scenario(overrides)?;
    let sweep = sweep_rho(&scenario, rho_values)?;
    let mut doc = document(file, &scenario, Vec::new());
    doc.sweep = sweep;
    ensure_dir(out_dir)?;
    report::write_sweep_csv(&out_dir.join("sweep.csv"), &doc.sweep)?;
    doc.write(&out_dir.join("result.json"))?;
    Ok(doc)
}

/// Parses a comma-separated list such as `0.5,1,2,4`.
pub fn parse_rho_list(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|s| {
            let v: f64 = s.trim().parse().map_err(|_| Error::input(format!("rho: {s:?} is not a number")))?;
            if v > 0.0 && v.is_finite() {
                Ok(v)
            } else {
                Err(Error::input(format!("rho: values must be > 0, got {v}")))
            }
        })
        .collect()
}

/// Algorithm names in scenario order, for display.
pub fn algorithm_list(algs: &[Algorithm]) -> String {
    algs.iter().map(Algorithm::as_str).collect::<Vec<_>>().join(",")
}
