//! Monte Carlo trials over randomly scattered users.
//!
//! Every random draw is keyed by `(master_seed, trial_id, class_id)`, so a
//! trial produces the same users no matter which thread runs it or in which
//! order trials complete. All algorithms of a trial see the same user list.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algorithms::{solve, Algorithm, LqMode, SolveOptions};
use crate::channel::{sorted_classes, ClassId, Environment, QosClass, RadioConfig};
use crate::error::{Error, Result};
use crate::placement::{Rect, User};

/// How many users of each class a trial draws.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountMode {
    /// Poisson with mean `λ_k · area`.
    #[default]
    Poisson,
    /// `floor(λ_k · area)` for every class except the last populated one,
    /// which takes the remainder of `round(Σλ · area)`.
    Fixed,
}

/// A complete experiment description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub width_km: f64,
    pub height_km: f64,
    pub env: Environment,
    pub radio: RadioConfig,
    pub classes: Vec<QosClass>,
    pub trials: u64,
    pub master_seed: u64,
    pub algorithms: Vec<Algorithm>,
    pub solve: SolveOptions,
    pub count_mode: CountMode,
}

impl Scenario {
    /// 3 km × 3 km urban area, 2 GHz, 30 dBm transmit power, -120 dBm noise,
    /// two classes requiring 50 dB and 47 dB SNR with 11 users/km² in total
    /// split by the density ratio `rho = λ2/λ1`.
    pub fn urban_reference(rho: f64) -> Result<Self> {
        let radio = RadioConfig::new(2e9, 30.0, -120.0)?;
        let classes = vec![QosClass::new(1, 50.0, 5.5, &radio)?, QosClass::new(2, 47.0, 5.5, &radio)?];
        Scenario {
            width_km: 3.0,
            height_km: 3.0,
            env: Environment::urban(),
            radio,
            classes,
            trials: 100,
            master_seed: 0,
            algorithms: Algorithm::ALL.to_vec(),
            solve: SolveOptions {
                grid_points: 9,
                lq_mode: LqMode::Fair,
            },
            count_mode: CountMode::Poisson,
        }
        .with_rho(rho)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.width_km > 0.0 && self.height_km > 0.0 && self.width_km.is_finite() && self.height_km.is_finite()) {
            return Err(Error::input("area: width_km and height_km must be > 0"));
        }
        self.env.validate()?;
        self.radio.validate()?;
        sorted_classes(&self.classes)?;
        if self.trials == 0 {
            return Err(Error::input("sim: trials must be >= 1"));
        }
        if self.algorithms.is_empty() {
            return Err(Error::input("algorithms: list must name at least one of es, mwa, lq"));
        }
        if self.solve.grid_points == 0 {
            return Err(Error::input("sim: grid_points must be >= 1"));
        }
        Ok(())
    }

    pub fn area_km2(&self) -> f64 {
        self.width_km * self.height_km
    }

    /// Deployment area in metres, anchored at the origin.
    pub fn bounds(&self) -> Rect {
        Rect::new(0.0, 0.0, self.width_km * 1e3, self.height_km * 1e3)
    }

    pub fn total_lambda(&self) -> f64 {
        self.classes.iter().map(|c| c.lambda).sum()
    }

    /// Classes ordered from most to least demanding.
    fn ordered_classes(&self) -> Result<Vec<QosClass>> {
        sorted_classes(&self.classes)
    }

    /// `λ2/λ1` for a two-class scenario.
    pub fn rho(&self) -> Option<f64> {
        let c = self.ordered_classes().ok()?;
        (c.len() == 2 && c[0].lambda > 0.0).then(|| c[1].lambda / c[0].lambda)
    }

    /// Same scenario with the two class densities rebuilt from `rho` while the
    /// total density stays fixed.
    pub fn with_rho(&self, rho: f64) -> Result<Self> {
        if !(rho > 0.0 && rho.is_finite()) {
            return Err(Error::input(format!("rho must be > 0, got {rho}")));
        }
        let ordered = self.ordered_classes()?;
        if ordered.len() != 2 {
            return Err(Error::input("rho applies to two-class scenarios only"));
        }
        let total = self.total_lambda();
        let l1 = total / (1.0 + rho);
        let l2 = total - l1;
        let mut out = self.clone();
        for c in &mut out.classes {
            c.lambda = if c.id == ordered[0].id { l1 } else { l2 };
        }
        Ok(out)
    }
}

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed identifying one trial.
pub fn trial_seed(master_seed: u64, trial_id: u64) -> u64 {
    splitmix64(splitmix64(master_seed) ^ trial_id.wrapping_mul(GOLDEN_GAMMA))
}

/// Seed of the random stream for one class within one trial.
pub fn stream_seed(master_seed: u64, trial_id: u64, class_id: ClassId) -> u64 {
    splitmix64(trial_seed(master_seed, trial_id) ^ u64::from(class_id.0).wrapping_mul(0xd6e8_feb8_6659_fd93))
}

fn fixed_counts(scenario: &Scenario, ordered: &[QosClass]) -> Vec<u64> {
    let area = scenario.area_km2();
    let total = (scenario.total_lambda() * area).round() as u64;
    let mut counts: Vec<u64> = ordered.iter().map(|c| (c.lambda * area).floor() as u64).collect();
    if let Some(last) = ordered.iter().rposition(|c| c.lambda > 0.0) {
        let others: u64 = counts.iter().enumerate().filter(|(i, _)| *i != last).map(|(_, n)| n).sum();
        counts[last] = total.saturating_sub(others);
    }
    counts
}

/// Users of one trial, grouped by class (most demanding first).
pub fn generate_users(scenario: &Scenario, trial_id: u64) -> Result<Vec<User>> {
    let ordered = scenario.ordered_classes()?;
    let area = scenario.area_km2();
    let fixed = match scenario.count_mode {
        CountMode::Fixed => Some(fixed_counts(scenario, &ordered)),
        CountMode::Poisson => None,
    };
    let (w, h) = (scenario.width_km * 1e3, scenario.height_km * 1e3);
    let mut users = Vec::new();
    for (i, class) in ordered.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(stream_seed(scenario.master_seed, trial_id, class.id));
        let n = match &fixed {
            Some(counts) => counts[i],
            None if class.lambda > 0.0 => {
                let poisson = Poisson::new(class.lambda * area)
                    .map_err(|e| Error::input(format!("class {}: {e}", class.id)))?;
                poisson.sample(&mut rng) as u64
            }
            None => 0,
        };
        for _ in 0..n {
            users.push(User {
                x: rng.random::<f64>() * w,
                y: rng.random::<f64>() * h,
                class_id: class.id,
            });
        }
    }
    Ok(users)
}

/// Outcome of one algorithm on one trial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial_id: u64,
    pub algorithm: Algorithm,
    pub total_users: usize,
    pub covered: usize,
    pub per_class_covered: BTreeMap<ClassId, usize>,
    pub h: f64,
    pub x_d: f64,
    pub y_d: f64,
    pub runtime_s: f64,
    pub seed: u64,
}

fn run_trial(scenario: &Scenario, trial_id: u64) -> Result<Vec<TrialRecord>> {
    let seed = trial_seed(scenario.master_seed, trial_id);
    let wrap = |e: Error| Error::Trial {
        trial_id,
        seed,
        source: Box::new(e),
    };
    let users = generate_users(scenario, trial_id).map_err(wrap)?;
    scenario
        .algorithms
        .iter()
        .map(|&alg| {
            let r = solve(alg, &users, &scenario.classes, &scenario.env, &scenario.radio, &scenario.solve)
                .map_err(wrap)?;
            Ok(TrialRecord {
                trial_id,
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
        .collect()
}

/// Runs every trial of the scenario on the current rayon pool. Records are
/// ordered by trial, then by the scenario's algorithm list.
pub fn run_trials(scenario: &Scenario) -> Result<Vec<TrialRecord>> {
    scenario.validate()?;
    let per_trial: Vec<Result<Vec<TrialRecord>>> =
        (0..scenario.trials).into_par_iter().map(|t| run_trial(scenario, t)).collect();
    let mut records = Vec::new();
    for r in per_trial {
        records.extend(r?);
    }
    Ok(records)
}

/// Empirical CDF: distinct sorted sample values with `P(X <= value)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CdfSeries {
    pub values: Vec<f64>,
    pub probabilities: Vec<f64>,
}

impl CdfSeries {
    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.values.iter().copied().zip(self.probabilities.iter().copied())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `P(X <= x)` of the step function.
    pub fn eval(&self, x: f64) -> f64 {
        match self.values.partition_point(|&v| v <= x) {
            0 => 0.0,
            i => self.probabilities[i - 1],
        }
    }

    /// Smallest sample value whose cumulative probability reaches `p`.
    pub fn quantile(&self, p: f64) -> f64 {
        let i = self.probabilities.partition_point(|&q| q < p);
        self.values[i.min(self.values.len() - 1)]
    }
}

pub fn cdf(values: &[f64]) -> Result<CdfSeries> {
    if values.is_empty() {
        return Err(Error::input("cdf of an empty sample"));
    }
    if values.iter().any(|v| v.is_nan()) {
        return Err(Error::input("cdf sample contains NaN"));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let mut out = CdfSeries {
        values: Vec::new(),
        probabilities: Vec::new(),
    };
    for (i, &v) in sorted.iter().enumerate() {
        if sorted.get(i + 1) == Some(&v) {
            continue;
        }
        out.values.push(v);
        out.probabilities.push((i + 1) as f64 / n);
    }
    Ok(out)
}

/// Sample mean and standard error of the mean.
pub fn mean_stderr(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    if values.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmSummary {
    pub algorithm: Algorithm,
    pub trials: usize,
    pub mean_covered: f64,
    pub stderr_covered: f64,
    pub mean_runtime_s: f64,
}

/// Per-algorithm means, in first-appearance order.
pub fn summarize(records: &[TrialRecord]) -> Vec<AlgorithmSummary> {
    let mut order: Vec<Algorithm> = Vec::new();
    for r in records {
        if !order.contains(&r.algorithm) {
            order.push(r.algorithm);
        }
    }
    order
        .into_iter()
        .map(|alg| {
            let covered: Vec<f64> = records.iter().filter(|r| r.algorithm == alg).map(|r| r.covered as f64).collect();
            let runtime: Vec<f64> = records.iter().filter(|r| r.algorithm == alg).map(|r| r.runtime_s).collect();
            let (mean_covered, stderr_covered) = mean_stderr(&covered);
            AlgorithmSummary {
                algorithm: alg,
                trials: covered.len(),
                mean_covered,
                stderr_covered,
                mean_runtime_s: mean_stderr(&runtime).0,
            }
        })
        .collect()
}

/// Covered-count and runtime samples of one algorithm.
pub fn samples(records: &[TrialRecord], algorithm: Algorithm) -> (Vec<f64>, Vec<f64>) {
    records
        .iter()
        .filter(|r| r.algorithm == algorithm)
        .map(|r| (r.covered as f64, r.runtime_s))
        .unzip()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub rho: f64,
    pub algorithm: Algorithm,
    pub mean_covered: f64,
    pub stderr: f64,
}

/// Mean covered users per algorithm for each density ratio, total density
/// held fixed.
pub fn sweep_rho(scenario: &Scenario, rho_values: &[f64]) -> Result<Vec<SweepPoint>> {
    let mut out = Vec::new();
    for &rho in rho_values {
        let s = scenario.with_rho(rho)?;
        let records = run_trials(&s)?;
        out.extend(summarize(&records).into_iter().map(|a| SweepPoint {
            rho,
            algorithm: a.algorithm,
            mean_covered: a.mean_covered,
            stderr: a.stderr_covered,
        }));
    }
    Ok(out)
}
