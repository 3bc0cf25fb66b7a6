//! Altitude selection strategies on top of the exact horizontal solver.
//!
//! * **ES** scans a uniform altitude grid over the bracket and solves the
//!   horizontal problem at every altitude.
//! * **MWA** picks the altitude maximizing the density-weighted covered area
//!   `π·Σ λ_k R_k(h)²`, then solves the horizontal problem once.
//! * **LQ** treats every user as a member of the most demanding class and
//!   flies at that class's optimal altitude.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::channel::{
    sorted_classes, ClassId, Environment, PathLossConstants, QosClass,
    RadioConfig,
};
use crate::error::{Error, Result};
use crate::numeric::bisect_root;
use crate::placement::{evaluate_center, solve_exact, PlacementSolution, RadiusMap, User};
use crate::radius::{altitude_bracket, coverage_radius_near, coverage_radius_with, optimal_pair, AltitudeBracket};

/// Points in the sign-change scan of the MWA stationarity condition.
pub const MWA_SCAN_POINTS: usize = 200;

/// Bisection tolerance for MWA stationary points, metres.
pub const MWA_ROOT_TOL_M: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Es,
    Mwa,
    Lq,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Es, Algorithm::Mwa, Algorithm::Lq];

    pub fn as_str(&self) -> &'static str {
        match self {
            Algorithm::Es => "es",
            Algorithm::Mwa => "mwa",
            Algorithm::Lq => "lq",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "es" => Ok(Algorithm::Es),
            "mwa" => Ok(Algorithm::Mwa),
            "lq" => Ok(Algorithm::Lq),
            other => Err(Error::input(format!("unknown algorithm {other:?} (expected es, mwa or lq)"))),
        }
    }
}

/// How LQ reports coverage once its center is fixed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LqMode {
    /// Count users against their true class radii at the LQ altitude.
    #[default]
    Fair,
    /// Count every user against the most demanding class radius.
    Strict,
}

/// Uniform altitude discretization with step `(h_hi - h_lo) / (n_points - 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AltitudeGrid {
    pub h_lo: f64,
    pub h_hi: f64,
    pub n_points: usize,
}

impl AltitudeGrid {
    pub fn new(h_lo: f64, h_hi: f64, n_points: usize) -> Result<Self> {
        if !(h_lo > 0.0 && h_lo <= h_hi && h_hi.is_finite()) {
            return Err(Error::input(format!("altitude grid needs 0 < h_lo <= h_hi, got [{h_lo}, {h_hi}]")));
        }
        if n_points == 0 {
            return Err(Error::input("altitude grid needs at least one point"));
        }
        if n_points == 1 && h_lo != h_hi {
            return Err(Error::input("a one-point altitude grid requires h_lo == h_hi"));
        }
        Ok(AltitudeGrid { h_lo, h_hi, n_points })
    }

    /// Grid over a bracket; a degenerate bracket collapses to one point.
    pub fn over(bracket: &AltitudeBracket, n_points: usize) -> Result<Self> {
        let n = if bracket.h_lo == bracket.h_hi { 1 } else { n_points };
        AltitudeGrid::new(bracket.h_lo, bracket.h_hi, n)
    }

    pub fn step(&self) -> f64 {
        if self.n_points <= 1 {
            0.0
        } else {
            (self.h_hi - self.h_lo) / (self.n_points - 1) as f64
        }
    }

    /// Grid altitudes in ascending order; the last point is exactly `h_hi`.
    pub fn points(&self) -> Vec<f64> {
        let step = self.step();
        (0..self.n_points)
            .map(|i| if i + 1 == self.n_points { self.h_hi } else { self.h_lo + step * i as f64 })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmResult {
    pub algorithm: Algorithm,
    pub h: f64,
    pub x_d: f64,
    pub y_d: f64,
    pub covered_count: usize,
    pub per_class: BTreeMap<ClassId, usize>,
    pub runtime_s: f64,
    pub radii_used: RadiusMap,
}

impl AlgorithmResult {
    fn from_solution(
        algorithm: Algorithm,
        h: f64,
        sol: &PlacementSolution,
        users: &[User],
        classes: &[QosClass],
        radii_used: RadiusMap,
        started: Instant,
    ) -> Self {
        let mut per_class: BTreeMap<ClassId, usize> = classes.iter().map(|c| (c.id, 0)).collect();
        per_class.extend(sol.per_class(users));
        AlgorithmResult {
            algorithm,
            h,
            x_d: sol.x_d,
            y_d: sol.y_d,
            covered_count: sol.covered_count,
            per_class,
            runtime_s: started.elapsed().as_secs_f64(),
            radii_used,
        }
    }
}

fn radii_at(h: f64, classes: &[QosClass], env: &Environment, k: &PathLossConstants) -> Result<RadiusMap> {
    let mut map = RadiusMap::new();
    for c in classes {
        map.insert(c.id, coverage_radius_with(h, c.l_th, env, k))?;
    }
    Ok(map)
}

/// Exact placement that tolerates an empty user set (count 0 at the origin).
fn place(users: &[User], radii: &RadiusMap) -> Result<PlacementSolution> {
    if users.is_empty() {
        return Ok(PlacementSolution {
            x_d: 0.0,
            y_d: 0.0,
            covered: Vec::new(),
            covered_count: 0,
        });
    }
    solve_exact(users, radii)
}

/// Exhaustive search: exact placement at every grid altitude, keeping the best
/// count (ties go to the lower altitude).
pub fn exhaustive_search(
    users: &[User],
    classes: &[QosClass],
    env: &Environment,
    radio: &RadioConfig,
    grid: &AltitudeGrid,
) -> Result<AlgorithmResult> {
    let started = Instant::now();
    let classes = sorted_classes(classes)?;
    let k = PathLossConstants::new(env, radio);
    let mut best: Option<(f64, PlacementSolution, RadiusMap)> = None;
    for h in grid.points() {
        let radii = radii_at(h, &classes, env, &k)?;
        let sol = place(users, &radii)?;
        if best.as_ref().is_none_or(|(_, b, _)| sol.covered_count > b.covered_count) {
            best = Some((h, sol, radii));
        }
    }
    let (h, sol, radii) = best.expect("grid has at least one point");
    Ok(AlgorithmResult::from_solution(Algorithm::Es, h, &sol, users, &classes, radii, started))
}

/// `X_k(h)` of the stationarity condition, given the already solved radius.
fn x_term(h: f64, radius: f64, env: &Environment, k: &PathLossConstants) -> f64 {
    let theta = (h / radius).atan().to_degrees();
    let e = (-env.b * (theta - env.a)).exp();
    let coef = -9.0 * std::f64::consts::LN_10 * k.a_db() * env.a * env.b / PI;
    coef * radius * e / ((1.0 + env.a * e) * (1.0 + env.a * e)) - h
}

fn summand_with(h: f64, class: &QosClass, env: &Environment, k: &PathLossConstants) -> f64 {
    summand_at(h, coverage_radius_with(h, class.l_th, env, k), class, env, k)
}

fn summand_at(h: f64, r: f64, class: &QosClass, env: &Environment, k: &PathLossConstants) -> f64 {
    if r == 0.0 || class.lambda == 0.0 {
        return 0.0;
    }
    let x = x_term(h, r, env, k);
    2.0 * class.lambda * x * r * r / (r * r + h * h + h * x)
}

/// One class's contribution `2λX R² / (R² + h² + hX)` to the derivative of
/// `Σ λ_k R_k(h)²`, with `λ` in users/km² and lengths in metres.
pub fn mwa_summand(h: f64, class: &QosClass, env: &Environment, radio: &RadioConfig) -> f64 {
    summand_with(h, class, env, &PathLossConstants::new(env, radio))
}

/// `d/dh Σ λ_k R_k(h)²` assembled from the per-class summands.
pub fn mwa_derivative(h: f64, classes: &[QosClass], env: &Environment, radio: &RadioConfig) -> f64 {
    let k = PathLossConstants::new(env, radio);
    classes.iter().map(|c| summand_with(h, c, env, &k)).sum()
}

fn average_covered_with(h: f64, classes: &[QosClass], env: &Environment, k: &PathLossConstants) -> f64 {
    let weighted: f64 = classes
        .iter()
        .map(|c| {
            let r = coverage_radius_with(h, c.l_th, env, k);
            c.lambda * r * r
        })
        .sum();
    PI * weighted / 1e6
}

/// Expected covered users `π·Σ λ_k R_k(h)²` for uniformly scattered users
/// (λ in users/km², result in users).
pub fn average_covered(h: f64, classes: &[QosClass], env: &Environment, radio: &RadioConfig) -> f64 {
    average_covered_with(h, classes, env, &PathLossConstants::new(env, radio))
}

/// MWA altitude: every stationary point of the weighted area inside the
/// bracket, plus both ends, scored by expected coverage.
pub fn mwa_altitude(
    classes: &[QosClass],
    env: &Environment,
    radio: &RadioConfig,
    bracket: &AltitudeBracket,
) -> Result<f64> {
    if !classes.iter().any(|c| c.lambda > 0.0) {
        return Err(Error::input("MWA needs at least one class with positive density"));
    }
    if bracket.width() == 0.0 {
        return Ok(bracket.h_lo);
    }
    let k = PathLossConstants::new(env, radio);
    let derivative = |h: f64| -> f64 { classes.iter().map(|c| summand_with(h, c, env, &k)).sum() };

    // Radii move little between neighbouring scan points, so each class's
    // bisection starts from a linear extrapolation of its last two radii.
    let step = bracket.width() / (MWA_SCAN_POINTS - 1) as f64;
    let mut history: Vec<(f64, f64)> = vec![(f64::NAN, f64::NAN); classes.len()];
    let mut scan = Vec::with_capacity(MWA_SCAN_POINTS);
    for i in 0..MWA_SCAN_POINTS {
        let h = if i + 1 == MWA_SCAN_POINTS { bracket.h_hi } else { bracket.h_lo + step * i as f64 };
        let mut d = 0.0;
        for (c, (prev, last)) in classes.iter().zip(history.iter_mut()) {
            let r = if last.is_nan() {
                coverage_radius_with(h, c.l_th, env, &k)
            } else {
                let trend = if prev.is_nan() { 0.0 } else { *last - *prev };
                coverage_radius_near(h, c.l_th, env, &k, *last + trend, 0.01)
            };
            (*prev, *last) = (*last, r);
            d += summand_at(h, r, c, env, &k);
        }
        scan.push((h, d));
    }

    let mut candidates = vec![bracket.h_lo, bracket.h_hi];
    for w in scan.windows(2) {
        let ((h0, f0), (h1, f1)) = (w[0], w[1]);
        if f0 == 0.0 {
            candidates.push(h0);
        } else if f0 * f1 < 0.0 {
            candidates.push(bisect_root(h0, h1, MWA_ROOT_TOL_M, derivative));
        }
    }

    let mut best = (bracket.h_lo, f64::NEG_INFINITY);
    candidates.sort_by(f64::total_cmp);
    for h in candidates {
        let n = average_covered_with(h, classes, env, &k);
        if n > best.1 {
            best = (h, n);
        }
    }
    Ok(best.0)
}

/// MWA: fly at the weighted-area altitude and place horizontally once.
pub fn mwa_place(
    users: &[User],
    classes: &[QosClass],
    env: &Environment,
    radio: &RadioConfig,
) -> Result<AlgorithmResult> {
    let started = Instant::now();
    let classes = sorted_classes(classes)?;
    let bracket = altitude_bracket(&classes, env, radio)?;
    let h = mwa_altitude(&classes, env, radio, &bracket)?;
    let radii = radii_at(h, &classes, env, &PathLossConstants::new(env, radio))?;
    let sol = place(users, &radii)?;
    Ok(AlgorithmResult::from_solution(Algorithm::Mwa, h, &sol, users, &classes, radii, started))
}

/// LQ baseline: altitude and placement radius of the most demanding class for
/// every user.
pub fn lq_place(
    users: &[User],
    classes: &[QosClass],
    env: &Environment,
    radio: &RadioConfig,
    mode: LqMode,
) -> Result<AlgorithmResult> {
    let started = Instant::now();
    let classes = sorted_classes(classes)?;
    let strictest = classes[0];
    let k = PathLossConstants::new(env, radio);
    let h = optimal_pair(strictest.l_th, env, radio)?.h_star;
    let r_strict = coverage_radius_with(h, strictest.l_th, env, &k);
    let mut strict = RadiusMap::new();
    for c in &classes {
        strict.insert(c.id, r_strict)?;
    }
    let sol = place(users, &strict)?;
    let (sol, radii) = match mode {
        LqMode::Strict => (sol, strict),
        LqMode::Fair => {
            let radii = radii_at(h, &classes, env, &k)?;
            let fair = if users.is_empty() { sol } else { evaluate_center(sol.x_d, sol.y_d, users, &radii)? };
            (fair, radii)
        }
    };
    Ok(AlgorithmResult::from_solution(Algorithm::Lq, h, &sol, users, &classes, radii, started))
}

/// Settings shared by every algorithm in one run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolveOptions {
    /// ES grid size over the altitude bracket.
    pub grid_points: usize,
    pub lq_mode: LqMode,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            grid_points: 9,
            lq_mode: LqMode::Fair,
        }
    }
}

/// Runs one algorithm end to end. The reported runtime covers bracket and
/// radius computation as well as horizontal placement.
pub fn solve(
    algorithm: Algorithm,
    users: &[User],
    classes: &[QosClass],
    env: &Environment,
    radio: &RadioConfig,
    opts: &SolveOptions,
) -> Result<AlgorithmResult> {
    let started = Instant::now();
    let mut result = match algorithm {
        Algorithm::Es => {
            let bracket = altitude_bracket(classes, env, radio)?;
            let grid = AltitudeGrid::over(&bracket, opts.grid_points)?;
            exhaustive_search(users, classes, env, radio, &grid)?
        }
        Algorithm::Mwa => mwa_place(users, classes, env, radio)?,
        Algorithm::Lq => lq_place(users, classes, env, radio, opts.lq_mode)?,
    };
    result.runtime_s = started.elapsed().as_secs_f64();
    Ok(result)
}
