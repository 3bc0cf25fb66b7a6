//! Coverage radius, optimal elevation angle and the altitude bracket.
//!
//! For a fixed altitude the mean path loss grows strictly with horizontal
//! distance, so every QoS class is covered inside a disc. The disc radius is
//! found by bisection. The radius-maximizing elevation angle depends only on
//! the environment, which pins the best altitude of every class on a single
//! ray and orders those altitudes by loss threshold.

use serde::{Deserialize, Serialize};

use crate::channel::{
    los_probability_unchecked, mean_path_loss_unchecked, sorted_classes, ClassId, Environment,
    PathLossConstants, QosClass, RadioConfig,
};
use crate::error::{Error, Result};
use crate::numeric::{bisect_boundary, golden_section_max};

/// Absolute tolerance of coverage-radius root finding, metres.
pub const RADIUS_TOL_M: f64 = 1e-3;

/// Upper cap of the doubling search for a radius bracket, metres.
pub const RADIUS_CAP_M: f64 = 1e7;

/// Golden-section tolerance of the optimal elevation search, degrees.
pub const ANGLE_TOL_DEG: f64 = 1e-7;

/// Coverage disc of one class at a given altitude.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoverageDisc {
    pub class_id: ClassId,
    pub radius: f64,
}

/// Radius-maximizing operating point of one loss threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimalPoint {
    pub theta_star: f64,
    pub h_star: f64,
    pub r_star: f64,
}

/// Closed altitude interval `[h_lo, h_hi]` spanned by the optimal altitudes of
/// the most and least demanding classes. Some optimal placement altitude lies
/// inside it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AltitudeBracket {
    pub h_lo: f64,
    pub h_hi: f64,
}

impl AltitudeBracket {
    pub fn new(h_lo: f64, h_hi: f64) -> Result<Self> {
        if !(h_lo > 0.0 && h_lo <= h_hi && h_hi.is_finite()) {
            return Err(Error::input(format!(
                "altitude bracket requires 0 < h_lo <= h_hi, got [{h_lo}, {h_hi}]"
            )));
        }
        Ok(AltitudeBracket { h_lo, h_hi })
    }

    pub fn width(&self) -> f64 {
        self.h_hi - self.h_lo
    }

    pub fn contains(&self, h: f64) -> bool {
        h >= self.h_lo && h <= self.h_hi
    }
}

/// Radius search with precomputed loss constants.
pub(crate) fn coverage_radius_with(
    h: f64,
    l_th: f64,
    env: &Environment,
    k: &PathLossConstants,
) -> f64 {
    let within = |r: f64| mean_path_loss_unchecked(h, r, env, k) <= l_th;
    if !within(0.0) {
        return 0.0;
    }
    let mut r_hi = h.max(1.0);
    while within(r_hi) {
        if r_hi >= RADIUS_CAP_M {
            return RADIUS_CAP_M;
        }
        r_hi = (2.0 * r_hi).min(RADIUS_CAP_M);
    }
    bisect_boundary(0.0, r_hi, RADIUS_TOL_M, within).0
}

/// Same boundary as [`coverage_radius_with`], but the bracket is grown outward
/// from `guess` in steps starting at `step`. Pays off when consecutive
/// altitudes are close and the radius barely moves.
pub(crate) fn coverage_radius_near(
    h: f64,
    l_th: f64,
    env: &Environment,
    k: &PathLossConstants,
    guess: f64,
    step: f64,
) -> f64 {
    let within = |r: f64| mean_path_loss_unchecked(h, r, env, k) <= l_th;
    if !(guess > 0.0 && guess < RADIUS_CAP_M && step > 0.0) {
        return coverage_radius_with(h, l_th, env, k);
    }
    let mut step = step.max(RADIUS_TOL_M);
    let (lo, hi) = if within(guess) {
        let mut lo = guess;
        let mut hi = guess + step;
        while within(hi) {
            if hi >= RADIUS_CAP_M {
                return RADIUS_CAP_M;
            }
            lo = hi;
            step *= 2.0;
            hi = (guess + step).min(RADIUS_CAP_M);
        }
        (lo, hi)
    } else {
        let mut hi = guess;
        let mut lo = guess - step;
        loop {
            if lo <= 0.0 {
                if !within(0.0) {
                    return 0.0;
                }
                break (0.0, hi);
            }
            if within(lo) {
                break (lo, hi);
            }
            hi = lo;
            step *= 2.0;
            lo = guess - step;
        }
    };
    bisect_boundary(lo, hi, RADIUS_TOL_M, within).0
}

/// Largest horizontal distance at which a UAV at altitude `h` still meets the
/// loss threshold `l_th`. Zero when even the user directly below is out of
/// reach.
pub fn coverage_radius(h: f64, l_th: f64, env: &Environment, radio: &RadioConfig) -> Result<f64> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::domain(format!("altitude must be > 0, got {h}")));
    }
    Ok(coverage_radius_with(h, l_th, env, &PathLossConstants::new(env, radio)))
}

/// Coverage discs of every class at altitude `h`.
pub fn coverage_discs(
    h: f64,
    classes: &[QosClass],
    env: &Environment,
    radio: &RadioConfig,
) -> Result<Vec<CoverageDisc>> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::domain(format!("altitude must be > 0, got {h}")));
    }
    let k = PathLossConstants::new(env, radio);
    Ok(classes
        .iter()
        .map(|c| CoverageDisc {
            class_id: c.id,
            radius: coverage_radius_with(h, c.l_th, env, &k),
        })
        .collect())
}

/// `20·log10(cos θ) - A·P_LoS(θ)`: the part of the log-radius that depends on
/// the elevation angle alone.
fn angular_gain(theta_deg: f64, env: &Environment) -> f64 {
    let a_db = env.eta_los - env.eta_nlos;
    20.0 * theta_deg.to_radians().cos().log10() - a_db * los_probability_unchecked(theta_deg, env)
}

/// Elevation angle (degrees) that maximizes the coverage radius for any loss
/// threshold in this environment.
pub fn optimal_elevation(env: &Environment) -> f64 {
    golden_section_max(1e-9, 90.0 - 1e-9, ANGLE_TOL_DEG, |t| angular_gain(t, env))
}

/// Optimal altitude and maximal coverage radius for loss threshold `l_th`.
///
/// A threshold that is non-positive or not finite cannot be met by a passive
/// channel and is reported as infeasible.
pub fn optimal_pair(l_th: f64, env: &Environment, radio: &RadioConfig) -> Result<OptimalPoint> {
    optimal_pair_at(l_th, optimal_elevation(env), env, &PathLossConstants::new(env, radio))
}

fn optimal_pair_at(
    l_th: f64,
    theta_star: f64,
    env: &Environment,
    k: &PathLossConstants,
) -> Result<OptimalPoint> {
    if !(l_th > 0.0 && l_th.is_finite()) {
        return Err(Error::InfeasibleThreshold { l_th });
    }
    let theta = theta_star.to_radians();
    // 20·log10(r / cos θ*) = l_th - B - A·P_LoS(θ*)
    let log_slant = (l_th - k.b_db() - k.a_db() * los_probability_unchecked(theta_star, env)) / 20.0;
    let r_star = theta.cos() * 10f64.powf(log_slant);
    let h_star = r_star * theta.tan();
    if !(r_star > 0.0 && r_star.is_finite() && h_star > 0.0 && h_star.is_finite()) {
        return Err(Error::InfeasibleThreshold { l_th });
    }
    Ok(OptimalPoint {
        theta_star,
        h_star,
        r_star,
    })
}

/// Altitude interval between the optimal altitudes of the most demanding and
/// the least demanding class.
pub fn altitude_bracket(
    classes: &[QosClass],
    env: &Environment,
    radio: &RadioConfig,
) -> Result<AltitudeBracket> {
    let sorted = sorted_classes(classes)?;
    let theta = optimal_elevation(env);
    let k = PathLossConstants::new(env, radio);
    let lo = optimal_pair_at(sorted[0].l_th, theta, env, &k)?;
    let hi = optimal_pair_at(sorted[sorted.len() - 1].l_th, theta, env, &k)?;
    Ok(AltitudeBracket {
        h_lo: lo.h_star,
        h_hi: hi.h_star,
    })
}
