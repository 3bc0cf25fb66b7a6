//! Probabilistic mean air-to-ground path loss.
//!
//! The link between a UAV at altitude `h` and a ground user at horizontal
//! distance `r` is line-of-sight with a probability that follows an S-curve in
//! the elevation angle. The mean loss blends the free-space term with the LoS
//! and NLoS excess losses:
//!
//! ```text
//! L(h, r) = A / (1 + a·exp(-b(θ - a))) + 10·log10(h² + r²) + B
//! A = η_LoS - η_NLoS
//! B = 20·log10(4π·fc / c) + η_NLoS
//! ```
//!
//! All angles on the public surface are in degrees, which is the unit the
//! S-curve constants `a` and `b` are calibrated in.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Propagation constants describing one terrain class.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Environment {
    /// S-curve offset parameter (dimensionless, also the angle offset in degrees).
    pub a: f64,
    /// S-curve steepness, per degree.
    pub b: f64,
    /// Mean excess loss of LoS links, dB.
    pub eta_los: f64,
    /// Mean excess loss of NLoS links, dB.
    pub eta_nlos: f64,
}

impl Environment {
    pub fn new(a: f64, b: f64, eta_los: f64, eta_nlos: f64) -> Result<Self> {
        let env = Environment {
            a,
            b,
            eta_los,
            eta_nlos,
        };
        env.validate()?;
        Ok(env)
    }

    /// Urban terrain: a = 9.61, b = 0.16, η_LoS = 1 dB, η_NLoS = 20 dB.
    pub fn urban() -> Self {
        Environment {
            a: 9.61,
            b: 0.16,
            eta_los: 1.0,
            eta_nlos: 20.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a > 0.0 && self.a.is_finite()) {
            return Err(Error::input(format!("environment: a must be > 0, got {}", self.a)));
        }
        if !(self.b > 0.0 && self.b.is_finite()) {
            return Err(Error::input(format!("environment: b must be > 0, got {}", self.b)));
        }
        if !(self.eta_los >= 0.0 && self.eta_nlos >= self.eta_los && self.eta_nlos.is_finite()) {
            return Err(Error::input(format!(
                "environment: need eta_nlos >= eta_los >= 0, got eta_los={} eta_nlos={}",
                self.eta_los, self.eta_nlos
            )));
        }
        Ok(())
    }
}

/// Carrier frequency and link-budget powers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadioConfig {
    /// Carrier frequency, Hz.
    pub fc_hz: f64,
    /// Transmit power, dBm.
    pub pt_dbm: f64,
    /// Noise power, dBm.
    pub pn_dbm: f64,
}

impl RadioConfig {
    pub fn new(fc_hz: f64, pt_dbm: f64, pn_dbm: f64) -> Result<Self> {
        let radio = RadioConfig {
            fc_hz,
            pt_dbm,
            pn_dbm,
        };
        radio.validate()?;
        Ok(radio)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.fc_hz > 0.0 && self.fc_hz.is_finite()) {
            return Err(Error::input(format!("radio: fc_hz must be > 0, got {}", self.fc_hz)));
        }
        if !(self.pt_dbm.is_finite() && self.pn_dbm.is_finite() && self.pt_dbm > self.pn_dbm) {
            return Err(Error::input(format!(
                "radio: need pt_dbm > pn_dbm, got pt_dbm={} pn_dbm={}",
                self.pt_dbm, self.pn_dbm
            )));
        }
        Ok(())
    }

    /// Speed of light used in the free-space term.
    pub fn c(&self) -> f64 {
        SPEED_OF_LIGHT
    }
}

/// The `A` and `B` terms of the closed-form mean loss, always derived from
/// an [`Environment`] and a [`RadioConfig`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathLossConstants {
    a_db: f64,
    b_db: f64,
}

impl PathLossConstants {
    pub fn new(env: &Environment, radio: &RadioConfig) -> Self {
        PathLossConstants {
            a_db: env.eta_los - env.eta_nlos,
            b_db: 20.0 * (4.0 * PI * radio.fc_hz / radio.c()).log10() + env.eta_nlos,
        }
    }

    /// `A = η_LoS - η_NLoS` (never positive).
    pub fn a_db(&self) -> f64 {
        self.a_db
    }

    /// `B = 20·log10(4π·fc/c) + η_NLoS`.
    pub fn b_db(&self) -> f64 {
        self.b_db
    }
}

/// Identifier of a QoS class. Class ids are ordered by the caller; the
/// "most demanding" class is the one with the smallest loss threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ClassId(pub u32);

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A group of users sharing one SNR requirement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QosClass {
    pub id: ClassId,
    /// Required mean SNR, dB.
    pub gamma_th: f64,
    /// Spatial density, users per km².
    pub lambda: f64,
    /// Path-loss threshold `pt - pn - gamma_th`, dB.
    pub l_th: f64,
}

impl QosClass {
    pub fn new(id: u32, gamma_th: f64, lambda: f64, radio: &RadioConfig) -> Result<Self> {
        if !gamma_th.is_finite() {
            return Err(Error::input(format!("class {id}: gamma_th_db must be finite")));
        }
        if !(lambda >= 0.0 && lambda.is_finite()) {
            return Err(Error::input(format!(
                "class {id}: lambda_per_km2 must be >= 0, got {lambda}"
            )));
        }
        Ok(QosClass {
            id: ClassId(id),
            gamma_th,
            lambda,
            l_th: loss_threshold(radio, gamma_th),
        })
    }

    /// Same class with a different density.
    pub fn with_lambda(mut self, lambda: f64) -> Self {
        self.lambda = lambda;
        self
    }
}

/// Sorts classes by loss threshold (most demanding first) and rejects
/// duplicate ids.
pub fn sorted_classes(classes: &[QosClass]) -> Result<Vec<QosClass>> {
    if classes.is_empty() {
        return Err(Error::input("at least one QoS class is required"));
    }
    let mut sorted = classes.to_vec();
    sorted.sort_by(|p, q| p.l_th.total_cmp(&q.l_th).then(p.id.cmp(&q.id)));
    let mut ids: Vec<ClassId> = sorted.iter().map(|c| c.id).collect();
    ids.sort();
    if ids.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::input("QoS class ids must be distinct"));
    }
    Ok(sorted)
}

/// LoS probability at elevation `theta_deg` (degrees, in `(0, 90]`).
pub fn los_probability(theta_deg: f64, env: &Environment) -> Result<f64> {
    if !(theta_deg > 0.0 && theta_deg <= 90.0) {
        return Err(Error::domain(format!(
            "elevation angle must lie in (0, 90] degrees, got {theta_deg}"
        )));
    }
    Ok(los_probability_unchecked(theta_deg, env))
}

#[inline]
pub(crate) fn los_probability_unchecked(theta_deg: f64, env: &Environment) -> f64 {
    1.0 / (1.0 + env.a * (-env.b * (theta_deg - env.a)).exp())
}

/// Elevation angle in degrees; `r = 0` maps to the 90° limit.
#[inline]
pub fn elevation_deg(h: f64, r: f64) -> f64 {
    if r == 0.0 {
        90.0
    } else {
        (h / r).atan().to_degrees()
    }
}

#[inline]
pub(crate) fn mean_path_loss_unchecked(
    h: f64,
    r: f64,
    env: &Environment,
    k: &PathLossConstants,
) -> f64 {
    let p_los = los_probability_unchecked(elevation_deg(h, r), env);
    k.a_db * p_los + 10.0 * (h * h + r * r).log10() + k.b_db
}

/// Mean path loss in dB for a UAV at altitude `h` and a user at horizontal
/// distance `r` (both metres).
pub fn mean_path_loss(h: f64, r: f64, env: &Environment, radio: &RadioConfig) -> Result<f64> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::domain(format!("altitude must be > 0, got {h}")));
    }
    if !(r >= 0.0 && r.is_finite()) {
        return Err(Error::domain(format!("horizontal distance must be >= 0, got {r}")));
    }
    Ok(mean_path_loss_unchecked(h, r, env, &PathLossConstants::new(env, radio)))
}

/// Mean path loss written in terms of the elevation angle and horizontal
/// distance, `A·P_LoS(θ) + 20·log10(r / cos θ) + B`.
///
/// Undefined at 90°, where the Cartesian [`mean_path_loss`] must be used.
pub fn mean_path_loss_polar(
    theta_deg: f64,
    r: f64,
    env: &Environment,
    radio: &RadioConfig,
) -> Result<f64> {
    if !(theta_deg > 0.0 && theta_deg < 90.0) {
        return Err(Error::domain(format!(
            "polar form requires 0 < theta < 90 degrees, got {theta_deg}"
        )));
    }
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::domain(format!("polar form requires r > 0, got {r}")));
    }
    let k = PathLossConstants::new(env, radio);
    let p_los = los_probability_unchecked(theta_deg, env);
    Ok(k.a_db * p_los + 20.0 * (r / theta_deg.to_radians().cos()).log10() + k.b_db)
}

/// Largest mean path loss a user with SNR requirement `gamma_th` tolerates.
pub fn loss_threshold(radio: &RadioConfig, gamma_th: f64) -> f64 {
    radio.pt_dbm - radio.pn_dbm - gamma_th
}

/// Mean SNR in dB, `pt - L(h, r) - pn`.
pub fn mean_snr(h: f64, r: f64, env: &Environment, radio: &RadioConfig) -> Result<f64> {
    Ok(radio.pt_dbm - mean_path_loss(h, r, env, radio)? - radio.pn_dbm)
}
