//! TOML scenario files.
//!
//! ```toml
//! [area]
//! width_km = 3.0
//! height_km = 3.0
//!
//! [radio]
//! fc_hz = 2e9
//! pt_dbm = 30.0
//! pn_dbm = -120.0
//!
//! [environment]
//! preset = "urban"        # or a, b, eta_los_db, eta_nlos_db
//!
//! [class.1]
//! gamma_th_db = 50.0
//! lambda_per_km2 = 5.5
//!
//! [class.2]
//! gamma_th_db = 47.0
//! lambda_per_km2 = 5.5
//!
//! [sim]                   # optional, every key has a default
//! trials = 100
//! master_seed = 0
//! grid_points = 9
//! rho = 1.0
//!
//! [algorithms]
//! list = ["es", "mwa", "lq"]
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algorithms::{Algorithm, LqMode, SolveOptions};
use crate::channel::{Environment, QosClass, RadioConfig};
use crate::error::{Error, Result};
use crate::sim::{CountMode, Scenario};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AreaSection {
    pub width_km: f64,
    pub height_km: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RadioSection {
    pub fc_hz: f64,
    pub pt_dbm: f64,
    pub pn_dbm: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnvironmentSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta_los_db: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta_nlos_db: Option<f64>,
}

impl EnvironmentSection {
    pub fn to_environment(&self) -> Result<Environment> {
        let explicit = [self.a, self.b, self.eta_los_db, self.eta_nlos_db];
        match &self.preset {
            Some(p) if explicit.iter().any(Option::is_some) => Err(Error::input(format!(
                "environment: preset = {p:?} cannot be combined with a, b, eta_los_db or eta_nlos_db"
            ))),
            Some(p) if p.eq_ignore_ascii_case("urban") => Ok(Environment::urban()),
            Some(p) => Err(Error::input(format!("environment.preset: unknown preset {p:?} (only \"urban\" is built in)"))),
            None => {
                let get = |v: Option<f64>, key: &str| {
                    v.ok_or_else(|| Error::input(format!("environment.{key} is required without a preset")))
                };
                Environment::new(
                    get(self.a, "a")?,
                    get(self.b, "b")?,
                    get(self.eta_los_db, "eta_los_db")?,
                    get(self.eta_nlos_db, "eta_nlos_db")?,
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassSection {
    pub gamma_th_db: f64,
    pub lambda_per_km2: f64,
}

fn default_trials() -> u64 {
    100
}

fn default_grid_points() -> usize {
    9
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimSection {
    #[serde(default = "default_trials")]
    pub trials: u64,
    #[serde(default)]
    pub master_seed: u64,
    #[serde(default = "default_grid_points")]
    pub grid_points: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<f64>,
    #[serde(default)]
    pub count_mode: CountMode,
    #[serde(default)]
    pub lq_mode: LqMode,
}

impl Default for SimSection {
    fn default() -> Self {
        SimSection {
            trials: default_trials(),
            master_seed: 0,
            grid_points: default_grid_points(),
            rho: None,
            count_mode: CountMode::Poisson,
            lq_mode: LqMode::Fair,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgorithmsSection {
    pub list: Vec<Algorithm>,
}

/// Parsed scenario document. Kept verbatim so results can echo it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub area: AreaSection,
    pub radio: RadioSection,
    pub environment: EnvironmentSection,
    pub class: BTreeMap<String, ClassSection>,
    #[serde(default)]
    pub sim: SimSection,
    pub algorithms: AlgorithmsSection,
}

/// Command-line overrides applied on top of a scenario file.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub fixed_count: bool,
    pub strict_lq: bool,
}

impl ScenarioFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::input(format!("scenario: {e}")))
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        toml::from_str(&text).map_err(|e| Error::input(format!("{}: {e}", path.display())))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("scenario serializes to TOML")
    }

    /// Validated scenario with the overrides applied.
    pub fn to_scenario(&self, overrides: &Overrides) -> Result<Scenario> {
        let radio = RadioConfig::new(self.radio.fc_hz, self.radio.pt_dbm, self.radio.pn_dbm)?;
        let env = self.environment.to_environment()?;
        if self.class.is_empty() {
            return Err(Error::input("scenario: at least one [class.<id>] section is required"));
        }
        let classes = self
            .class
            .iter()
            .map(|(key, c)| {
                let id: u32 = key
                    .parse()
                    .map_err(|_| Error::input(format!("class.{key}: class id must be a non-negative integer")))?;
                QosClass::new(id, c.gamma_th_db, c.lambda_per_km2, &radio)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut scenario = Scenario {
            width_km: self.area.width_km,
            height_km: self.area.height_km,
            env,
            radio,
            classes,
            trials: self.sim.trials,
            master_seed: overrides.seed.unwrap_or(self.sim.master_seed),
            algorithms: self.algorithms.list.clone(),
            solve: SolveOptions {
                grid_points: self.sim.grid_points,
                lq_mode: if overrides.strict_lq { LqMode::Strict } else { self.sim.lq_mode },
            },
            count_mode: if overrides.fixed_count { CountMode::Fixed } else { self.sim.count_mode },
        };
        if let Some(rho) = self.sim.rho {
            scenario = scenario.with_rho(rho).map_err(|e| Error::input(format!("sim.rho: {e}")))?;
        }
        scenario.validate()?;
        Ok(scenario)
    }
}
