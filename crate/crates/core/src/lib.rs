//! Single-UAV base station placement for users with different SNR requirements.
//!
//! The crate is layered bottom-up:
//!
//! - [`channel`]: mean air-to-ground path loss and link-budget arithmetic.
//! - [`radius`]: coverage radius per class, optimal elevation angle and the
//!   altitude bracket that contains an optimal altitude.
//! - [`placement`]: exact horizontal placement for fixed radii, a brute-force
//!   grid oracle and a big-M model exporter.
//! - [`algorithms`]: exhaustive altitude search (ES), maximal weighted area
//!   (MWA) and the largest-QoS baseline (LQ).
//! - [`sim`]: seeded Monte Carlo trials, empirical CDFs and density sweeps.
//! - [`cli`]: scenario files, result documents and the commands behind the
//!   `uavbs` binary.
//!
//! ```
//! use uavbs::channel::{Environment, RadioConfig, loss_threshold};
//! use uavbs::radius::optimal_pair;
//!
//! let radio = RadioConfig::new(2e9, 30.0, -120.0).unwrap();
//! let l_th = loss_threshold(&radio, 50.0);
//! let best = optimal_pair(l_th, &Environment::urban(), &radio).unwrap();
//! assert!((best.h_star - 646.5).abs() < 1.0);
//! ```

pub mod algorithms;
pub mod channel;
pub mod cli;
pub mod error;
mod numeric;
pub mod placement;
pub mod radius;
pub mod sim;

pub use error::{Error, Result};
