use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the placement library and its command-line front end.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of a model function.
    #[error("domain error: {0}")]
    Domain(String),

    /// No positive coverage radius exists for the requested loss threshold.
    #[error("infeasible threshold: l_th = {l_th} dB admits no positive coverage radius")]
    InfeasibleThreshold { l_th: f64 },

    /// Malformed or inconsistent user input.
    #[error("invalid input: {0}")]
    Input(String),

    /// A Monte Carlo trial failed; the seed reproduces it.
    #[error("trial {trial_id} (seed {seed:#018x}) failed: {source}")]
    Trial {
        trial_id: u64,
        seed: u64,
        #[source]
        source: Box<Error>,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Process exit code: 2 for input/validation problems, 3 for numerical infeasibility.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InfeasibleThreshold { .. } => 3,
            Error::Trial { source, .. } => source.exit_code(),
            Error::Domain(_) | Error::Input(_) | Error::Io { .. } => 2,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
