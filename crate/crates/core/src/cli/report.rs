//! Result documents and CSV plot data.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::algorithms::{Algorithm, LqMode};
use crate::channel::ClassId;
use crate::error::{Error, Result};
use crate::placement::User;
use crate::sim::{AlgorithmSummary, CdfSeries, CountMode, SweepPoint, TrialRecord};

use super::scenario::ScenarioFile;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CdfMetric {
    Covered,
    Runtime,
}

impl CdfMetric {
    pub fn as_str(&self) -> &'static str {
        match self {
            CdfMetric::Covered => "covered",
            CdfMetric::Runtime => "runtime",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CdfEntry {
    pub algorithm: Algorithm,
    pub metric: CdfMetric,
    pub series: CdfSeries,
}

/// Everything needed to reproduce and inspect one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub schema_version: u32,
    pub scenario: ScenarioFile,
    pub master_seed: u64,
    pub count_mode: CountMode,
    pub lq_mode: LqMode,
    pub summaries: Vec<AlgorithmSummary>,
    pub trials: Vec<TrialRecord>,
    #[serde(default)]
    pub cdfs: Vec<CdfEntry>,
    #[serde(default)]
    pub sweep: Vec<SweepPoint>,
}

impl ResultDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::input(format!("result document: {e}")))
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()).map_err(|source| io_err(path, source))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| io_err(path, source))?;
        Self::from_json(&text)
    }
}

fn io_err(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn csv_err(path: &Path, e: csv::Error) -> Error {
    match e.position() {
        Some(pos) => Error::input(format!("{}: line {}: {e}", path.display(), pos.line())),
        None => Error::input(format!("{}: {e}", path.display())),
    }
}

fn writer(path: &Path) -> Result<csv::Writer<BufWriter<File>>> {
    let file = File::create(path).map_err(|source| io_err(path, source))?;
    Ok(csv::Writer::from_writer(BufWriter::new(file)))
}

fn finish<W: Write>(path: &Path, w: csv::Writer<W>) -> Result<()> {
    w.into_inner()
        .map_err(|e| io_err(path, e.into_error()))?
        .flush()
        .map_err(|source| io_err(path, source))
}

#[derive(Debug, Serialize, Deserialize)]
struct CdfRow {
    value: f64,
    probability: f64,
}

/// Writes `value,probability` rows.
pub fn write_cdf_csv(path: &Path, series: &CdfSeries) -> Result<()> {
    let mut w = writer(path)?;
    for (value, probability) in series.points() {
        w.serialize(CdfRow { value, probability }).map_err(|e| csv_err(path, e))?;
    }
    finish(path, w)
}

pub fn read_cdf_csv(path: &Path) -> Result<CdfSeries> {
    let mut r = csv::Reader::from_path(path).map_err(|e| csv_err(path, e))?;
    let mut series = CdfSeries {
        values: Vec::new(),
        probabilities: Vec::new(),
    };
    for row in r.deserialize::<CdfRow>() {
        let row = row.map_err(|e| csv_err(path, e))?;
        series.values.push(row.value);
        series.probabilities.push(row.probability);
    }
    Ok(series)
}

/// Writes `rho,algorithm,mean_covered,stderr` rows.
pub fn write_sweep_csv(path: &Path, sweep: &[SweepPoint]) -> Result<()> {
    let mut w = writer(path)?;
    for p in sweep {
        w.serialize(p).map_err(|e| csv_err(path, e))?;
    }
    finish(path, w)
}

pub fn read_sweep_csv(path: &Path) -> Result<Vec<SweepPoint>> {
    let mut r = csv::Reader::from_path(path).map_err(|e| csv_err(path, e))?;
    r.deserialize().map(|row| row.map_err(|e| csv_err(path, e))).collect()
}

#[derive(Debug, Serialize, Deserialize)]
struct UserRow {
    x_m: f64,
    y_m: f64,
    class_id: u32,
}

/// Reads a users CSV with header `x_m,y_m,class_id`.
pub fn read_users_csv(path: &Path) -> Result<Vec<User>> {
    let mut r = csv::Reader::from_path(path).map_err(|e| csv_err(path, e))?;
    let headers = r.headers().map_err(|e| csv_err(path, e))?.clone();
    if headers.iter().map(str::trim).collect::<Vec<_>>() != ["x_m", "y_m", "class_id"] {
        return Err(Error::input(format!(
            "{}: line 1: expected header x_m,y_m,class_id",
            path.display()
        )));
    }
    let mut users = Vec::new();
    for row in r.deserialize::<UserRow>() {
        let row = row.map_err(|e| csv_err(path, e))?;
        if !(row.x_m.is_finite() && row.y_m.is_finite()) {
            return Err(Error::input(format!(
                "{}: line {}: non-finite coordinate",
                path.display(),
                users.len() + 2
            )));
        }
        users.push(User {
            x: row.x_m,
            y: row.y_m,
            class_id: ClassId(row.class_id),
        });
    }
    Ok(users)
}

pub fn write_users_csv(path: &Path, users: &[User]) -> Result<()> {
    let mut w = writer(path)?;
    for u in users {
        w.serialize(UserRow {
            x_m: u.x,
            y_m: u.y,
            class_id: u.class_id.0,
        })
        .map_err(|e| csv_err(path, e))?;
    }
    finish(path, w)
}

pub fn cdf_csv_path(dir: &Path, metric: CdfMetric, algorithm: Algorithm) -> PathBuf {
    dir.join(format!("cdf_{}_{}.csv", metric.as_str(), algorithm))
}
