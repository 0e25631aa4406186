//! Experiment campaigns behind the `graphon-band` subcommands.
//!
//! Each `run_*` function is deterministic given its configuration: per-trial
//! randomness comes from seeds derived from `(config.seed, trial index)` and
//! rows are emitted in trial order.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};

pub mod bound;
pub mod config;
pub mod converge;
pub mod cutnorm;
pub mod laws;

pub use config::{BoundFixture, ExperimentConfig};

/// Process exit status of a campaign.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(i32)]
pub enum Status {
    Success = 0,
    AssertionFailed = 1,
    ConfigOrIo = 2,
    ResourceGuard = 3,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }

    pub fn for_error(err: &Error) -> Status {
        match err {
            Error::GuardExceeded { .. } => Status::ResourceGuard,
            Error::InvariantViolation(_) => Status::AssertionFailed,
            _ => Status::ConfigOrIo,
        }
    }
}

/// What a campaign produced.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub status: Status,
    /// Human-readable lines for stdout.
    pub summary: Vec<String>,
    pub artifacts: Vec<PathBuf>,
}

/// Reals in CSV output: 17 significant digits, `.` decimal separator.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

pub(crate) fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

pub(crate) fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub(crate) fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(serde_json::from_str(&text)?)
}

pub(crate) fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let mut writer = csv::Writer::from_path(path).map_err(|e| csv_error(path, e))?;
    writer.write_record(header).map_err(|e| csv_error(path, e))?;
    for row in rows {
        writer.write_record(row).map_err(|e| csv_error(path, e))?;
    }
    writer.flush().map_err(|e| Error::io(path, e))
}

fn csv_error(path: &Path, err: csv::Error) -> Error {
    Error::io(path, std::io::Error::other(err))
}
