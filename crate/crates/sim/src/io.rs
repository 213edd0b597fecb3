//! CSV result tables and JSON run manifests.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::{SimError, SimResult};

/// Writes results as CSV with a header row.
pub fn write_results<W: Write>(writer: W, results: &[SimResult]) -> Result<(), SimError> {
    let mut w = csv::Writer::from_writer(writer);
    for r in results {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_results<R: Read>(reader: R) -> Result<Vec<SimResult>, SimError> {
    csv::Reader::from_reader(reader)
        .deserialize()
        .map(|r| r.map_err(SimError::from))
        .collect()
}

/// Everything needed to regenerate an output file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub subcommand: String,
    pub params: serde_json::Value,
    pub version: String,
    pub seed: Option<u64>,
    /// Unix seconds.
    pub started: u64,
    pub finished: u64,
}

impl RunManifest {
    pub fn new(subcommand: &str, params: serde_json::Value, version: &str, seed: Option<u64>) -> Self {
        let now = unix_now();
        RunManifest {
            subcommand: subcommand.to_string(),
            params,
            version: version.to_string(),
            seed,
            started: now,
            finished: now,
        }
    }

    pub fn finish(&mut self) {
        self.finished = unix_now();
    }

    /// `out.csv` gets `out.csv.manifest.json`.
    pub fn path_for(output: &Path) -> PathBuf {
        let mut s = output.as_os_str().to_owned();
        s.push(".manifest.json");
        PathBuf::from(s)
    }

    pub fn save(&self, path: &Path) -> Result<(), SimError> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        std::fs::write(path, text)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, SimError> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }
}

fn unix_now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |d| d.as_secs())
}
