use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::sim::{config_digest, LeagueConfig, Schedule};

use super::schedule::{expand_schedule, ScheduleEntry};
use super::DataError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ScheduleSource {
    /// Repeated circle-method round robin over the league, slots in team-id order.
    Builtin,
    /// Read from a schedule CSV; the entries are kept so the run can be checked
    /// without the original file.
    File {
        path: String,
        entries: Vec<ScheduleEntry>,
    },
}

impl ScheduleSource {
    pub fn schedule(&self, league: &LeagueConfig) -> Result<Schedule, DataError> {
        match self {
            ScheduleSource::Builtin => league
                .round_robin()
                .map_err(|e| DataError::Content {
                    path: PathBuf::new(),
                    message: e.to_string(),
                }),
            ScheduleSource::File { entries, .. } => Ok(expand_schedule(entries)),
        }
    }
}

/// Everything needed to regenerate a dataset bit for bit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentManifest {
    pub tool: String,
    pub tool_version: String,
    pub master_seed: u64,
    pub iterations: u32,
    pub league: LeagueConfig,
    pub schedule: ScheduleSource,
    /// SHA-256 over the league configuration and the ordered schedule.
    pub config_digest: String,
}

impl ExperimentManifest {
    pub fn new(
        league: LeagueConfig,
        schedule: ScheduleSource,
        iterations: u32,
        master_seed: u64,
    ) -> Result<Self, DataError> {
        let digest = config_digest(&league, &schedule.schedule(&league)?);
        Ok(Self {
            tool: env!("CARGO_PKG_NAME").into(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            master_seed,
            iterations,
            league,
            schedule,
            config_digest: digest,
        })
    }

    /// Recomputes the digest from the stored league and schedule.
    pub fn verify(&self) -> Result<(), String> {
        let schedule = self.schedule.schedule(&self.league).map_err(|e| e.to_string())?;
        let digest = config_digest(&self.league, &schedule);
        if digest == self.config_digest {
            Ok(())
        } else {
            Err(format!(
                "config digest mismatch: stored {}, recomputed {digest}",
                self.config_digest
            ))
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }

    pub fn write(&self, path: &Path) -> Result<(), DataError> {
        std::fs::write(path, self.to_json()).map_err(|e| DataError::io(path, e))
    }

    pub fn read(path: &Path) -> Result<Self, DataError> {
        let text = std::fs::read_to_string(path).map_err(|e| DataError::io(path, e))?;
        let m: Self = serde_json::from_str(&text).map_err(|e| DataError::Parse {
            path: path.to_path_buf(),
            line: e.line() as u64,
            message: e.to_string(),
        })?;
        m.verify().map_err(|msg| DataError::content(path, msg))?;
        Ok(m)
    }
}

/// `runs/x.csv` → `runs/x.manifest.json`.
pub fn manifest_path(dataset: &Path) -> PathBuf {
    let stem = dataset
        .file_stem()
        .map_or_else(|| "dataset".into(), |s| s.to_string_lossy().into_owned());
    dataset.with_file_name(format!("{stem}.manifest.json"))
}
