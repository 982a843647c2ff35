//! File formats: team parameters, schedules, simulated datasets with their
//! manifests, comparison reports and scatter plots.
//!
//! CSV headers are fixed:
//!
//! | file           | header                                   |
//! |----------------|------------------------------------------|
//! | teams          | `team_id,name,off_rpg,def_rpg`           |
//! | dataset        | `iteration,team_id,wins,losses,rs,ra`    |
//! | schedule       | `home_id,away_id,count`                  |
//!
//! A dataset `x.csv` is accompanied by `x.manifest.json`.

mod dataset;
mod manifest;
mod report;
mod schedule;
mod svg;
mod teams;

use std::path::{Path, PathBuf};

use thiserror::Error;

pub use dataset::{read_dataset, read_dataset_with_manifest, write_dataset, DATASET_HEADER};
pub use manifest::{manifest_path, ExperimentManifest, ScheduleSource};
pub use report::{parse_comparison_json, render_comparison, render_fit_json, ReportFormat};
pub use schedule::{expand_schedule, load_schedule, write_schedule, ScheduleEntry, SCHEDULE_HEADER};
pub use svg::{render_scatter_svg, scatter_svg};
pub use teams::{load_team_params, write_team_params, TEAMS_HEADER};

#[derive(Debug, Error)]
pub enum DataError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: header must be exactly `{expected}`, found `{found}`")]
    Header {
        path: PathBuf,
        expected: &'static str,
        found: String,
    },
    #[error("{path}, line {line}: {message}")]
    Parse {
        path: PathBuf,
        line: u64,
        message: String,
    },
    #[error("{path}, line {line}: invalid `{field}`: {message}")]
    Invalid {
        path: PathBuf,
        line: u64,
        field: &'static str,
        message: String,
    },
    #[error("{path}: {message}")]
    Content { path: PathBuf, message: String },
}

impl DataError {
    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        DataError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    pub(crate) fn content(path: &Path, message: impl Into<String>) -> Self {
        DataError::Content {
            path: path.to_path_buf(),
            message: message.into(),
        }
    }

    fn from_csv(path: &Path, err: csv::Error) -> Self {
        let line = err.position().map_or(0, |p| p.line());
        match err.into_kind() {
            csv::ErrorKind::Io(source) => DataError::io(path, source),
            kind => DataError::Parse {
                path: path.to_path_buf(),
                line,
                message: format!("{kind:?}"),
            },
        }
    }
}

/// Opens a CSV file and checks its header row against `expected`.
pub(crate) fn open_csv(
    path: &Path,
    expected: &'static str,
) -> Result<csv::Reader<std::fs::File>, DataError> {
    let file = std::fs::File::open(path).map_err(|e| DataError::io(path, e))?;
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(file);
    let header = reader.headers().map_err(|e| DataError::from_csv(path, e))?;
    let found = header.iter().collect::<Vec<_>>().join(",");
    if found != expected {
        return Err(DataError::Header {
            path: path.to_path_buf(),
            expected,
            found,
        });
    }
    Ok(reader)
}

/// Iterates data records with their 1-based file line numbers.
pub(crate) fn records(
    path: &Path,
    reader: &mut csv::Reader<std::fs::File>,
) -> Result<Vec<(u64, csv::StringRecord)>, DataError> {
    reader
        .records()
        .map(|r| {
            let rec = r.map_err(|e| DataError::from_csv(path, e))?;
            let line = rec.position().map_or(0, |p| p.line());
            Ok((line, rec))
        })
        .collect()
}

pub(crate) fn field<T: std::str::FromStr>(
    path: &Path,
    line: u64,
    rec: &csv::StringRecord,
    index: usize,
    name: &'static str,
) -> Result<T, DataError>
where
    T::Err: std::fmt::Display,
{
    let raw = rec.get(index).ok_or_else(|| DataError::Invalid {
        path: path.to_path_buf(),
        line,
        field: name,
        message: "missing".into(),
    })?;
    raw.trim().parse().map_err(|e: T::Err| DataError::Invalid {
        path: path.to_path_buf(),
        line,
        field: name,
        message: format!("`{raw}`: {e}"),
    })
}

pub(crate) fn csv_writer(path: &Path) -> Result<csv::Writer<std::fs::File>, DataError> {
    let file = std::fs::File::create(path).map_err(|e| DataError::io(path, e))?;
    Ok(csv::WriterBuilder::new().has_headers(false).from_writer(file))
}

pub(crate) fn write_rows<I, R>(path: &Path, header: &str, rows: I) -> Result<(), DataError>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut w = csv_writer(path)?;
    let fail = |e: csv::Error| DataError::from_csv(path, e);
    w.write_record(header.split(',')).map_err(fail)?;
    for row in rows {
        w.write_record(row).map_err(fail)?;
    }
    w.flush().map_err(|e| DataError::io(path, e))
}
