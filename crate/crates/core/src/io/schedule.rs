use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::sim::{Matchup, Schedule};

use super::{field, open_csv, records, write_rows, DataError};

pub const SCHEDULE_HEADER: &str = "home_id,away_id,count";

/// `count` games with `home_id` hosting `away_id`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScheduleEntry {
    pub home_id: u32,
    pub away_id: u32,
    pub count: u32,
}

pub fn load_schedule(path: impl AsRef<Path>) -> Result<Vec<ScheduleEntry>, DataError> {
    let path = path.as_ref();
    let mut reader = open_csv(path, SCHEDULE_HEADER)?;
    let mut out = Vec::new();
    for (line, rec) in records(path, &mut reader)? {
        let entry = ScheduleEntry {
            home_id: field(path, line, &rec, 0, "home_id")?,
            away_id: field(path, line, &rec, 1, "away_id")?,
            count: field(path, line, &rec, 2, "count")?,
        };
        if entry.home_id == entry.away_id {
            return Err(DataError::Invalid {
                path: path.to_path_buf(),
                line,
                field: "away_id",
                message: format!("team {} cannot play itself", entry.home_id),
            });
        }
        out.push(entry);
    }
    if out.is_empty() {
        return Err(DataError::content(path, "no games"));
    }
    Ok(out)
}

pub fn write_schedule(path: impl AsRef<Path>, entries: &[ScheduleEntry]) -> Result<(), DataError> {
    write_rows(
        path.as_ref(),
        SCHEDULE_HEADER,
        entries
            .iter()
            .map(|e| [e.home_id.to_string(), e.away_id.to_string(), e.count.to_string()]),
    )
}

/// Games in file order, each entry repeated `count` times.
pub fn expand_schedule(entries: &[ScheduleEntry]) -> Schedule {
    let games = entries
        .iter()
        .flat_map(|e| {
            std::iter::repeat_n(
                Matchup {
                    home: e.home_id,
                    away: e.away_id,
                },
                e.count as usize,
            )
        })
        .collect();
    Schedule { games }
}
