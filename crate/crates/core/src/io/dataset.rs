use std::collections::BTreeSet;
use std::path::Path;

use crate::sim::{SimDataset, TeamSeasonLine};

use super::manifest::{manifest_path, ExperimentManifest};
use super::{field, open_csv, records, write_rows, DataError};

pub const DATASET_HEADER: &str = "iteration,team_id,wins,losses,rs,ra";

/// Writes the rows in (iteration, team_id) order and the sidecar manifest.
pub fn write_dataset(
    path: impl AsRef<Path>,
    data: &SimDataset,
    manifest: &ExperimentManifest,
) -> Result<(), DataError> {
    let path = path.as_ref();
    if manifest.master_seed != data.master_seed || manifest.config_digest != data.config_digest {
        return Err(DataError::content(
            path,
            "manifest seed or digest does not match the dataset",
        ));
    }
    let mut rows: Vec<&TeamSeasonLine> = data.rows.iter().collect();
    rows.sort_by_key(|r| (r.iteration, r.team_id));
    write_rows(
        path,
        DATASET_HEADER,
        rows.iter().map(|r| {
            [
                r.iteration.to_string(),
                r.team_id.to_string(),
                r.wins.to_string(),
                r.losses.to_string(),
                r.rs.to_string(),
                r.ra.to_string(),
            ]
        }),
    )?;
    manifest.write(&manifest_path(path))
}

/// Reads a dataset; see [`read_dataset_with_manifest`].
pub fn read_dataset(path: impl AsRef<Path>) -> Result<SimDataset, DataError> {
    read_dataset_with_manifest(path).map(|(d, _)| d)
}

/// Reads a dataset and its sidecar manifest, if one exists.
///
/// With a manifest, its digest is re-verified, every team must belong to the
/// league and every season must have `games_per_team` games. Without one the
/// season length is taken from the first row, and the seed and digest are
/// left as `0` and `""`.
pub fn read_dataset_with_manifest(
    path: impl AsRef<Path>,
) -> Result<(SimDataset, Option<ExperimentManifest>), DataError> {
    let path = path.as_ref();
    let mpath = manifest_path(path);
    let manifest = if mpath.exists() {
        Some(ExperimentManifest::read(&mpath)?)
    } else {
        None
    };
    let league_ids: Option<BTreeSet<u32>> = manifest
        .as_ref()
        .map(|m| m.league.teams.iter().map(|t| t.team_id).collect());
    let mut games = manifest.as_ref().map(|m| u64::from(m.league.games_per_team));

    let mut reader = open_csv(path, DATASET_HEADER)?;
    let mut rows = Vec::new();
    for (index, (line, rec)) in records(path, &mut reader)?.into_iter().enumerate() {
        let row_no = index + 1;
        let invalid = |field: &'static str, message: String| DataError::Invalid {
            path: path.to_path_buf(),
            line,
            field,
            message: format!("data row {row_no}: {message}"),
        };
        if rec.len() != 6 {
            return Err(invalid("row", format!("expected 6 fields, found {}", rec.len())));
        }
        let r = TeamSeasonLine {
            iteration: field(path, line, &rec, 0, "iteration")?,
            team_id: field(path, line, &rec, 1, "team_id")?,
            wins: field(path, line, &rec, 2, "wins")?,
            losses: field(path, line, &rec, 3, "losses")?,
            rs: field(path, line, &rec, 4, "rs")?,
            ra: field(path, line, &rec, 5, "ra")?,
        };
        let g = *games.get_or_insert(r.games());
        if r.games() != g {
            return Err(invalid(
                "wins",
                format!("wins + losses = {} but every season has {g} games", r.games()),
            ));
        }
        if let Some(ids) = &league_ids {
            if !ids.contains(&r.team_id) {
                return Err(invalid("team_id", format!("team {} is not in the league", r.team_id)));
            }
        }
        if let Some(prev) = rows.last().map(|p: &TeamSeasonLine| (p.iteration, p.team_id)) {
            if (r.iteration, r.team_id) <= prev {
                return Err(invalid(
                    "team_id",
                    format!(
                        "({}, {}) is out of (iteration, team_id) order or repeated",
                        r.iteration, r.team_id
                    ),
                ));
            }
        }
        rows.push(r);
    }
    if rows.is_empty() {
        return Err(DataError::content(path, "no data rows"));
    }

    let data = SimDataset {
        rows,
        master_seed: manifest.as_ref().map_or(0, |m| m.master_seed),
        config_digest: manifest.as_ref().map_or_else(String::new, |m| m.config_digest.clone()),
    };
    if let Some(m) = &manifest {
        let expected = m.iterations as usize * m.league.teams.len();
        if data.rows.len() != expected {
            return Err(DataError::content(
                path,
                format!(
                    "{} data rows, manifest implies {} iterations x {} teams = {expected}",
                    data.rows.len(),
                    m.iterations,
                    m.league.teams.len()
                ),
            ));
        }
    }
    data.check_conservation()
        .map_err(|msg| DataError::content(path, msg))?;
    Ok((data, manifest))
}
