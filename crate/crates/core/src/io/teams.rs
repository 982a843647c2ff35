use std::collections::HashMap;
use std::path::Path;

use crate::sim::TeamParams;

use super::{field, open_csv, records, write_rows, DataError};

pub const TEAMS_HEADER: &str = "team_id,name,off_rpg,def_rpg";

pub fn load_team_params(path: impl AsRef<Path>) -> Result<Vec<TeamParams>, DataError> {
    let path = path.as_ref();
    let mut reader = open_csv(path, TEAMS_HEADER)?;
    let mut seen: HashMap<u32, u64> = HashMap::new();
    let mut teams = Vec::new();
    for (line, rec) in records(path, &mut reader)? {
        let team = TeamParams {
            team_id: field(path, line, &rec, 0, "team_id")?,
            name: field(path, line, &rec, 1, "name")?,
            off_rpg: field(path, line, &rec, 2, "off_rpg")?,
            def_rpg: field(path, line, &rec, 3, "def_rpg")?,
        };
        for (name, v) in [("off_rpg", team.off_rpg), ("def_rpg", team.def_rpg)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(DataError::Invalid {
                    path: path.to_path_buf(),
                    line,
                    field: name,
                    message: format!("must be a positive run rate, got {v}"),
                });
            }
        }
        if let Some(first) = seen.insert(team.team_id, line) {
            return Err(DataError::Invalid {
                path: path.to_path_buf(),
                line,
                field: "team_id",
                message: format!("duplicate id {} (first on line {first})", team.team_id),
            });
        }
        teams.push(team);
    }
    if teams.is_empty() {
        return Err(DataError::content(path, "no teams"));
    }
    Ok(teams)
}

pub fn write_team_params(path: impl AsRef<Path>, teams: &[TeamParams]) -> Result<(), DataError> {
    let path = path.as_ref();
    write_rows(
        path,
        TEAMS_HEADER,
        teams.iter().map(|t| {
            [
                t.team_id.to_string(),
                t.name.clone(),
                t.off_rpg.to_string(),
                t.def_rpg.to_string(),
            ]
        }),
    )
}
