//! Team-level Monte Carlo season simulation.
//!
//! Each game draws regulation runs for both sides from a negative binomial
//! whose mean follows a multiplicative attack × defense / league-mean model.
//! Ties go to extra innings. There is no home advantage.

mod experiment;
mod game;
mod rng;
mod schedule;

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use experiment::{config_digest, run_experiment, SimDataset};
pub use game::{expected_runs, simulate_game, simulate_season, GameResult, MAX_EXTRA_INNINGS};
pub use rng::{derive_stream_seed, iteration_stream, sample_runs, stream_from_seed, Stream};
pub use schedule::{build_round_robin_schedule, Matchup, Schedule};

pub const DEFAULT_LEAGUE_MEAN_RPG: f64 = 4.07;
pub const DEFAULT_DISPERSION: f64 = 4.0;
pub const DEFAULT_GAMES_PER_TEAM: u32 = 162;
pub const DEFAULT_EXTRA_INNING_DIVISOR: f64 = 9.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("league needs an even number of teams, at least 2 (got {0})")]
    TeamCount(usize),
    #[error("invalid league configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),
    #[error("team {0} is not in the league")]
    UnknownTeam(u32),
    #[error("{0}")]
    Domain(String),
    #[error("tie unbroken after {innings} extra innings ({home_runs}-{away_runs})")]
    UnbrokenTie {
        innings: u32,
        home_runs: u32,
        away_runs: u32,
    },
    #[error("iteration {iteration}: {source}")]
    Iteration {
        iteration: u32,
        #[source]
        source: Box<SimError>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TeamParams {
    pub team_id: u32,
    pub name: String,
    /// Mean runs scored per game against a league-average defense.
    pub off_rpg: f64,
    /// Mean runs allowed per game against a league-average offense.
    pub def_rpg: f64,
}

impl TeamParams {
    pub fn validate(&self) -> Result<(), SimError> {
        for (field, v) in [("off_rpg", self.off_rpg), ("def_rpg", self.def_rpg)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(SimError::InvalidConfig(format!(
                    "team {}: {field} must be positive, got {v}",
                    self.team_id
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LeagueConfig {
    pub teams: Vec<TeamParams>,
    pub games_per_team: u32,
    pub league_mean_rpg: f64,
    pub dispersion: f64,
    pub extra_inning_mean_divisor: f64,
}

impl LeagueConfig {
    /// Default run environment and season length around the given teams.
    pub fn new(teams: Vec<TeamParams>) -> Self {
        Self {
            teams,
            games_per_team: DEFAULT_GAMES_PER_TEAM,
            league_mean_rpg: DEFAULT_LEAGUE_MEAN_RPG,
            dispersion: DEFAULT_DISPERSION,
            extra_inning_mean_divisor: DEFAULT_EXTRA_INNING_DIVISOR,
        }
    }

    pub fn validate(&self) -> Result<(), SimError> {
        let t = self.teams.len();
        if t < 2 || t % 2 != 0 {
            return Err(SimError::TeamCount(t));
        }
        if self.games_per_team == 0 {
            return Err(SimError::InvalidConfig("games_per_team must be at least 1".into()));
        }
        for (field, v) in [
            ("league_mean_rpg", self.league_mean_rpg),
            ("dispersion", self.dispersion),
            ("extra_inning_mean_divisor", self.extra_inning_mean_divisor),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(SimError::InvalidConfig(format!("{field} must be positive, got {v}")));
            }
        }
        let mut ids = HashSet::new();
        for team in &self.teams {
            team.validate()?;
            if !ids.insert(team.team_id) {
                return Err(SimError::InvalidConfig(format!(
                    "duplicate team_id {}",
                    team.team_id
                )));
            }
        }
        Ok(())
    }

    /// Team ids in ascending order.
    pub fn team_ids(&self) -> Vec<u32> {
        let mut ids: Vec<u32> = self.teams.iter().map(|t| t.team_id).collect();
        ids.sort_unstable();
        ids
    }

    /// The built-in repeated round robin over this league, slots assigned in
    /// ascending team-id order.
    pub fn round_robin(&self) -> Result<Schedule, SimError> {
        build_round_robin_schedule(self.teams.len(), self.games_per_team)?.relabel(&self.team_ids())
    }
}

/// One team's season: the regression row for every CSF fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TeamSeasonLine {
    pub iteration: u32,
    pub team_id: u32,
    pub wins: u64,
    pub losses: u64,
    pub rs: u64,
    pub ra: u64,
}

impl TeamSeasonLine {
    pub fn games(&self) -> u64 {
        self.wins + self.losses
    }

    pub fn win_pct(&self) -> f64 {
        self.wins as f64 / self.games() as f64
    }
}

/// Thirty synthetic teams. Offensive and defensive run rates are each spread
/// evenly over [3.3, 5.0]; defenses are assigned through the permutation
/// `i ↦ 11·i mod 30` so that team quality varies. These are not real clubs.
pub fn synthetic_teams() -> Vec<TeamParams> {
    const T: u32 = 30;
    let rate = |k: u32| 3.3 + 1.7 * f64::from(k) / f64::from(T - 1);
    (0..T)
        .map(|i| TeamParams {
            team_id: i + 1,
            name: format!("Synthetic {:02}", i + 1),
            off_rpg: rate(i),
            def_rpg: rate((11 * i) % T),
        })
        .collect()
}
