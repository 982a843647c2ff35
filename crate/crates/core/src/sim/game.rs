use std::collections::HashMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::rng::{poisson, sample_runs};
use super::{LeagueConfig, Schedule, SimError, TeamParams};
use super::TeamSeasonLine;

pub const MAX_EXTRA_INNINGS: u32 = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameResult {
    pub home_runs: u32,
    pub away_runs: u32,
}

impl GameResult {
    pub fn home_won(&self) -> bool {
        self.home_runs > self.away_runs
    }
}

/// Mean runs per game for an offense facing a defense: `off · def / league_mean`.
pub fn expected_runs(off: f64, def: f64, league_mean: f64) -> Result<f64, SimError> {
    for (name, v) in [("off", off), ("def", def), ("league_mean", league_mean)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(SimError::Domain(format!("{name} must be positive, got {v}")));
        }
    }
    Ok(off * def / league_mean)
}

pub(crate) fn play<R: Rng + ?Sized>(
    mu_home: f64,
    mu_away: f64,
    cfg: &LeagueConfig,
    stream: &mut R,
) -> Result<GameResult, SimError> {
    let mut home = sample_runs(mu_home, cfg.dispersion, stream);
    let mut away = sample_runs(mu_away, cfg.dispersion, stream);
    let (inning_home, inning_away) = (
        mu_home / cfg.extra_inning_mean_divisor,
        mu_away / cfg.extra_inning_mean_divisor,
    );
    let mut innings = 0;
    while home == away {
        if innings == MAX_EXTRA_INNINGS {
            return Err(SimError::UnbrokenTie {
                innings,
                home_runs: home,
                away_runs: away,
            });
        }
        home += poisson(inning_home, stream);
        away += poisson(inning_away, stream);
        innings += 1;
    }
    Ok(GameResult {
        home_runs: home,
        away_runs: away,
    })
}

pub fn simulate_game<R: Rng + ?Sized>(
    home: &TeamParams,
    away: &TeamParams,
    cfg: &LeagueConfig,
    stream: &mut R,
) -> Result<GameResult, SimError> {
    for team in [home, away] {
        if !cfg.teams.iter().any(|t| t.team_id == team.team_id) {
            return Err(SimError::UnknownTeam(team.team_id));
        }
    }
    let mu_home = expected_runs(home.off_rpg, away.def_rpg, cfg.league_mean_rpg)?;
    let mu_away = expected_runs(away.off_rpg, home.def_rpg, cfg.league_mean_rpg)?;
    play(mu_home, mu_away, cfg, stream)
}

/// A schedule resolved against a league: team positions in ascending-id order
/// and both run means precomputed for every game.
#[derive(Debug, Clone)]
pub(crate) struct Season {
    ids: Vec<u32>,
    games: Vec<(usize, usize, f64, f64)>,
}

impl Season {
    pub(crate) fn resolve(schedule: &Schedule, cfg: &LeagueConfig) -> Result<Self, SimError> {
        cfg.validate()?;
        let ids = cfg.team_ids();
        schedule.validate(&ids, cfg.games_per_team)?;
        let pos: HashMap<u32, usize> = ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();
        let by_pos: Vec<&TeamParams> = ids
            .iter()
            .map(|id| cfg.teams.iter().find(|t| t.team_id == *id).unwrap())
            .collect();
        let games = schedule
            .games
            .iter()
            .map(|m| {
                let (h, a) = (pos[&m.home], pos[&m.away]);
                let mu_h = expected_runs(by_pos[h].off_rpg, by_pos[a].def_rpg, cfg.league_mean_rpg)?;
                let mu_a = expected_runs(by_pos[a].off_rpg, by_pos[h].def_rpg, cfg.league_mean_rpg)?;
                Ok((h, a, mu_h, mu_a))
            })
            .collect::<Result<_, SimError>>()?;
        Ok(Self { ids, games })
    }

    pub(crate) fn team_count(&self) -> usize {
        self.ids.len()
    }

    pub(crate) fn play<R: Rng + ?Sized>(
        &self,
        cfg: &LeagueConfig,
        iteration: u32,
        stream: &mut R,
    ) -> Result<Vec<TeamSeasonLine>, SimError> {
        let mut lines: Vec<TeamSeasonLine> = self
            .ids
            .iter()
            .map(|&team_id| TeamSeasonLine {
                iteration,
                team_id,
                wins: 0,
                losses: 0,
                rs: 0,
                ra: 0,
            })
            .collect();
        for &(h, a, mu_h, mu_a) in &self.games {
            let g = play(mu_h, mu_a, cfg, stream)?;
            let (winner, loser) = if g.home_won() { (h, a) } else { (a, h) };
            lines[winner].wins += 1;
            lines[loser].losses += 1;
            let (hr, ar) = (u64::from(g.home_runs), u64::from(g.away_runs));
            lines[h].rs += hr;
            lines[h].ra += ar;
            lines[a].rs += ar;
            lines[a].ra += hr;
        }
        Ok(lines)
    }
}

/// Plays every game of `schedule` once on `stream`, returning one line per
/// team in ascending team-id order.
pub fn simulate_season<R: Rng + ?Sized>(
    schedule: &Schedule,
    cfg: &LeagueConfig,
    iteration: u32,
    stream: &mut R,
) -> Result<Vec<TeamSeasonLine>, SimError> {
    Season::resolve(schedule, cfg)?.play(cfg, iteration, stream)
}
