use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::game::Season;
use super::rng::iteration_stream;
use super::{LeagueConfig, Schedule, SimError, TeamSeasonLine};

/// Every team-season line of an experiment plus what produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimDataset {
    pub rows: Vec<TeamSeasonLine>,
    pub master_seed: u64,
    pub config_digest: String,
}

impl SimDataset {
    pub fn iterations(&self) -> usize {
        let mut last = None;
        let mut n = 0;
        for r in &self.rows {
            if last != Some(r.iteration) {
                n += 1;
                last = Some(r.iteration);
            }
        }
        n
    }

    /// Checks per-iteration conservation: wins sum to half the team-games,
    /// runs scored equal runs allowed, and every team has the same game count.
    pub fn check_conservation(&self) -> Result<(), String> {
        let mut by_iter: BTreeMap<u32, Vec<&TeamSeasonLine>> = BTreeMap::new();
        for r in &self.rows {
            by_iter.entry(r.iteration).or_default().push(r);
        }
        for (it, lines) in by_iter {
            let games = lines[0].games();
            if lines.iter().any(|l| l.games() != games) {
                return Err(format!("iteration {it}: teams played different game counts"));
            }
            let wins: u64 = lines.iter().map(|l| l.wins).sum();
            let team_games: u64 = lines.iter().map(|l| l.games()).sum();
            if 2 * wins != team_games {
                return Err(format!("iteration {it}: {wins} wins over {team_games} team-games"));
            }
            let rs: u64 = lines.iter().map(|l| l.rs).sum();
            let ra: u64 = lines.iter().map(|l| l.ra).sum();
            if rs != ra {
                return Err(format!("iteration {it}: runs scored {rs} != runs allowed {ra}"));
            }
        }
        Ok(())
    }
}

/// Lowercase hex SHA-256 of the league configuration and the ordered schedule.
///
/// Floats enter as their IEEE-754 bit patterns, so the digest changes exactly
/// when the simulation inputs do.
pub fn config_digest(cfg: &LeagueConfig, schedule: &Schedule) -> String {
    let mut h = Sha256::new();
    h.update(b"league\n");
    let mut teams: Vec<_> = cfg.teams.iter().collect();
    teams.sort_by_key(|t| t.team_id);
    for t in teams {
        h.update(
            format!(
                "team {} {:016x} {:016x} {}\n",
                t.team_id,
                t.off_rpg.to_bits(),
                t.def_rpg.to_bits(),
                t.name
            )
            .as_bytes(),
        );
    }
    h.update(
        format!(
            "games {}\nmean {:016x}\ndispersion {:016x}\nextra {:016x}\n",
            cfg.games_per_team,
            cfg.league_mean_rpg.to_bits(),
            cfg.dispersion.to_bits(),
            cfg.extra_inning_mean_divisor.to_bits()
        )
        .as_bytes(),
    );
    h.update(format!("schedule {}\n", schedule.len()).as_bytes());
    for g in &schedule.games {
        h.update(g.home.to_le_bytes());
        h.update(g.away.to_le_bytes());
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// Simulates `iterations` seasons. Iteration `j` runs on the stream seeded by
/// `derive_stream_seed(master_seed, j)` and rows come back ordered by
/// (iteration, team_id), so the result does not depend on `workers`.
///
/// `workers == 1` runs on the calling thread; otherwise a dedicated pool of
/// that many threads is used (0 lets rayon pick).
pub fn run_experiment(
    cfg: &LeagueConfig,
    schedule: &Schedule,
    iterations: u32,
    master_seed: u64,
    workers: usize,
) -> Result<SimDataset, SimError> {
    if iterations == 0 {
        return Err(SimError::InvalidConfig("iterations must be at least 1".into()));
    }
    let season = Season::resolve(schedule, cfg)?;
    let one = |j: u32| {
        let mut stream = iteration_stream(master_seed, u64::from(j));
        season
            .play(cfg, j, &mut stream)
            .map_err(|e| SimError::Iteration {
                iteration: j,
                source: Box::new(e),
            })
    };
    let seasons: Vec<Vec<TeamSeasonLine>> = if workers == 1 {
        (0..iterations).map(one).collect::<Result<_, _>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| SimError::InvalidConfig(format!("thread pool: {e}")))?;
        pool.install(|| {
            (0..iterations)
                .into_par_iter()
                .map(one)
                .collect::<Result<_, _>>()
        })?
    };
    let mut rows = Vec::with_capacity(iterations as usize * season.team_count());
    rows.extend(seasons.into_iter().flatten());
    Ok(SimDataset {
        rows,
        master_seed,
        config_digest: config_digest(cfg, schedule),
    })
}
