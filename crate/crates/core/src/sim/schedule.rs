use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::SimError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matchup {
    pub home: u32,
    pub away: u32,
}

/// Ordered list of games. Simulation consumes randomness in this order, so the
/// order is part of what makes a run reproducible.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Schedule {
    pub games: Vec<Matchup>,
}

impl Schedule {
    pub fn len(&self) -> usize {
        self.games.len()
    }

    pub fn is_empty(&self) -> bool {
        self.games.is_empty()
    }

    /// Replaces slot indices `0..T` with the given team ids.
    pub fn relabel(&self, ids: &[u32]) -> Result<Schedule, SimError> {
        let map = |slot: u32| {
            ids.get(slot as usize)
                .copied()
                .ok_or(SimError::UnknownTeam(slot))
        };
        let games = self
            .games
            .iter()
            .map(|g| {
                Ok(Matchup {
                    home: map(g.home)?,
                    away: map(g.away)?,
                })
            })
            .collect::<Result<_, SimError>>()?;
        Ok(Schedule { games })
    }

    /// Games per team, keyed by team id.
    pub fn games_per_team(&self) -> BTreeMap<u32, u32> {
        let mut counts = BTreeMap::new();
        for g in &self.games {
            *counts.entry(g.home).or_insert(0) += 1;
            *counts.entry(g.away).or_insert(0) += 1;
        }
        counts
    }

    pub fn home_games_per_team(&self) -> BTreeMap<u32, u32> {
        let mut counts: BTreeMap<u32, u32> = self
            .games
            .iter()
            .flat_map(|g| [g.home, g.away])
            .map(|id| (id, 0))
            .collect();
        for g in &self.games {
            *counts.get_mut(&g.home).unwrap() += 1;
        }
        counts
    }

    /// Checks that the schedule involves exactly `team_ids`, each playing `games`
    /// times, and that no team plays itself.
    pub fn validate(&self, team_ids: &[u32], games: u32) -> Result<(), SimError> {
        if let Some(g) = self.games.iter().find(|g| g.home == g.away) {
            return Err(SimError::InvalidSchedule(format!(
                "team {} is scheduled against itself",
                g.home
            )));
        }
        let counts = self.games_per_team();
        let known: HashMap<u32, ()> = team_ids.iter().map(|&id| (id, ())).collect();
        if let Some(id) = counts.keys().find(|id| !known.contains_key(id)) {
            return Err(SimError::UnknownTeam(*id));
        }
        for &id in team_ids {
            let played = counts.get(&id).copied().unwrap_or(0);
            if played != games {
                return Err(SimError::InvalidSchedule(format!(
                    "team {id} plays {played} games, expected {games}"
                )));
            }
        }
        Ok(())
    }
}

/// Repeated circle-method round robin over slots `0..teams`.
///
/// Slot 0 stays fixed while the others rotate one place per round. A full pass
/// is `teams − 1` rounds in which every pair meets once; the schedule is
/// `games / (teams − 1)` full passes followed by the first `games % (teams − 1)`
/// rounds of another. Each pair swaps home and away on successive meetings.
/// Within a pass the fixed slot alternates home by round parity and the other
/// pairings take the home side from odd board positions, which keeps every
/// team's home count within one of `games / 2`.
pub fn build_round_robin_schedule(teams: usize, games: u32) -> Result<Schedule, SimError> {
    if teams < 2 || teams % 2 != 0 {
        return Err(SimError::TeamCount(teams));
    }
    if games == 0 {
        return Err(SimError::InvalidConfig("games per team must be at least 1".into()));
    }
    let rounds_per_pass = teams - 1;
    let mut slots: Vec<u32> = (0..teams as u32).collect();
    let mut pass = Vec::with_capacity(rounds_per_pass);
    for round in 0..rounds_per_pass {
        let pairs: Vec<Matchup> = (0..teams / 2)
            .map(|board| {
                let (a, b) = (slots[board], slots[teams - 1 - board]);
                let a_home = if board == 0 { round % 2 == 0 } else { board % 2 == 1 };
                if a_home {
                    Matchup { home: a, away: b }
                } else {
                    Matchup { home: b, away: a }
                }
            })
            .collect();
        pass.push(pairs);
        slots[1..].rotate_right(1);
    }

    let games = games as usize;
    let (full, rest) = (games / rounds_per_pass, games % rounds_per_pass);
    let mut meetings: HashMap<(u32, u32), u32> = HashMap::new();
    let mut out = Vec::with_capacity(teams * games / 2);
    let rounds = (0..full)
        .flat_map(|_| pass.iter())
        .chain(pass.iter().take(rest));
    for round in rounds {
        for m in round {
            let key = (m.home.min(m.away), m.home.max(m.away));
            let seen = meetings.entry(key).or_insert(0);
            out.push(if *seen % 2 == 0 {
                *m
            } else {
                Matchup {
                    home: m.away,
                    away: m.home,
                }
            });
            *seen += 1;
        }
    }
    Ok(Schedule { games: out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_league() {
        let s = build_round_robin_schedule(4, 3).unwrap();
        assert_eq!(s.len(), 6);
        assert!(s.games_per_team().values().all(|&c| c == 3));
        let mut pairs: Vec<_> = s
            .games
            .iter()
            .map(|m| (m.home.min(m.away), m.home.max(m.away)))
            .collect();
        pairs.sort();
        pairs.dedup();
        assert_eq!(pairs.len(), 6, "single full round robin");
    }

    #[test]
    fn full_season_counts() {
        let s = build_round_robin_schedule(30, 162).unwrap();
        assert_eq!(s.len(), 2430);
        let home = s.home_games_per_team();
        assert_eq!(home.len(), 30);
        assert!(home.values().all(|h| (80..=82).contains(h)), "{home:?}");
        s.validate(&(0..30).collect::<Vec<_>>(), 162).unwrap();
    }

    #[test]
    fn rejects_odd_or_tiny_leagues() {
        assert!(matches!(build_round_robin_schedule(5, 10), Err(SimError::TeamCount(5))));
        assert!(matches!(build_round_robin_schedule(0, 10), Err(SimError::TeamCount(0))));
        assert!(build_round_robin_schedule(4, 0).is_err());
    }

    #[test]
    fn meetings_alternate_home() {
        let s = build_round_robin_schedule(4, 6).unwrap();
        let mut seen: HashMap<(u32, u32), Vec<u32>> = HashMap::new();
        for m in &s.games {
            seen.entry((m.home.min(m.away), m.home.max(m.away)))
                .or_default()
                .push(m.home);
        }
        for homes in seen.values() {
            assert_eq!(homes.len(), 2);
            assert_ne!(homes[0], homes[1]);
        }
    }

    #[test]
    fn validate_catches_mismatch() {
        let s = build_round_robin_schedule(4, 3).unwrap();
        assert!(s.validate(&[0, 1, 2, 3], 4).is_err());
        assert!(matches!(s.validate(&[0, 1, 2], 3), Err(SimError::UnknownTeam(3))));
        let r = s.relabel(&[10, 20, 30, 40]).unwrap();
        r.validate(&[10, 20, 30, 40], 3).unwrap();
    }

    proptest! {
        #[test]
        fn schedule_invariants(half in 1usize..=16, games in 1u32..=200) {
            let teams = half * 2;
            let s = build_round_robin_schedule(teams, games).unwrap();
            prop_assert_eq!(s.len(), teams * games as usize / 2);
            let ids: Vec<u32> = (0..teams as u32).collect();
            prop_assert!(s.validate(&ids, games).is_ok());
            let lo = games / 2 - u32::from(games >= 2);
            let hi = games / 2 + 1;
            for (&id, &h) in &s.home_games_per_team() {
                prop_assert!(h >= lo && h <= hi, "team {} home {} of {}", id, h, games);
            }
        }
    }
}
