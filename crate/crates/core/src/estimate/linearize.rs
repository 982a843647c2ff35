//! Both CSFs become linear in their parameter on the log-odds scale:
//!
//! * Tullock: `ln(w / (1 − w)) = α · ln(rs / ra)`
//! * Difference: `ln(w / (1 − w)) = β · (rs − ra)`

use std::collections::BTreeSet;

use crate::real::Real;
use crate::sim::TeamSeasonLine;

use super::{DegeneratePolicy, EstimateError, FitOptions, ModelForm};

/// One transformed observation.
#[derive(Debug, Clone, PartialEq)]
pub struct RegressionSample<T> {
    pub x: Vec<T>,
    pub y: T,
    pub iteration: u32,
    pub team_id: u32,
}

/// `ln(w / (1 − w))` for `0 < w < 1`.
pub fn log_odds<T: Real>(w: T) -> Result<T, EstimateError> {
    if !(w > T::zero() && w < T::one()) {
        return Err(EstimateError::Domain(format!(
            "log-odds needs a share strictly inside (0, 1), got {w}"
        )));
    }
    Ok((w / (T::one() - w)).ln())
}

/// The CSF regressor for one row, before any extra columns.
pub(crate) fn regressor<T: Real>(form: ModelForm, rs: u64, ra: u64) -> T {
    let (rs, ra) = (T::of(rs as f64), T::of(ra as f64));
    match form {
        ModelForm::Tullock => rs.ln() - ra.ln(),
        ModelForm::Difference => rs - ra,
    }
}

/// Team ids that get an indicator column: every team present except the
/// lowest id, which is the baseline.
pub(crate) fn fixed_effect_teams(rows: &[TeamSeasonLine]) -> Vec<u32> {
    let teams: BTreeSet<u32> = rows.iter().map(|r| r.team_id).collect();
    teams.into_iter().skip(1).collect()
}

pub(crate) fn column_names(form: ModelForm, opts: &FitOptions, fe_teams: &[u32]) -> Vec<String> {
    let mut names = vec![form.parameter_name().to_string()];
    if opts.intercept {
        names.push("intercept".into());
    }
    names.extend(fe_teams.iter().map(|t| format!("team_{t}")));
    names
}

fn linearize<T: Real>(
    form: ModelForm,
    rows: &[TeamSeasonLine],
    opts: &FitOptions,
) -> Result<Vec<RegressionSample<T>>, EstimateError> {
    if rows.is_empty() {
        return Err(EstimateError::Empty);
    }
    let fe_teams = if opts.fixed_effects {
        let teams = fixed_effect_teams(rows);
        if teams.is_empty() {
            return Err(EstimateError::FixedEffectsNeedTeams);
        }
        teams
    } else {
        Vec::new()
    };
    let width = 1 + usize::from(opts.intercept) + fe_teams.len();

    let mut out = Vec::with_capacity(rows.len());
    for (index, row) in rows.iter().enumerate() {
        let games = row.games();
        if games == 0 {
            return Err(EstimateError::Row {
                row: index,
                reason: "no games played".into(),
            });
        }
        if form == ModelForm::Tullock && (row.rs == 0 || row.ra == 0) {
            return Err(EstimateError::Row {
                row: index,
                reason: format!("Tullock form needs rs > 0 and ra > 0 (rs={}, ra={})", row.rs, row.ra),
            });
        }
        let wins = if row.wins == 0 || row.wins == games {
            match opts.degenerate_policy {
                DegeneratePolicy::Drop => continue,
                DegeneratePolicy::ClampHalfWin => {
                    let half = if row.wins == 0 { 0.5 } else { -0.5 };
                    row.wins as f64 + half
                }
            }
        } else {
            row.wins as f64
        };
        let y = log_odds(T::of(wins) / T::of(games as f64))?;

        let mut x = Vec::with_capacity(width);
        x.push(regressor(form, row.rs, row.ra));
        if opts.intercept {
            x.push(T::one());
        }
        x.extend(fe_teams.iter().map(|&t| if t == row.team_id { T::one() } else { T::zero() }));
        out.push(RegressionSample {
            x,
            y,
            iteration: row.iteration,
            team_id: row.team_id,
        });
    }
    if out.is_empty() {
        return Err(EstimateError::AllDegenerate);
    }
    Ok(out)
}

/// `x = ln(rs/ra)`, `y = log-odds of the win share`, plus optional columns.
pub fn linearize_tullock<T: Real>(
    rows: &[TeamSeasonLine],
    opts: &FitOptions,
) -> Result<Vec<RegressionSample<T>>, EstimateError> {
    linearize(ModelForm::Tullock, rows, opts)
}

/// `x = rs − ra`, `y = log-odds of the win share`, plus optional columns.
pub fn linearize_difference<T: Real>(
    rows: &[TeamSeasonLine],
    opts: &FitOptions,
) -> Result<Vec<RegressionSample<T>>, EstimateError> {
    linearize(ModelForm::Difference, rows, opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(team_id: u32, wins: u64, losses: u64, rs: u64, ra: u64) -> TeamSeasonLine {
        TeamSeasonLine {
            iteration: 0,
            team_id,
            wins,
            losses,
            rs,
            ra,
        }
    }

    fn opts(form: ModelForm) -> FitOptions {
        FitOptions::new(form)
    }

    #[test]
    fn log_odds_examples() {
        assert_eq!(log_odds(0.5).unwrap(), 0.0);
        // ln(16/9) and ln 9 at 30 digits.
        assert!((log_odds(0.64f64).unwrap() - 0.575_364_144_903_562).abs() < 1e-6);
        assert!((log_odds(0.9f64).unwrap() - 2.197_224_577_336_219).abs() < 1e-6);
        assert!(log_odds(0.0).is_err());
        assert!(log_odds(1.0).is_err());
    }

    #[test]
    fn even_season_maps_to_origin() {
        let rows = [line(1, 81, 81, 700, 700)];
        for form in [ModelForm::Tullock, ModelForm::Difference] {
            let s = linearize::<f64>(form, &rows, &opts(form)).unwrap();
            assert_eq!((s[0].x[0], s[0].y), (0.0, 0.0));
        }
    }

    #[test]
    fn tullock_regressor() {
        let rows = [line(1, 100, 62, 800, 600)];
        let s = linearize_tullock::<f64>(&rows, &opts(ModelForm::Tullock)).unwrap();
        // ln(4/3) at 30 digits.
        assert!((s[0].x[0] - 0.287_682_072_451_781).abs() < 1e-6);
    }

    #[test]
    fn difference_regressor_is_shift_invariant() {
        let a = linearize_difference::<f64>(&[line(1, 90, 72, 750, 650)], &opts(ModelForm::Difference)).unwrap();
        let b = linearize_difference::<f64>(&[line(1, 90, 72, 800, 700)], &opts(ModelForm::Difference)).unwrap();
        assert_eq!(a[0].x, b[0].x);
        assert_eq!(a[0].x[0], 100.0);
    }

    #[test]
    fn degenerate_policies() {
        let rows = [line(1, 0, 10, 20, 60), line(2, 10, 0, 60, 20), line(3, 6, 4, 40, 40)];
        let clamp = linearize_tullock::<f64>(&rows, &opts(ModelForm::Tullock)).unwrap();
        assert_eq!(clamp.len(), 3);
        assert!((clamp[0].y - (0.5f64 / 9.5).ln()).abs() < 1e-15);
        assert!((clamp[1].y - (9.5f64 / 0.5).ln()).abs() < 1e-15);
        let drop = FitOptions {
            degenerate_policy: DegeneratePolicy::Drop,
            ..opts(ModelForm::Tullock)
        };
        let kept = linearize_tullock::<f64>(&rows, &drop).unwrap();
        assert_eq!(kept.len(), 1);
        assert_eq!(kept[0].team_id, 3);
        assert!(matches!(
            linearize_tullock::<f64>(&rows[..2], &drop),
            Err(EstimateError::AllDegenerate)
        ));
    }

    #[test]
    fn tullock_rejects_zero_runs() {
        let rows = [line(1, 5, 5, 40, 40), line(2, 5, 5, 0, 40)];
        match linearize_tullock::<f64>(&rows, &opts(ModelForm::Tullock)) {
            Err(EstimateError::Row { row, .. }) => assert_eq!(row, 1),
            other => panic!("{other:?}"),
        }
        assert!(linearize_difference::<f64>(&rows, &opts(ModelForm::Difference)).is_ok());
    }

    #[test]
    fn extra_columns() {
        let rows = [line(7, 5, 5, 40, 41), line(3, 6, 4, 42, 40), line(9, 4, 6, 39, 40)];
        let o = FitOptions {
            fixed_effects: true,
            intercept: true,
            ..opts(ModelForm::Difference)
        };
        let s = linearize_difference::<f64>(&rows, &o).unwrap();
        // columns: beta, intercept, team_7, team_9 (team 3 is the baseline)
        assert_eq!(s[0].x, vec![-1.0, 1.0, 1.0, 0.0]);
        assert_eq!(s[1].x, vec![2.0, 1.0, 0.0, 0.0]);
        assert_eq!(s[2].x, vec![-1.0, 1.0, 0.0, 1.0]);
        assert_eq!(
            column_names(ModelForm::Difference, &o, &fixed_effect_teams(&rows)),
            ["beta", "intercept", "team_7", "team_9"]
        );
        let single = [line(7, 5, 5, 40, 41)];
        assert!(matches!(
            linearize_difference::<f64>(&single, &o),
            Err(EstimateError::FixedEffectsNeedTeams)
        ));
    }

    #[test]
    fn empty_input() {
        assert!(matches!(
            linearize_tullock::<f64>(&[], &opts(ModelForm::Tullock)),
            Err(EstimateError::Empty)
        ));
    }
}
