//! The `csfsim` command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 data or validation error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::csf::{difference_win_pct, tullock_win_pct, DifferenceParams, RunTotals, TullockParams};
use crate::estimate::{compare_models, fit_model, DegeneratePolicy, FitOptions, ModelForm};
use crate::io::{
    expand_schedule, load_schedule, load_team_params, read_dataset, render_comparison,
    render_fit_json, render_scatter_svg, write_dataset, ExperimentManifest, ReportFormat,
    ScheduleSource,
};
use crate::sim::{run_experiment, LeagueConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "csfsim",
    version,
    about = "Simulate baseball seasons and compare Tullock and difference-form contest success functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Simulate seasons and write a dataset CSV plus its manifest.
    Simulate(SimulateArgs),
    /// Fit one CSF to a dataset and write the fit as JSON.
    Fit(FitArgs),
    /// Fit both CSFs and report which one the data prefer.
    Compare(CompareArgs),
    /// Win probability for one pair of run totals.
    Predict(PredictArgs),
}

#[derive(Debug, Args)]
struct SimulateArgs {
    /// Team parameter CSV (team_id,name,off_rpg,def_rpg).
    #[arg(long)]
    teams: PathBuf,
    #[arg(long)]
    iterations: u32,
    #[arg(long)]
    seed: u64,
    /// Dataset CSV to write; the manifest goes next to it.
    #[arg(long)]
    out: PathBuf,
    /// Matchup CSV (home_id,away_id,count) replacing the built-in round robin.
    #[arg(long)]
    schedule: Option<PathBuf>,
    /// Negative-binomial shape of per-game runs.
    #[arg(long)]
    dispersion: Option<f64>,
    /// League-average runs per team per game.
    #[arg(long = "league-mean")]
    league_mean: Option<f64>,
    /// Games per team (built-in schedule only).
    #[arg(long)]
    games: Option<u32>,
    /// Worker threads; 0 picks one per core. Output does not depend on it.
    #[arg(long, default_value_t = 0)]
    workers: usize,
}

#[derive(Debug, Args)]
struct ModelFlags {
    /// Add one indicator column per team except the lowest id.
    #[arg(long = "fixed-effects")]
    fixed_effects: bool,
    #[arg(long)]
    intercept: bool,
    /// Drop winless and unbeaten seasons instead of counting half a game.
    #[arg(long = "drop-degenerate")]
    drop_degenerate: bool,
}

impl ModelFlags {
    fn options(&self, form: ModelForm) -> FitOptions {
        FitOptions {
            fixed_effects: self.fixed_effects,
            intercept: self.intercept,
            degenerate_policy: if self.drop_degenerate {
                DegeneratePolicy::Drop
            } else {
                DegeneratePolicy::ClampHalfWin
            },
            ..FitOptions::new(form)
        }
    }
}

#[derive(Debug, Args)]
struct FitArgs {
    #[arg(long)]
    data: PathBuf,
    #[arg(long)]
    model: ModelForm,
    #[command(flatten)]
    flags: ModelFlags,
    /// Fit report JSON to write.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct CompareArgs {
    #[arg(long)]
    data: PathBuf,
    #[arg(long, default_value = "text")]
    format: ReportFormat,
    /// Scatter plot of the preferred model's predictions.
    #[arg(long)]
    plot: Option<PathBuf>,
    #[command(flatten)]
    flags: ModelFlags,
}

#[derive(Debug, Args)]
struct PredictArgs {
    #[arg(long)]
    model: ModelForm,
    /// alpha for tullock, beta for difference.
    #[arg(long)]
    param: f64,
    #[arg(long)]
    rs: f64,
    #[arg(long)]
    ra: f64,
}

/// Runs the command line with `argv[0]` as the program name.
pub fn cli_main<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    let result = match cli.command {
        Command::Simulate(a) => simulate(a, out),
        Command::Fit(a) => fit(a, out),
        Command::Compare(a) => compare(a, out),
        Command::Predict(a) => predict(a, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_DATA
        }
    }
}

type Outcome = Result<(), String>;

fn emit(out: &mut dyn Write, text: &str) -> Outcome {
    out.write_all(text.as_bytes())
        .map_err(|e| format!("writing output: {e}"))
}

fn simulate(a: SimulateArgs, out: &mut dyn Write) -> Outcome {
    let teams = load_team_params(&a.teams).map_err(|e| e.to_string())?;
    let mut league = LeagueConfig::new(teams);
    if let Some(r) = a.dispersion {
        league.dispersion = r;
    }
    if let Some(l) = a.league_mean {
        league.league_mean_rpg = l;
    }
    let source = match &a.schedule {
        None => {
            if let Some(g) = a.games {
                league.games_per_team = g;
            }
            ScheduleSource::Builtin
        }
        Some(path) => {
            let entries = load_schedule(path).map_err(|e| e.to_string())?;
            let games = schedule_length(&expand_schedule(&entries), path)?;
            if let Some(g) = a.games.filter(|&g| g != games) {
                return Err(format!(
                    "--games {g} disagrees with {}, which gives every team {games} games",
                    path.display()
                ));
            }
            league.games_per_team = games;
            ScheduleSource::File {
                path: path.display().to_string(),
                entries,
            }
        }
    };
    league.validate().map_err(|e| format!("{}: {e}", a.teams.display()))?;
    let schedule = source.schedule(&league).map_err(|e| e.to_string())?;
    schedule
        .validate(&league.team_ids(), league.games_per_team)
        .map_err(|e| e.to_string())?;

    let manifest = ExperimentManifest::new(league, source, a.iterations, a.seed)
        .map_err(|e| e.to_string())?;
    let data = run_experiment(&manifest.league, &schedule, a.iterations, a.seed, a.workers)
        .map_err(|e| e.to_string())?;
    write_dataset(&a.out, &data, &manifest).map_err(|e| e.to_string())?;
    emit(
        out,
        &format!(
            "wrote {} team-seasons ({} iterations x {} teams) to {}\nconfig digest {}\n",
            data.rows.len(),
            a.iterations,
            manifest.league.teams.len(),
            a.out.display(),
            manifest.config_digest
        ),
    )
}

/// Games per team of a file schedule; every team must play the same number.
fn schedule_length(schedule: &crate::sim::Schedule, path: &Path) -> Result<u32, String> {
    let counts = schedule.games_per_team();
    let mut values = counts.values().copied();
    let first = values.next().unwrap_or(0);
    if values.any(|g| g != first) {
        return Err(format!(
            "{}: teams play unequal numbers of games ({:?})",
            path.display(),
            counts
        ));
    }
    Ok(first)
}

fn fit(a: FitArgs, out: &mut dyn Write) -> Outcome {
    let data = read_dataset(&a.data).map_err(|e| e.to_string())?;
    let report = fit_model::<f64>(&data, &a.flags.options(a.model))
        .map_err(|e| format!("{}: {e}", a.data.display()))?;
    std::fs::write(&a.out, render_fit_json(&report))
        .map_err(|e| format!("{}: {e}", a.out.display()))?;
    emit(
        out,
        &format!(
            "{}: {} = {} (se {}), R2 = {}, AIC = {}, n = {}\n",
            report.form.title(),
            report.form.parameter_name(),
            report.parameter(),
            report.parameter_se(),
            report.r2,
            report.aic,
            report.n
        ),
    )
}

fn compare(a: CompareArgs, out: &mut dyn Write) -> Outcome {
    let data = read_dataset(&a.data).map_err(|e| e.to_string())?;
    let report = compare_models::<f64>(&data, &a.flags.options(ModelForm::Tullock))
        .map_err(|e| format!("{}: {e}", a.data.display()))?;
    if let Some(plot) = &a.plot {
        render_scatter_svg(&data, report.fit(report.preferred), plot).map_err(|e| e.to_string())?;
    }
    emit(out, &render_comparison(&report, a.format))
}

fn predict(a: PredictArgs, out: &mut dyn Write) -> Outcome {
    let rt = RunTotals::new(a.rs, a.ra).map_err(|e| e.to_string())?;
    let p = match a.model {
        ModelForm::Tullock => {
            tullock_win_pct(rt, TullockParams::new(a.param).map_err(|e| e.to_string())?)
        }
        ModelForm::Difference => {
            difference_win_pct(rt, DifferenceParams::new(a.param).map_err(|e| e.to_string())?)
        }
    }
    .map_err(|e| e.to_string())?;
    emit(out, &format!("{p:.6}\n"))
}
