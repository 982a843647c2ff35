//! Simulate baseball seasons and compare contest success functions.
//!
//! The crate has four layers:
//!
//! * [`csf`]: Tullock (Pythagorean) and difference-form win expectations.
//! * [`sim`]: a deterministic team-level Monte Carlo season engine.
//! * [`estimate`]: log-odds linearization, OLS, R², AIC and model comparison.
//! * [`io`] and [`cli`]: CSV/JSON/SVG formats and the `csfsim` front end.
//!
//! The CSF and estimation code is generic over [`Real`] (`f32` or `f64`); the
//! aliases below fix the scalar to `f64`, which is what the file formats use.

pub mod cli;
pub mod csf;
pub mod estimate;
pub mod io;
pub mod real;
pub mod sim;

pub use csf::{
    difference_win_pct, expected_wins, james_win_pct, logistic, luck, tullock_win_pct, CsfError,
};
pub use estimate::{
    compare_models, fit_model, DegeneratePolicy, EstimateError, FitOptions, ModelForm,
};
pub use real::Real;
pub use sim::{
    build_round_robin_schedule, run_experiment, synthetic_teams, LeagueConfig, Schedule,
    SimDataset, SimError, TeamParams, TeamSeasonLine,
};

pub type RunTotals = csf::RunTotals<f64>;
pub type TullockParams = csf::TullockParams<f64>;
pub type DifferenceParams = csf::DifferenceParams<f64>;
pub type FitReport = estimate::FitReport<f64>;
pub type ComparisonReport = estimate::ComparisonReport<f64>;
