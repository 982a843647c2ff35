use crate::csf::logistic;
use crate::real::Real;
use crate::sim::{SimDataset, TeamSeasonLine};

use super::criteria::{aic, evidence_ratio, gaussian_loglik};
use super::linearize::{column_names, fixed_effect_teams, linearize_difference, linearize_tullock, regressor};
use super::ols::{ols, Matrix};
use super::{ComparisonReport, EstimateError, FitOptions, FitReport, ModelForm};

/// Fits `opts.form` to every line of `data`.
pub fn fit_model<T: Real>(data: &SimDataset, opts: &FitOptions) -> Result<FitReport<T>, EstimateError> {
    fit_rows(&data.rows, opts)
}

pub fn fit_rows<T: Real>(rows: &[TeamSeasonLine], opts: &FitOptions) -> Result<FitReport<T>, EstimateError> {
    let samples = match opts.form {
        ModelForm::Tullock => linearize_tullock::<T>(rows, opts)?,
        ModelForm::Difference => linearize_difference::<T>(rows, opts)?,
    };
    let fe_teams = if opts.fixed_effects {
        fixed_effect_teams(rows)
    } else {
        Vec::new()
    };
    let names = column_names(opts.form, opts, &fe_teams);
    let n = samples.len();
    let k = names.len() + 1;
    if n < k {
        return Err(EstimateError::InsufficientData { n, k });
    }

    let mut x = Matrix::zeros(n, names.len());
    let mut y = Vec::with_capacity(n);
    for (i, s) in samples.iter().enumerate() {
        for (j, &v) in s.x.iter().enumerate() {
            x.set(i, j, v);
        }
        y.push(s.y);
    }
    let fit = ols(&x, &y)?;

    let n_t = T::of_usize(n);
    let mean = y.iter().fold(T::zero(), |a, &v| a + v) / n_t;
    let tss = y.iter().fold(T::zero(), |a, &v| a + (v - mean) * (v - mean));
    let sum_sq = y.iter().fold(T::zero(), |a, &v| a + v * v);
    let ratio = |den: T| {
        if den > T::zero() {
            T::one() - fit.rss / den
        } else {
            T::nan()
        }
    };
    let share_sq = y
        .iter()
        .zip(&fit.residuals)
        .fold(T::zero(), |a, (&yi, &ri)| {
            let d = logistic(yi) - logistic(yi - ri);
            a + d * d
        });
    let (loglik, aic_value, perfect_fit) = if fit.rss == T::zero() {
        (T::infinity(), T::neg_infinity(), true)
    } else {
        let ll = gaussian_loglik(fit.rss, n)?;
        (ll, aic(ll, k), false)
    };

    Ok(FitReport {
        form: opts.form,
        fixed_effects: opts.fixed_effects,
        intercept: opts.intercept,
        degenerate_policy: opts.degenerate_policy,
        coefficient_names: names,
        coefficients: fit.coefficients,
        standard_errors: fit.standard_errors,
        fixed_effect_teams: fe_teams,
        n,
        k,
        rss: fit.rss,
        tss,
        r2: ratio(tss),
        r2_uncentered: ratio(sum_sq),
        rmse: (fit.rss / n_t).sqrt(),
        rmse_win_pct: (share_sq / n_t).sqrt(),
        loglik,
        aic: aic_value,
        perfect_fit,
    })
}

/// Fits both forms with the same options and rows.
pub fn compare_models<T: Real>(
    data: &SimDataset,
    opts: &FitOptions,
) -> Result<ComparisonReport<T>, EstimateError> {
    compare_rows(&data.rows, opts)
}

pub fn compare_rows<T: Real>(
    rows: &[TeamSeasonLine],
    opts: &FitOptions,
) -> Result<ComparisonReport<T>, EstimateError> {
    let tullock = fit_rows::<T>(rows, &opts.with_form(ModelForm::Tullock))?;
    let difference = fit_rows::<T>(rows, &opts.with_form(ModelForm::Difference))?;
    let evidence = evidence_ratio(tullock.aic, difference.aic);
    let (mantissa, exponent) = evidence.decimal();
    // Ties go to the Tullock form.
    let preferred = if difference.aic < tullock.aic {
        ModelForm::Difference
    } else {
        ModelForm::Tullock
    };
    Ok(ComparisonReport {
        tullock,
        difference,
        evidence_ratio: evidence.value(),
        evidence_ln_ratio: evidence.ln_ratio,
        evidence_mantissa: mantissa,
        evidence_exponent10: exponent,
        preferred,
    })
}

impl<T: Real> FitReport<T> {
    /// Fitted log-odds for a season line, including intercept and team terms.
    pub fn linear_predictor(&self, row: &TeamSeasonLine) -> T {
        let mut z = self.coefficients[0] * regressor::<T>(self.form, row.rs, row.ra);
        let mut col = 1;
        if self.intercept {
            z = z + self.coefficients[col];
            col += 1;
        }
        if let Some(pos) = self.fixed_effect_teams.iter().position(|&t| t == row.team_id) {
            z = z + self.coefficients[col + pos];
        }
        z
    }

    /// Model-predicted win share for a season line.
    pub fn predict_win_pct(&self, row: &TeamSeasonLine) -> T {
        logistic(self.linear_predictor(row))
    }
}
