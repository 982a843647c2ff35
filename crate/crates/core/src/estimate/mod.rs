//! Fitting the two CSFs to season lines and choosing between them.
//!
//! Win shares are mapped to log-odds, which makes each CSF linear in its one
//! parameter, and the parameter is estimated by ordinary least squares through
//! the origin. Fit quality is summarized by R², RMSE on the log-odds scale,
//! a Gaussian log-likelihood and AIC; the two forms are compared through the
//! AIC evidence ratio.

mod criteria;
mod fit;
mod linearize;
mod ols;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::real::Real;

pub use criteria::{aic, evidence_ratio, gaussian_loglik, EvidenceRatio};
pub use fit::{compare_models, compare_rows, fit_model, fit_rows};
pub use linearize::{linearize_difference, linearize_tullock, log_odds, RegressionSample};
pub use ols::{ols, Matrix, OlsFit};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EstimateError {
    #[error("no rows to fit")]
    Empty,
    #[error("every row is a winless or winning-every-game season and the drop policy removed them all")]
    AllDegenerate,
    #[error("row {row}: {reason}")]
    Row { row: usize, reason: String },
    #[error("fixed effects need at least two distinct teams")]
    FixedEffectsNeedTeams,
    #[error("design matrix is rank deficient at column {column}")]
    RankDeficient { column: usize },
    #[error("need at least as many observations as parameters (n={n}, k={k})")]
    InsufficientData { n: usize, k: usize },
    #[error("{0}")]
    Shape(String),
    #[error("{0}")]
    Domain(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelForm {
    Tullock,
    Difference,
}

impl ModelForm {
    pub fn name(self) -> &'static str {
        match self {
            ModelForm::Tullock => "tullock",
            ModelForm::Difference => "difference",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            ModelForm::Tullock => "Tullock-Form",
            ModelForm::Difference => "Difference-Form",
        }
    }

    pub fn parameter_name(self) -> &'static str {
        match self {
            ModelForm::Tullock => "alpha",
            ModelForm::Difference => "beta",
        }
    }
}

impl std::str::FromStr for ModelForm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tullock" => Ok(ModelForm::Tullock),
            "difference" => Ok(ModelForm::Difference),
            other => Err(format!("unknown model `{other}` (expected tullock or difference)")),
        }
    }
}

/// What to do with seasons of zero wins or zero losses, whose log-odds are infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DegeneratePolicy {
    Drop,
    /// Count half a win (or half a loss) so the share is `0.5/G` or `1 − 0.5/G`.
    #[default]
    ClampHalfWin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FitOptions {
    pub form: ModelForm,
    pub fixed_effects: bool,
    pub degenerate_policy: DegeneratePolicy,
    pub intercept: bool,
}

impl FitOptions {
    /// Through-origin fit, no team effects, degenerate seasons clamped.
    pub fn new(form: ModelForm) -> Self {
        Self {
            form,
            fixed_effects: false,
            degenerate_policy: DegeneratePolicy::ClampHalfWin,
            intercept: false,
        }
    }

    pub fn with_form(self, form: ModelForm) -> Self {
        Self { form, ..self }
    }
}

/// One fitted CSF.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct FitReport<T> {
    pub form: ModelForm,
    pub fixed_effects: bool,
    pub intercept: bool,
    pub degenerate_policy: DegeneratePolicy,
    /// `alpha` or `beta` first, then `intercept`, then `team_<id>` indicators.
    pub coefficient_names: Vec<String>,
    #[serde(with = "real_serde::vec")]
    pub coefficients: Vec<T>,
    #[serde(with = "real_serde::vec")]
    pub standard_errors: Vec<T>,
    /// Teams carrying an indicator column, in column order.
    pub fixed_effect_teams: Vec<u32>,
    pub n: usize,
    /// Coefficients plus one for the error variance.
    pub k: usize,
    #[serde(with = "real_serde")]
    pub rss: T,
    #[serde(with = "real_serde")]
    pub tss: T,
    /// `1 − rss/tss` with `tss` taken about the mean of the log-odds.
    #[serde(with = "real_serde")]
    pub r2: T,
    /// `1 − rss/Σy²`; larger than `r2` for through-origin fits.
    #[serde(with = "real_serde")]
    pub r2_uncentered: T,
    /// `√(rss/n)` on the log-odds scale.
    #[serde(with = "real_serde")]
    pub rmse: T,
    /// RMSE between fitted and observed win shares.
    #[serde(with = "real_serde")]
    pub rmse_win_pct: T,
    #[serde(with = "real_serde")]
    pub loglik: T,
    #[serde(with = "real_serde")]
    pub aic: T,
    /// Zero residuals: `loglik` is `+∞` and `aic` is `−∞`.
    pub perfect_fit: bool,
}

impl<T: Real> FitReport<T> {
    /// The CSF parameter (`alpha` or `beta`).
    pub fn parameter(&self) -> T {
        self.coefficients[0]
    }

    pub fn parameter_se(&self) -> T {
        self.standard_errors[0]
    }
}

/// Both fits on the same rows, and which one loses less information.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct ComparisonReport<T> {
    pub tullock: FitReport<T>,
    pub difference: FitReport<T>,
    /// Likelihood that the Tullock form, rather than the difference form,
    /// minimizes information loss. Underflows to 0 for large AIC gaps.
    #[serde(with = "real_serde")]
    pub evidence_ratio: f64,
    /// `(aic_difference − aic_tullock) / 2`, the natural log of the ratio.
    #[serde(with = "real_serde")]
    pub evidence_ln_ratio: f64,
    #[serde(with = "real_serde")]
    pub evidence_mantissa: f64,
    pub evidence_exponent10: i32,
    pub preferred: ModelForm,
}

impl<T: Real> ComparisonReport<T> {
    pub fn evidence(&self) -> EvidenceRatio {
        EvidenceRatio {
            ln_ratio: self.evidence_ln_ratio,
        }
    }

    pub fn fit(&self, form: ModelForm) -> &FitReport<T> {
        match form {
            ModelForm::Tullock => &self.tullock,
            ModelForm::Difference => &self.difference,
        }
    }
}

/// Writes finite scalars as JSON numbers and non-finite ones as the strings
/// `"inf"`, `"-inf"` and `"nan"`, which plain JSON cannot carry.
pub(crate) mod real_serde {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::real::Real;

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Text(String),
    }

    fn decode<E: serde::de::Error>(r: Repr) -> Result<f64, E> {
        match r {
            Repr::Num(x) => Ok(x),
            Repr::Text(t) => match t.as_str() {
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                "nan" => Ok(f64::NAN),
                other => Err(E::custom(format!("expected a number, got `{other}`"))),
            },
        }
    }

    fn encode<S: Serializer>(x: f64, s: S) -> Result<S::Ok, S::Error> {
        if x.is_finite() {
            s.serialize_f64(x)
        } else if x.is_nan() {
            s.serialize_str("nan")
        } else if x > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }

    pub fn serialize<T: Real, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        encode(v.to_f64_lossy(), s)
    }

    pub fn deserialize<'de, T: Real, D: Deserializer<'de>>(d: D) -> Result<T, D::Error> {
        Ok(T::of(decode(Repr::deserialize(d)?)?))
    }

    pub mod vec {
        use serde::ser::SerializeSeq;
        use serde::{Deserialize, Deserializer, Serializer};

        use super::{decode, Repr};
        use crate::real::Real;

        struct Item(f64);

        impl serde::Serialize for Item {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                super::encode(self.0, s)
            }
        }

        pub fn serialize<T: Real, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for x in v {
                seq.serialize_element(&Item(x.to_f64_lossy()))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, T: Real, D: Deserializer<'de>>(d: D) -> Result<Vec<T>, D::Error> {
            Vec::<Repr>::deserialize(d)?
                .into_iter()
                .map(|r| decode(r).map(T::of))
                .collect()
        }
    }
}
