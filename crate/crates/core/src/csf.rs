//! Contest success functions over season run totals.
//!
//! Two families map a team's season runs scored (`rs`) and runs allowed
//! (`ra`) to an expected win share:
//!
//! * Tullock (ratio) form, `rs^α / (rs^α + ra^α)`. With `α = 2` this is Bill
//!   James's Pythagorean expectation.
//! * Difference (logit) form, `1 / (1 + exp(β·(ra − rs)))`.
//!
//! Both are evaluated as a logistic of their log-odds, which is exact and
//! cannot overflow. Results are strictly inside `(0, 1)`: at extreme inputs
//! they approach the bounds but stop at the nearest representable value.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::real::Real;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CsfError {
    #[error("{name} must be positive and finite, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("win probability must lie strictly in (0, 1), got {0}")]
    Probability(f64),
    #[error("games must be at least 1")]
    NoGames,
}

fn positive<T: Real>(name: &'static str, value: T) -> Result<T, CsfError> {
    if value > T::zero() && value.is_finite() {
        Ok(value)
    } else {
        Err(CsfError::NonPositive {
            name,
            value: value.to_f64_lossy(),
        })
    }
}

/// Season run totals for one team.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RunTotals<T> {
    pub rs: T,
    pub ra: T,
}

impl<T: Real> RunTotals<T> {
    pub fn new(rs: T, ra: T) -> Result<Self, CsfError> {
        Ok(Self {
            rs: positive("rs", rs)?,
            ra: positive("ra", ra)?,
        })
    }

    fn validate(&self) -> Result<(), CsfError> {
        positive("rs", self.rs)?;
        positive("ra", self.ra)?;
        Ok(())
    }

    /// The same totals seen from the opponent's side.
    pub fn swapped(self) -> Self {
        Self {
            rs: self.ra,
            ra: self.rs,
        }
    }
}

/// Noise exponent of the Tullock form. Larger means a more deterministic contest.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TullockParams<T> {
    pub alpha: T,
}

impl<T: Real> TullockParams<T> {
    pub fn new(alpha: T) -> Result<Self, CsfError> {
        Ok(Self {
            alpha: positive("alpha", alpha)?,
        })
    }

    /// James's original exponent.
    pub fn pythagorean() -> Self {
        Self { alpha: T::of(2.0) }
    }
}

/// Log-odds sensitivity per run of season run differential.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DifferenceParams<T> {
    pub beta: T,
}

impl<T: Real> DifferenceParams<T> {
    pub fn new(beta: T) -> Result<Self, CsfError> {
        Ok(Self {
            beta: positive("beta", beta)?,
        })
    }
}

/// Standard logistic `1 / (1 + e^{-z})`, kept strictly inside `(0, 1)`.
pub fn logistic<T: Real>(z: T) -> T {
    let p = if z >= T::zero() {
        T::one() / (T::one() + (-z).exp())
    } else {
        let e = z.exp();
        e / (T::one() + e)
    };
    // Largest value below one; the lower tail stays positive down to z ≈ -745.
    let below_one = T::one() - T::epsilon() / T::of(2.0);
    p.min(below_one).max(T::min_positive_value())
}

/// Tullock-form expected win percentage `rs^α / (rs^α + ra^α)`.
pub fn tullock_win_pct<T: Real>(rt: RunTotals<T>, p: TullockParams<T>) -> Result<T, CsfError> {
    rt.validate()?;
    positive("alpha", p.alpha)?;
    Ok(logistic(p.alpha * (rt.rs.ln() - rt.ra.ln())))
}

/// Pythagorean expectation: the Tullock form with the exponent fixed at 2.
pub fn james_win_pct<T: Real>(rt: RunTotals<T>) -> Result<T, CsfError> {
    tullock_win_pct(rt, TullockParams::pythagorean())
}

/// Difference-form expected win percentage `1 / (1 + exp(β·(ra − rs)))`.
pub fn difference_win_pct<T: Real>(
    rt: RunTotals<T>,
    p: DifferenceParams<T>,
) -> Result<T, CsfError> {
    rt.validate()?;
    positive("beta", p.beta)?;
    Ok(logistic(p.beta * (rt.rs - rt.ra)))
}

pub fn expected_wins<T: Real>(p: T, games: u32) -> Result<T, CsfError> {
    if !(p > T::zero() && p < T::one()) {
        return Err(CsfError::Probability(p.to_f64_lossy()));
    }
    if games == 0 {
        return Err(CsfError::NoGames);
    }
    Ok(p * T::of(f64::from(games)))
}

/// Wins above (positive) or below (negative) expectation.
pub fn luck<T: Real>(actual_wins: T, expected_wins: T) -> T {
    actual_wins - expected_wins
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rt(rs: f64, ra: f64) -> RunTotals<f64> {
        RunTotals::new(rs, ra).unwrap()
    }

    #[test]
    fn tullock_examples() {
        let two = TullockParams::new(2.0).unwrap();
        assert_eq!(tullock_win_pct(rt(650.0, 650.0), two).unwrap(), 0.5);
        // 800^2 / (800^2 + 600^2) = 640000 / 1000000 in exact integer arithmetic.
        let (num, den) = (800u64 * 800, 800u64 * 800 + 600 * 600);
        assert_eq!((num, den), (640_000, 1_000_000));
        let got = tullock_win_pct(rt(800.0, 600.0), two).unwrap();
        assert!((got - num as f64 / den as f64).abs() < 1e-15);
    }

    #[test]
    fn tullock_fitted_exponent() {
        // (4/3)^1.72 / (1 + (4/3)^1.72), evaluated at 30 digits.
        let got = tullock_win_pct(rt(800.0, 600.0), TullockParams::new(1.72).unwrap()).unwrap();
        assert!((got - 0.621_239_633_643_677).abs() < 1e-6, "{got}");
    }

    #[test]
    fn james_is_tullock_two() {
        for (rs, ra) in [(650.0, 650.0), (800.0, 600.0), (512.3, 733.9), (1.0, 1e6)] {
            let r = rt(rs, ra);
            assert_eq!(
                james_win_pct(r).unwrap(),
                tullock_win_pct(r, TullockParams::new(2.0).unwrap()).unwrap()
            );
        }
        assert!((james_win_pct(rt(800.0, 600.0)).unwrap() - 0.64).abs() < 1e-15);
    }

    #[test]
    fn difference_examples() {
        let b = DifferenceParams::new(0.003).unwrap();
        assert_eq!(difference_win_pct(rt(700.0, 700.0), b).unwrap(), 0.5);
        // 1 / (1 + e^{-0.3}) at 30 digits.
        let got = difference_win_pct(rt(750.0, 650.0), b).unwrap();
        assert!((got - 0.574_442_516_811_659).abs() < 1e-6);
        let lo = difference_win_pct(rt(700.0, 800.0), b).unwrap();
        let hi = difference_win_pct(rt(800.0, 700.0), b).unwrap();
        assert!((lo - (1.0 - hi)).abs() < 1e-15);
    }

    #[test]
    fn saturation_never_hits_bounds() {
        let b = DifferenceParams::new(1.0).unwrap();
        let hi = difference_win_pct(rt(701.0, 1.0), b).unwrap();
        let lo = difference_win_pct(rt(1.0, 701.0), b).unwrap();
        assert!(hi < 1.0 && hi > 0.999);
        assert!(lo > 0.0 && lo < 1e-300);
        let a = TullockParams::new(1e4).unwrap();
        let p = tullock_win_pct(rt(2.0, 1.0), a).unwrap();
        assert!(p < 1.0 && p.is_finite());
    }

    #[test]
    fn domain_errors() {
        assert!(RunTotals::new(0.0, 1.0).is_err());
        assert!(RunTotals::new(1.0, -3.0).is_err());
        assert!(TullockParams::new(0.0).is_err());
        assert!(DifferenceParams::new(-0.1).is_err());
        let bad = RunTotals { rs: -1.0, ra: 2.0 };
        assert!(matches!(
            tullock_win_pct(bad, TullockParams::new(2.0).unwrap()),
            Err(CsfError::NonPositive { name: "rs", .. })
        ));
        assert!(matches!(
            difference_win_pct(rt(1.0, 2.0), DifferenceParams { beta: 0.0 }),
            Err(CsfError::NonPositive { name: "beta", .. })
        ));
    }

    #[test]
    fn wins_and_luck() {
        assert_eq!(expected_wins(0.5, 162).unwrap(), 81.0);
        assert!((expected_wins(0.64f64, 100).unwrap() - 64.0).abs() < 1e-12);
        assert!((expected_wins(0.621245f64, 162).unwrap() - 100.6417).abs() < 1e-3);
        assert!(expected_wins(1.0, 162).is_err());
        assert!(expected_wins(0.5, 0).is_err());
        assert_eq!(luck(90.0, 90.0), 0.0);
        assert_eq!(luck(88.0, 85.5), 2.5);
        assert_eq!(luck(70.0, 75.5), -5.5);
    }

    #[test]
    fn noise_limit() {
        let r = rt(900.0, 500.0);
        let mut prev = tullock_win_pct(r, TullockParams::new(1.0).unwrap()).unwrap();
        for alpha in [1e-1, 1e-2, 1e-4, 1e-8] {
            let p = tullock_win_pct(r, TullockParams::new(alpha).unwrap()).unwrap();
            assert!(p < prev && p > 0.5);
            prev = p;
        }
        assert!((prev - 0.5).abs() < 1e-8);
    }

    #[test]
    fn single_precision() {
        let r = RunTotals::new(800.0f32, 600.0).unwrap();
        let p = james_win_pct(r).unwrap();
        assert!((p - 0.64).abs() < 1e-6);
    }
}
