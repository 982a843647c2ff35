use serde::{Deserialize, Serialize};

use crate::real::Real;

use super::EstimateError;

/// Maximized Gaussian log-likelihood of a least-squares fit with ML variance
/// `rss / n`: `−(n/2)·(ln 2π + ln(rss/n) + 1)`.
pub fn gaussian_loglik<T: Real>(rss: T, n: usize) -> Result<T, EstimateError> {
    if n == 0 {
        return Err(EstimateError::InsufficientData { n, k: 1 });
    }
    if !(rss > T::zero()) || !rss.is_finite() {
        return Err(EstimateError::Domain(format!(
            "log-likelihood needs a positive finite rss, got {rss}"
        )));
    }
    let n_t = T::of_usize(n);
    let two = T::of(2.0);
    Ok(-(n_t / two) * ((two * T::PI()).ln() + (rss / n_t).ln() + T::one()))
}

/// Akaike information criterion `−2·loglik + 2k`.
pub fn aic<T: Real>(loglik: T, k: usize) -> T {
    let two = T::of(2.0);
    -two * loglik + two * T::of_usize(k)
}

/// Relative likelihood that model `a` rather than model `b` minimizes
/// information loss, `exp((aic_b − aic_a) / 2)`.
///
/// The ratio itself underflows to zero near `e^{-745}` in `f64`, so the
/// natural-log exponent is kept alongside it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvidenceRatio {
    /// `(aic_b − aic_a) / 2`.
    pub ln_ratio: f64,
}

impl EvidenceRatio {
    pub fn value(&self) -> f64 {
        self.ln_ratio.exp()
    }

    /// Splits the ratio into `mantissa × 10^exponent` with `1 ≤ mantissa < 10`.
    /// A ratio of exactly zero (infinitely worse) gives `(0, 0)`.
    pub fn decimal(&self) -> (f64, i32) {
        if self.ln_ratio == f64::NEG_INFINITY {
            return (0.0, 0);
        }
        if !self.ln_ratio.is_finite() {
            return (f64::INFINITY, 0);
        }
        let log10 = self.ln_ratio / std::f64::consts::LN_10;
        let mut exponent = log10.floor();
        let mut mantissa = 10f64.powf(log10 - exponent);
        if mantissa >= 10.0 {
            mantissa /= 10.0;
            exponent += 1.0;
        }
        (mantissa, exponent as i32)
    }
}

pub fn evidence_ratio<T: Real>(aic_a: T, aic_b: T) -> EvidenceRatio {
    let (a, b) = (aic_a.to_f64_lossy(), aic_b.to_f64_lossy());
    // Two perfect fits (both −∞) are indistinguishable.
    let ln_ratio = if a == b { 0.0 } else { (b - a) / 2.0 };
    EvidenceRatio { ln_ratio }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loglik_examples() {
        assert!((gaussian_loglik(2.0f64, 2).unwrap() - (-2.837_877_066_409_345)).abs() < 1e-6);
        // n = 30,000 at rmse 0.10574: −15000·(ln 2π + 2 ln 0.10574 + 1).
        let ll = gaussian_loglik(30_000.0 * 0.10574f64.powi(2), 30_000).unwrap();
        assert!((ll - 24_835.004_849).abs() < 1e-3, "{ll}");
        assert!(gaussian_loglik(0.0, 10).is_err());
        assert!(gaussian_loglik(1.0, 0).is_err());
    }

    #[test]
    fn loglik_decreases_in_rss() {
        let mut prev = f64::INFINITY;
        for rss in [1e-6, 1e-3, 0.5, 1.0, 10.0, 1e4] {
            let ll = gaussian_loglik(rss, 50).unwrap();
            assert!(ll < prev);
            prev = ll;
        }
    }

    #[test]
    fn aic_examples() {
        assert_eq!(aic(0.0, 0), 0.0);
        let ll = gaussian_loglik(1.0f64, 100).unwrap();
        assert!((ll - 88.3646).abs() < 1e-4);
        assert!((aic(ll, 2) - (-172.7292)).abs() < 1e-3);
        assert!((aic(88.3646f64, 2) - (-172.7292)).abs() < 1e-3);
    }

    #[test]
    fn evidence_examples() {
        assert_eq!(evidence_ratio(5.0, 5.0).value(), 1.0);
        assert!((evidence_ratio(12.0, 10.0).value() - 0.367_879_441_171_442).abs() < 1e-12);
        let e = evidence_ratio(-49_671.95, -50_128.41);
        assert!((e.ln_ratio - (-228.23)).abs() < 1e-9);
        // e^{-228.23} = 7.60274449e-100 at 30 digits.
        assert!((e.value() / 7.602_744_491_451_42e-100 - 1.0).abs() < 1e-9);
        let (m, x) = e.decimal();
        assert_eq!(x, -100);
        assert!((m - 7.60).abs() / 7.60 < 0.02);
    }

    #[test]
    fn evidence_underflow_keeps_exponent() {
        let e = evidence_ratio(0.0, -4000.0);
        assert_eq!(e.value(), 0.0);
        let (m, x) = e.decimal();
        assert_eq!(x, -869);
        assert!((1.0..10.0).contains(&m));
        let perfect = evidence_ratio(10.0, f64::NEG_INFINITY);
        assert_eq!(perfect.value(), 0.0);
        assert_eq!(perfect.decimal(), (0.0, 0));
        assert_eq!(evidence_ratio(f64::NEG_INFINITY, f64::NEG_INFINITY).value(), 1.0);
    }

    #[test]
    fn reciprocity() {
        for (a, b) in [(1.0, 2.0), (-300.0, 150.0), (-49_671.95, -50_128.41)] {
            let p = evidence_ratio(a, b).value() * evidence_ratio(b, a).value();
            assert!((p - 1.0).abs() < 1e-12);
        }
    }
}
