use crate::real::Real;

use super::EstimateError;

/// Dense column-major matrix; only what least squares needs.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    nrows: usize,
    ncols: usize,
    data: Vec<T>,
}

impl<T: Real> Matrix<T> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self {
            nrows,
            ncols,
            data: vec![T::zero(); nrows * ncols],
        }
    }

    /// Builds from row slices. Panics if the rows are ragged.
    pub fn from_rows<R: AsRef<[T]>>(rows: &[R]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), ncols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            assert_eq!(row.len(), ncols, "row {i} has {} columns, expected {ncols}", row.len());
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[j * self.nrows + i]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[j * self.nrows + i] = v;
    }

    pub fn column(&self, j: usize) -> &[T] {
        &self.data[j * self.nrows..(j + 1) * self.nrows]
    }

    fn column_mut(&mut self, j: usize) -> &mut [T] {
        &mut self.data[j * self.nrows..(j + 1) * self.nrows]
    }

    /// `X · b`.
    pub fn mul_vec(&self, b: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.nrows];
        for (j, &bj) in b.iter().enumerate() {
            for (o, &x) in out.iter_mut().zip(self.column(j)) {
                *o = *o + x * bj;
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OlsFit<T> {
    pub coefficients: Vec<T>,
    pub standard_errors: Vec<T>,
    pub residuals: Vec<T>,
    pub rss: T,
}

fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc + x * y)
}

/// Least squares by Householder QR.
///
/// Standard errors use `σ̂² = rss / (n − k)` times the diagonal of
/// `(XᵀX)⁻¹ = R⁻¹R⁻ᵀ`; they are NaN when `n == k`.
pub fn ols<T: Real>(x: &Matrix<T>, y: &[T]) -> Result<OlsFit<T>, EstimateError> {
    let (n, k) = (x.nrows(), x.ncols());
    if y.len() != n {
        return Err(EstimateError::Shape(format!("{n} design rows but {} responses", y.len())));
    }
    if k == 0 || n < k {
        return Err(EstimateError::InsufficientData { n, k });
    }
    if let Some(bad) = x.data.iter().chain(y).position(|v| !v.is_finite()) {
        return Err(EstimateError::Shape(format!("non-finite value at flat index {bad}")));
    }

    let mut a = x.clone();
    let mut qty = y.to_vec();
    let tol = T::epsilon() * T::of_usize(n.max(k));
    let mut v = vec![T::zero(); n];
    for j in 0..k {
        let original = dot(x.column(j), x.column(j)).sqrt();
        let col = &a.column(j)[j..];
        let norm = dot(col, col).sqrt();
        if norm <= tol * original || original == T::zero() {
            return Err(EstimateError::RankDeficient { column: j });
        }
        let alpha = if col[0] > T::zero() { -norm } else { norm };
        let tail = &mut v[j..];
        tail.copy_from_slice(col);
        tail[0] = tail[0] - alpha;
        let vnorm2 = dot(tail, tail);
        let reflect = |target: &mut [T]| {
            let s = dot(tail, target) * T::of(2.0) / vnorm2;
            for (t, &vi) in target.iter_mut().zip(tail.iter()) {
                *t = *t - s * vi;
            }
        };
        for c in j..k {
            reflect(&mut a.column_mut(c)[j..]);
        }
        reflect(&mut qty[j..]);
    }

    // R is the upper triangle of `a`.
    let r = |i: usize, j: usize| a.get(i, j);
    let mut coefficients = vec![T::zero(); k];
    for i in (0..k).rev() {
        let s = ((i + 1)..k).fold(qty[i], |acc, j| acc - r(i, j) * coefficients[j]);
        coefficients[i] = s / r(i, i);
    }

    // R⁻¹ by back substitution, column by column.
    let mut rinv = vec![vec![T::zero(); k]; k];
    for c in 0..k {
        for i in (0..=c).rev() {
            let rhs = if i == c { T::one() } else { T::zero() };
            let s = ((i + 1)..=c).fold(rhs, |acc, j| acc - r(i, j) * rinv[j][c]);
            rinv[i][c] = s / r(i, i);
        }
    }

    let fitted = x.mul_vec(&coefficients);
    let residuals: Vec<T> = y.iter().zip(&fitted).map(|(&yi, &fi)| yi - fi).collect();
    let rss = dot(&residuals, &residuals);
    let sigma2 = if n > k {
        rss / T::of_usize(n - k)
    } else {
        T::nan()
    };
    let standard_errors = (0..k)
        .map(|i| (sigma2 * rinv[i].iter().fold(T::zero(), |acc, &v| acc + v * v)).sqrt())
        .collect();

    Ok(OlsFit {
        coefficients,
        standard_errors,
        residuals,
        rss,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Normal equations solved by Gauss-Jordan elimination, in f64.
    fn normal_equations(x: &Matrix<f64>, y: &[f64]) -> Vec<f64> {
        let k = x.ncols();
        let mut g = vec![vec![0.0; k + 1]; k];
        for i in 0..k {
            for j in 0..k {
                g[i][j] = dot(x.column(i), x.column(j));
            }
            g[i][k] = dot(x.column(i), y);
        }
        for p in 0..k {
            let piv = (p..k).max_by(|&a, &b| g[a][p].abs().total_cmp(&g[b][p].abs())).unwrap();
            g.swap(p, piv);
            for r in 0..k {
                if r != p {
                    let f = g[r][p] / g[p][p];
                    for c in p..=k {
                        g[r][c] -= f * g[p][c];
                    }
                }
            }
        }
        (0..k).map(|i| g[i][k] / g[i][i]).collect()
    }

    #[test]
    fn noiseless_line() {
        let x = Matrix::<f64>::from_rows(&[[1.0], [2.0], [3.0]]);
        let fit = ols(&x, &[2.0, 4.0, 6.0]).unwrap();
        assert!((fit.coefficients[0] - 2.0).abs() < 1e-15);
        assert!(fit.rss < 1e-28);
    }

    #[test]
    fn two_points_by_hand() {
        // Σxy / Σx² = 7 / 5; residuals (1 − 1.4, 3 − 2.8).
        let x = Matrix::<f64>::from_rows(&[[1.0], [2.0]]);
        let fit = ols(&x, &[1.0, 3.0]).unwrap();
        assert!((fit.coefficients[0] - 1.4).abs() < 1e-14);
        assert!((fit.rss - 0.2).abs() < 1e-14);
        // σ̂² = 0.2 / 1, (XᵀX)⁻¹ = 1/5.
        assert!((fit.standard_errors[0] - (0.2f64 / 5.0).sqrt()).abs() < 1e-14);
    }

    #[test]
    fn exact_fit_has_nan_standard_errors() {
        let x = Matrix::<f64>::from_rows(&[[1.0, 0.0], [0.0, 1.0]]);
        let fit = ols(&x, &[3.0, 4.0]).unwrap();
        assert!(fit.standard_errors.iter().all(|s| s.is_nan()));
    }

    #[test]
    fn rank_deficiency_names_column() {
        let x = Matrix::from_rows(&[[1.0, 2.0, 1.0], [2.0, 4.0, 0.0], [3.0, 6.0, 5.0], [1.0, 2.0, 1.0]]);
        match ols(&x, &[1.0, 2.0, 3.0, 4.0]) {
            Err(EstimateError::RankDeficient { column }) => assert_eq!(column, 1),
            other => panic!("{other:?}"),
        }
        let zero = Matrix::from_rows(&[[0.0], [0.0]]);
        assert!(matches!(ols(&zero, &[1.0, 2.0]), Err(EstimateError::RankDeficient { column: 0 })));
    }

    #[test]
    fn shape_errors() {
        let x = Matrix::from_rows(&[[1.0, 2.0]]);
        assert!(matches!(ols(&x, &[1.0]), Err(EstimateError::InsufficientData { n: 1, k: 2 })));
        let x = Matrix::<f64>::from_rows(&[[1.0], [2.0]]);
        assert!(ols(&x, &[1.0]).is_err());
        assert!(ols(&x, &[1.0, f64::NAN]).is_err());
    }

    #[test]
    fn single_precision_solve() {
        let x = Matrix::from_rows(&[[1.0f32, 1.0], [2.0, 1.0], [3.0, 1.0], [4.0, 1.0]]);
        let fit = ols(&x, &[3.0, 5.0, 7.0, 9.0]).unwrap();
        assert!((fit.coefficients[0] - 2.0).abs() < 1e-5);
        assert!((fit.coefficients[1] - 1.0).abs() < 1e-5);
    }

    fn design() -> impl Strategy<Value = (Vec<Vec<f64>>, Vec<f64>)> {
        (1usize..=4).prop_flat_map(|k| {
            (k + 2..40).prop_flat_map(move |n| {
                (
                    prop::collection::vec(prop::collection::vec(-10.0f64..10.0, k), n),
                    prop::collection::vec(-50.0f64..50.0, n),
                )
            })
        })
    }

    proptest! {
        #[test]
        fn matches_normal_equations_and_orthogonal((rows, y) in design()) {
            let x = Matrix::from_rows(&rows);
            let fit = match ols(&x, &y) {
                Ok(f) => f,
                Err(EstimateError::RankDeficient { .. }) => return Ok(()),
                Err(e) => return Err(TestCaseError::fail(format!("{e}"))),
            };
            let b = normal_equations(&x, &y);
            let ynorm = dot(&y, &y).sqrt();
            for j in 0..x.ncols() {
                prop_assert!(dot(x.column(j), &fit.residuals).abs() <= 1e-9 * ynorm.max(1.0));
            }
            let scale = b.iter().fold(1.0f64, |m, v| m.max(v.abs()));
            for (got, want) in fit.coefficients.iter().zip(&b) {
                prop_assert!((got - want).abs() <= 1e-10 * scale, "{} vs {}", got, want);
            }
        }

        #[test]
        fn perturbing_a_coefficient_raises_rss((rows, y) in design(), j in 0usize..4, sign in prop::bool::ANY) {
            let x = Matrix::from_rows(&rows);
            let Ok(fit) = ols(&x, &y) else { return Ok(()) };
            let j = j % x.ncols();
            let mut b = fit.coefficients.clone();
            b[j] += if sign { 1e-4 } else { -1e-4 };
            let r: Vec<f64> = y.iter().zip(x.mul_vec(&b)).map(|(a, f)| a - f).collect();
            prop_assert!(dot(&r, &r) > fit.rss);
        }
    }
}
