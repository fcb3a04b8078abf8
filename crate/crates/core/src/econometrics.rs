//! Ordinary least squares with t-statistics, Sharpe ratios, and the
//! significance thresholds used throughout the reports.
//!
//! The solver takes whatever per-period series the caller supplies — raw
//! returns or excess returns under any convention — and stays agnostic about
//! their semantics. Standard errors are homoskedastic OLS errors with
//! residual variance RSS/(n - k - 1).
//!
//! The single-factor path is computed in closed form (scalar centered
//! moments), not through the generic matrix solver; the multi-factor path
//! solves the centered normal equations with Gauss-Jordan elimination and
//! recovers the intercept and its standard error from the partitioned
//! inverse.

use crate::error::{Error, Result};
use crate::series::{Convention, ReturnSeries};
use crate::stats::{mean, sample_stdev};

/// Signed t-value thresholds for significance markers, smallest first.
pub const SIGNIFICANCE_THRESHOLDS: [f64; 4] = [1.66, 1.98, 2.62, 3.37];

/// A named per-period factor series (e.g. a market excess return).
#[derive(Debug, Clone, PartialEq)]
pub struct FactorSeries {
    pub name: String,
    pub values: Vec<f64>,
}

impl FactorSeries {
    pub fn new(name: impl Into<String>, values: Vec<f64>) -> Self {
        FactorSeries {
            name: name.into(),
            values,
        }
    }
}

/// A fitted regression: coefficient estimates, homoskedastic standard
/// errors, t-statistics, residuals, and fit quality.
///
/// When fitted without an intercept, `alpha`, `se_alpha` and `t_alpha` are
/// all zero by convention and `r_squared` is uncentered.
#[derive(Debug, Clone, PartialEq)]
pub struct RegressionFit {
    pub alpha: f64,
    pub betas: Vec<f64>,
    pub se_alpha: f64,
    pub se_betas: Vec<f64>,
    pub t_alpha: f64,
    pub t_betas: Vec<f64>,
    pub residuals: Vec<f64>,
    pub n_obs: usize,
    pub r_squared: f64,
}

/// Mean, dispersion and reward-to-variability of a return series.
#[derive(Debug, Clone, PartialEq)]
pub struct SharpeResult {
    pub mean: f64,
    pub stdev: f64,
    pub sharpe: f64,
    pub convention: Convention,
    pub rf_per_period: f64,
}

/// Fit `dependent` on `factors` by ordinary least squares.
///
/// Requires at least two more observations than coefficients. Each factor
/// must have the same length as the dependent series; a collinear or
/// zero-variance design is rejected as [`Error::SingularDesign`].
pub fn ols(dependent: &[f64], factors: &[FactorSeries], intercept: bool) -> Result<RegressionFit> {
    let n = dependent.len();
    let k = factors.len();
    if k == 0 {
        return Err(Error::domain("at least one factor is required"));
    }
    for f in factors {
        if f.values.len() != n {
            return Err(Error::Shape {
                what: "factor series length",
                expected: n,
                got: f.values.len(),
            });
        }
    }
    let coeffs = k + usize::from(intercept);
    if n < coeffs + 2 {
        return Err(Error::InsufficientData {
            needed: coeffs + 2,
            got: n,
        });
    }
    for v in dependent.iter().chain(factors.iter().flat_map(|f| f.values.iter())) {
        if !v.is_finite() {
            return Err(Error::domain("regression inputs must be finite"));
        }
    }
    // A bitwise-constant factor is exactly collinear with the intercept;
    // catch it here because the centered cross moments of such a factor can
    // come out as rounding noise (~1e-36) instead of exactly zero.
    if intercept
        && factors
            .iter()
            .any(|f| f.values.windows(2).all(|w| w[0] == w[1]))
    {
        return Err(Error::SingularDesign);
    }
    if intercept {
        ols_with_intercept(dependent, factors)
    } else {
        ols_through_origin(dependent, factors)
    }
}

fn ols_with_intercept(y: &[f64], factors: &[FactorSeries]) -> Result<RegressionFit> {
    let n = y.len();
    let nf = n as f64;
    let k = factors.len();
    let ybar = mean(y)?;
    let xbar: Vec<f64> = factors
        .iter()
        .map(|f| mean(&f.values))
        .collect::<Result<_>>()?;

    // Centered cross moments: sxx[i][j] = sum (x_i - xbar_i)(x_j - xbar_j).
    let mut sxx = vec![vec![0.0; k]; k];
    let mut sxy = vec![0.0; k];
    for t in 0..n {
        let dy = y[t] - ybar;
        for i in 0..k {
            let di = factors[i].values[t] - xbar[i];
            sxy[i] += di * dy;
            for j in i..k {
                sxx[i][j] += di * (factors[j].values[t] - xbar[j]);
            }
        }
    }
    for i in 0..k {
        for j in 0..i {
            sxx[i][j] = sxx[j][i];
        }
    }

    // Slopes and the inverse of the centered moment matrix. The k = 1 case
    // is the scalar closed form beta = Sxy/Sxx, alpha = ybar - beta*xbar.
    let (betas, sxx_inv) = if k == 1 {
        if sxx[0][0] <= 0.0 {
            return Err(Error::SingularDesign);
        }
        (vec![sxy[0] / sxx[0][0]], vec![vec![1.0 / sxx[0][0]]])
    } else {
        let inv = invert(sxx)?;
        let betas = (0..k)
            .map(|i| (0..k).map(|j| inv[i][j] * sxy[j]).sum())
            .collect();
        (betas, inv)
    };
    let betas: Vec<f64> = betas;
    let alpha = ybar - betas.iter().zip(&xbar).map(|(b, x)| b * x).sum::<f64>();

    let residuals: Vec<f64> = (0..n)
        .map(|t| {
            y[t] - alpha
                - betas
                    .iter()
                    .enumerate()
                    .map(|(i, b)| b * factors[i].values[t])
                    .sum::<f64>()
        })
        .collect();
    let rss: f64 = residuals.iter().map(|e| e * e).sum();
    let tss: f64 = y.iter().map(|v| (v - ybar).powi(2)).sum();
    let df = (n - k - 1) as f64;
    let s2 = rss / df;

    // Partitioned inverse: var(alpha) = s2*(1/n + xbar' Sxx^-1 xbar),
    // cov(betas) = s2 * Sxx^-1.
    let quad: f64 = (0..k)
        .map(|i| (0..k).map(|j| xbar[i] * sxx_inv[i][j] * xbar[j]).sum::<f64>())
        .sum();
    let se_alpha = (s2 * (1.0 / nf + quad)).sqrt();
    let se_betas: Vec<f64> = (0..k).map(|i| (s2 * sxx_inv[i][i]).sqrt()).collect();

    Ok(RegressionFit {
        t_alpha: alpha / se_alpha,
        t_betas: betas.iter().zip(&se_betas).map(|(b, s)| b / s).collect(),
        alpha,
        betas,
        se_alpha,
        se_betas,
        residuals,
        n_obs: n,
        r_squared: if tss > 0.0 { 1.0 - rss / tss } else { 0.0 },
    })
}

fn ols_through_origin(y: &[f64], factors: &[FactorSeries]) -> Result<RegressionFit> {
    let n = y.len();
    let k = factors.len();
    let mut m = vec![vec![0.0; k]; k];
    let mut v = vec![0.0; k];
    for t in 0..n {
        for i in 0..k {
            let xi = factors[i].values[t];
            v[i] += xi * y[t];
            for j in i..k {
                m[i][j] += xi * factors[j].values[t];
            }
        }
    }
    for i in 0..k {
        for j in 0..i {
            m[i][j] = m[j][i];
        }
    }
    let inv = invert(m)?;
    let betas: Vec<f64> = (0..k)
        .map(|i| (0..k).map(|j| inv[i][j] * v[j]).sum())
        .collect();
    let residuals: Vec<f64> = (0..n)
        .map(|t| {
            y[t] - betas
                .iter()
                .enumerate()
                .map(|(i, b)| b * factors[i].values[t])
                .sum::<f64>()
        })
        .collect();
    let rss: f64 = residuals.iter().map(|e| e * e).sum();
    let tss: f64 = y.iter().map(|v| v * v).sum();
    let s2 = rss / (n - k) as f64;
    let se_betas: Vec<f64> = (0..k).map(|i| (s2 * inv[i][i]).sqrt()).collect();
    Ok(RegressionFit {
        alpha: 0.0,
        t_alpha: 0.0,
        se_alpha: 0.0,
        t_betas: betas.iter().zip(&se_betas).map(|(b, s)| b / s).collect(),
        betas,
        se_betas,
        residuals,
        n_obs: n,
        r_squared: if tss > 0.0 { 1.0 - rss / tss } else { 0.0 },
    })
}

/// Invert a small symmetric positive-definite-ish matrix by Gauss-Jordan
/// elimination with partial pivoting. A pivot that collapses relative to the
/// matrix scale signals a collinear design.
fn invert(mut m: Vec<Vec<f64>>) -> Result<Vec<Vec<f64>>> {
    let k = m.len();
    let scale = m
        .iter()
        .flat_map(|row| row.iter())
        .fold(0.0f64, |acc, v| acc.max(v.abs()));
    let mut inv: Vec<Vec<f64>> = (0..k)
        .map(|i| (0..k).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    for col in 0..k {
        let pivot_row = (col..k)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .expect("non-empty range");
        if m[pivot_row][col].abs() <= 1e-12 * scale.max(1.0) {
            return Err(Error::SingularDesign);
        }
        m.swap(col, pivot_row);
        inv.swap(col, pivot_row);
        let p = m[col][col];
        for j in 0..k {
            m[col][j] /= p;
            inv[col][j] /= p;
        }
        for row in 0..k {
            if row != col {
                let factor = m[row][col];
                for j in 0..k {
                    m[row][j] -= factor * m[col][j];
                    inv[row][j] -= factor * inv[col][j];
                }
            }
        }
    }
    Ok(inv)
}

/// Reward-to-variability ratio (mean - rf) / stdev with the sample stdev.
///
/// `rf_per_period` must be quoted in the same convention and period as the
/// series itself. A series with zero dispersion has no Sharpe ratio.
pub fn sharpe(series: &ReturnSeries, rf_per_period: f64) -> Result<SharpeResult> {
    let (mean, stdev) = series_stats(series)?;
    if stdev == 0.0 {
        return Err(Error::DegenerateSeries);
    }
    Ok(SharpeResult {
        mean,
        stdev,
        sharpe: (mean - rf_per_period) / stdev,
        convention: series.convention(),
        rf_per_period,
    })
}

/// Sample mean and sample standard deviation of a return series.
pub fn series_stats(series: &ReturnSeries) -> Result<(f64, f64)> {
    let v = series.values();
    Ok((mean(v)?, sample_stdev(v)?))
}

/// Significance marker for a t-statistic against the fixed thresholds:
/// one star per threshold exceeded. By default the comparison is on the raw
/// signed t (only large positive values earn stars); `two_sided` compares
/// the magnitude instead.
pub fn significance_marker(t: f64, two_sided: bool) -> &'static str {
    let v = if two_sided { t.abs() } else { t };
    match SIGNIFICANCE_THRESHOLDS.iter().filter(|&&c| v > c).count() {
        0 => "",
        1 => "*",
        2 => "**",
        3 => "***",
        _ => "****",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn factor(values: &[f64]) -> FactorSeries {
        FactorSeries::new("x", values.to_vec())
    }

    /// Brute-force oracle: full design matrix with intercept column,
    /// coefficients from the explicitly inverted (X'X), homoskedastic SEs.
    fn brute_force(y: &[f64], factors: &[FactorSeries]) -> (Vec<f64>, Vec<f64>) {
        let n = y.len();
        let k = factors.len() + 1;
        let row = |t: usize| -> Vec<f64> {
            std::iter::once(1.0)
                .chain(factors.iter().map(|f| f.values[t]))
                .collect()
        };
        let mut xtx = vec![vec![0.0; k]; k];
        let mut xty = vec![0.0; k];
        for t in 0..n {
            let r = row(t);
            for i in 0..k {
                xty[i] += r[i] * y[t];
                for j in 0..k {
                    xtx[i][j] += r[i] * r[j];
                }
            }
        }
        let inv = invert(xtx).expect("oracle design should be well posed");
        let coefs: Vec<f64> = (0..k)
            .map(|i| (0..k).map(|j| inv[i][j] * xty[j]).sum())
            .collect();
        let rss: f64 = (0..n)
            .map(|t| {
                let fit: f64 = row(t).iter().zip(&coefs).map(|(x, c)| x * c).sum();
                (y[t] - fit).powi(2)
            })
            .sum();
        let s2 = rss / (n - k) as f64;
        let ses: Vec<f64> = (0..k).map(|i| (s2 * inv[i][i]).sqrt()).collect();
        (coefs, ses)
    }

    #[test]
    fn exact_linear_data_recovers_coefficients() {
        let x: Vec<f64> = (1..=8).map(|v| v as f64).collect();
        let y: Vec<f64> = x.iter().map(|v| 2.0 * v + 3.0).collect();
        let fit = ols(&y, &[factor(&x)], true).unwrap();
        assert_relative_eq!(fit.alpha, 3.0, max_relative = 1e-12);
        assert_relative_eq!(fit.betas[0], 2.0, max_relative = 1e-12);
        assert!(fit.residuals.iter().all(|e| e.abs() < 1e-9));
        assert_relative_eq!(fit.r_squared, 1.0, max_relative = 1e-12);
    }

    #[test]
    fn single_factor_matches_scalar_closed_form() {
        let x = [0.3, -0.1, 0.2, 0.05, -0.25, 0.4];
        let y = [0.25, 0.0, 0.1, 0.12, -0.3, 0.33];
        let fit = ols(&y, &[factor(&x)], true).unwrap();
        let xbar = x.iter().sum::<f64>() / 6.0;
        let ybar = y.iter().sum::<f64>() / 6.0;
        let sxx: f64 = x.iter().map(|v| (v - xbar).powi(2)).sum();
        let sxy: f64 = x.iter().zip(&y).map(|(a, b)| (a - xbar) * (b - ybar)).sum();
        let beta = sxy / sxx;
        assert_eq!(fit.betas[0], beta);
        assert_eq!(fit.alpha, ybar - beta * xbar);
        assert_relative_eq!(fit.t_betas[0], fit.betas[0] / fit.se_betas[0]);
    }

    #[test]
    fn residuals_sum_to_zero_with_intercept() {
        let x = [1.0, 2.0, 4.0, 7.0, 11.0, 16.0];
        let y = [2.0, 2.5, 3.9, 8.1, 10.5, 17.2];
        let fit = ols(&y, &[factor(&x)], true).unwrap();
        assert!(fit.residuals.iter().sum::<f64>().abs() < 1e-9);
    }

    #[test]
    fn collinear_and_degenerate_designs_are_rejected() {
        let x = [1.0, 2.0, 3.0, 4.0, 5.0, 6.0];
        let x2: Vec<f64> = x.iter().map(|v| 2.0 * v).collect();
        let y = [1.0, 2.0, 2.0, 3.0, 5.0, 4.0];
        assert_eq!(
            ols(&y, &[factor(&x), factor(&x2)], true).unwrap_err(),
            Error::SingularDesign
        );
        let constant = [3.0; 6];
        assert_eq!(
            ols(&y, &[factor(&constant)], true).unwrap_err(),
            Error::SingularDesign
        );
    }

    #[test]
    fn shape_and_length_guards() {
        let y = [1.0, 2.0, 3.0];
        assert!(matches!(
            ols(&y, &[factor(&[1.0, 2.0])], true),
            Err(Error::Shape { .. })
        ));
        assert!(matches!(
            ols(&y, &[factor(&[1.0, 2.0, 3.0])], true),
            Err(Error::InsufficientData { .. })
        ));
    }

    #[test]
    fn origin_regression_on_proportional_data() {
        let x = [1.0, 2.0, 3.0, 4.0, 5.0];
        let y: Vec<f64> = x.iter().map(|v| 2.0 * v).collect();
        let fit = ols(&y, &[factor(&x)], false).unwrap();
        assert_relative_eq!(fit.betas[0], 2.0, max_relative = 1e-12);
        assert_eq!(fit.alpha, 0.0);
        assert_relative_eq!(fit.r_squared, 1.0, max_relative = 1e-12);
    }

    #[test]
    fn sharpe_hand_value_and_degenerate_guard() {
        let s = ReturnSeries::new(Convention::Net, vec![0.02, 0.0, 0.04]).unwrap();
        let r = sharpe(&s, 0.01).unwrap();
        assert_relative_eq!(r.mean, 0.02, max_relative = 1e-14);
        assert_relative_eq!(r.stdev, 0.02, max_relative = 1e-12);
        assert_relative_eq!(r.sharpe, 0.5, max_relative = 1e-12);
        let flat = ReturnSeries::new(Convention::Net, vec![0.01, 0.01, 0.01]).unwrap();
        assert_eq!(sharpe(&flat, 0.01).unwrap_err(), Error::DegenerateSeries);
    }

    #[test]
    fn series_stats_constant_series() {
        let s = ReturnSeries::new(Convention::Net, vec![0.1, 0.1, 0.1]).unwrap();
        let (m, sd) = series_stats(&s).unwrap();
        assert_relative_eq!(m, 0.1, max_relative = 1e-14);
        assert_eq!(sd, 0.0);
    }

    #[test]
    fn significance_markers_by_threshold() {
        assert_eq!(significance_marker(1.0, false), "");
        assert_eq!(significance_marker(1.70, false), "*");
        assert_eq!(significance_marker(2.0, false), "**");
        assert_eq!(significance_marker(2.7, false), "***");
        assert_eq!(significance_marker(3.5, false), "****");
        assert_eq!(significance_marker(-2.0, false), "");
        assert_eq!(significance_marker(-2.0, true), "**");
    }

    proptest! {
        // Generic solver agrees with the brute-force full-design oracle.
        #[test]
        fn ols_matches_brute_force_oracle(
            raw in proptest::collection::vec(-1.0f64..1.0, 8..20),
            k in 1usize..=3,
            seed in 0u64..1000,
        ) {
            let n = raw.len();
            // deterministic pseudo-factors decorrelated from y via seed mixing
            let mut factors = Vec::new();
            for fi in 0..k {
                let values: Vec<f64> = (0..n)
                    .map(|t| {
                        let h = seed
                            .wrapping_mul(0x9e3779b97f4a7c15)
                            .wrapping_add((t as u64) << 16)
                            .wrapping_add(fi as u64 + 1);
                        let z = (h.wrapping_mul(0xbf58476d1ce4e5b9) >> 11) as f64
                            / (1u64 << 53) as f64;
                        z - 0.5 + raw[(t + fi + 1) % n] * 0.1
                    })
                    .collect();
                factors.push(FactorSeries::new(format!("f{fi}"), values));
            }
            let fit = match ols(&raw, &factors, true) {
                Ok(f) => f,
                Err(Error::SingularDesign) => return Ok(()),
                Err(e) => return Err(TestCaseError::fail(format!("unexpected error: {e}"))),
            };
            let (coefs, ses) = brute_force(&raw, &factors);
            prop_assert!((fit.alpha - coefs[0]).abs() <= 1e-9 * coefs[0].abs().max(1.0));
            prop_assert!((fit.se_alpha - ses[0]).abs() <= 1e-9 * ses[0].abs().max(1.0));
            for i in 0..k {
                prop_assert!((fit.betas[i] - coefs[i + 1]).abs() <= 1e-9 * coefs[i + 1].abs().max(1.0));
                prop_assert!((fit.se_betas[i] - ses[i + 1]).abs() <= 1e-9 * ses[i + 1].abs().max(1.0));
            }
            // residual sum vanishes when an intercept is fitted
            let scale = raw.iter().map(|v| v.abs()).fold(0.0f64, f64::max).max(1.0);
            prop_assert!(fit.residuals.iter().sum::<f64>().abs() <= 1e-9 * scale * n as f64);
        }

        // Scaling the dependent variable scales estimates, not t-values.
        #[test]
        fn scale_equivariance(
            y in proptest::collection::vec(-1.0f64..1.0, 10..25),
            c in prop_oneof![0.01f64..100.0, -100.0f64..-0.01],
        ) {
            let n = y.len();
            let x: Vec<f64> = (0..n).map(|t| ((t * t + 3) % 17) as f64 / 17.0 - 0.5).collect();
            let fit = ols(&y, &[factor(&x)], true).unwrap();
            let scaled: Vec<f64> = y.iter().map(|v| c * v).collect();
            let fit_c = ols(&scaled, &[factor(&x)], true).unwrap();
            prop_assert!((fit_c.alpha - c * fit.alpha).abs() <= 1e-9 * (c * fit.alpha).abs().max(1e-9));
            prop_assert!((fit_c.betas[0] - c * fit.betas[0]).abs() <= 1e-9 * (c * fit.betas[0]).abs().max(1e-9));
            if fit.se_alpha > 1e-12 {
                prop_assert!((fit_c.t_alpha - fit.t_alpha * c.signum()).abs() <= 1e-6 * fit.t_alpha.abs().max(1.0));
                prop_assert!((fit_c.t_betas[0] - fit.t_betas[0] * c.signum()).abs() <= 1e-6 * fit.t_betas[0].abs().max(1.0));
            }
        }
    }
}
