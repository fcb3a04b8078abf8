//! Return computation, convention conversion, and the two period means.
//!
//! The geometric mean here is the average per-period log return,
//! ln(S_n/S_0)/n: it depends only on the endpoints and the period count, so
//! it is path-independent by construction. The arithmetic mean is the simple
//! average of per-period net returns and is path-dependent. For any
//! non-constant return path, (1 + arithmetic mean) strictly exceeds
//! e^(geometric mean); the two agree exactly when every period's return is
//! identical.

use crate::error::{Error, Result};
use crate::series::{Convention, PriceSeries};
use crate::stats::{mean, sample_stdev};

/// Per-period returns of a positive value path under the given convention.
///
/// Needs at least two observations; every value must be positive and finite.
pub fn returns_from_values(values: &[f64], convention: Convention) -> Result<Vec<f64>> {
    if values.len() < 2 {
        return Err(Error::InsufficientData {
            needed: 2,
            got: values.len(),
        });
    }
    for (i, v) in values.iter().enumerate() {
        if !v.is_finite() || *v <= 0.0 {
            return Err(Error::domain(format!(
                "value at index {i} must be positive and finite to form returns, got {v}"
            )));
        }
    }
    Ok(values
        .windows(2)
        .map(|w| {
            let gross = w[1] / w[0];
            match convention {
                Convention::Gross => gross,
                Convention::Net => gross - 1.0,
                Convention::Log => gross.ln(),
            }
        })
        .collect())
}

/// Average per-period log return, ln(S_n/S_0)/n.
///
/// Computed straight from the endpoints, which makes path independence exact
/// rather than a floating-point accident.
pub fn geometric_mean(values: &[f64]) -> Result<f64> {
    if values.len() < 2 {
        return Err(Error::InsufficientData {
            needed: 2,
            got: values.len(),
        });
    }
    let first = values[0];
    let last = *values.last().expect("len >= 2");
    if !(first.is_finite() && last.is_finite()) || first <= 0.0 || last <= 0.0 {
        return Err(Error::domain(format!(
            "geometric mean needs positive endpoints, got {first} and {last}"
        )));
    }
    let n = (values.len() - 1) as f64;
    Ok((last / first).ln() / n)
}

/// Simple average of per-period net returns.
pub fn arithmetic_mean(net_returns: &[f64]) -> Result<f64> {
    for r in net_returns {
        Convention::Net.check(*r)?;
    }
    mean(net_returns)
}

/// Summary of both period means and both dispersion measures for one path.
#[derive(Debug, Clone, PartialEq)]
pub struct MeanSummary {
    /// Average per-period log return (path-independent).
    pub geometric_mean_log: f64,
    /// Average per-period net return (path-dependent).
    pub arithmetic_mean_net: f64,
    /// Sample standard deviation of log returns.
    pub stdev_log: f64,
    /// Sample standard deviation of net returns.
    pub stdev_net: f64,
    /// Number of return periods (observations minus one).
    pub n_periods: usize,
}

/// Compute a [`MeanSummary`] from a price series.
pub fn mean_summary(prices: &PriceSeries) -> Result<MeanSummary> {
    let net = prices.returns(Convention::Net)?;
    let log = prices.returns(Convention::Log)?;
    Ok(MeanSummary {
        geometric_mean_log: geometric_mean(prices.values())?,
        arithmetic_mean_net: mean(net.values())?,
        stdev_log: sample_stdev(log.values())?,
        stdev_net: sample_stdev(net.values())?,
        n_periods: prices.len() - 1,
    })
}

/// Terminal value from compounding a constant per-period mean for n periods.
///
/// Log convention: s0 * e^(n * mean). Net: s0 * (1 + mean)^n. Gross:
/// s0 * mean^n. For the log convention with the geometric mean of a path
/// this reconstructs the path's final value exactly.
pub fn compound_on_mean(s0: f64, mean: f64, n: u32, convention: Convention) -> Result<f64> {
    if !s0.is_finite() || s0 <= 0.0 {
        return Err(Error::domain(format!(
            "starting value must be positive, got {s0}"
        )));
    }
    let mean = convention.check(mean)?;
    Ok(match convention {
        Convention::Log => s0 * (n as f64 * mean).exp(),
        Convention::Net => s0 * (1.0 + mean).powi(n as i32),
        Convention::Gross => s0 * mean.powi(n as i32),
    })
}

// Re-exported alias so the conversion primitive is reachable from this
// module's namespace as well as `series`.
pub use crate::series::convert_value as convert;

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    // Endpoints and period count of a long monthly index history used as a
    // cross-check fixture throughout the crate.
    const S0: f64 = 55.61;
    const SN: f64 = 3225.52;
    const N: usize = 720;

    #[test]
    fn returns_from_values_three_conventions() {
        let p = [100.0, 150.0, 100.0];
        assert_eq!(
            returns_from_values(&p, Convention::Gross).unwrap(),
            vec![1.5, 100.0 / 150.0]
        );
        let net = returns_from_values(&p, Convention::Net).unwrap();
        assert_relative_eq!(net[0], 0.5);
        assert_relative_eq!(net[1], -1.0 / 3.0, max_relative = 1e-15);
        let log = returns_from_values(&p, Convention::Log).unwrap();
        assert_relative_eq!(log[0], 1.5f64.ln());
        assert_relative_eq!(log[1], -(1.5f64.ln()), max_relative = 1e-12);
    }

    #[test]
    fn geometric_mean_from_endpoints() {
        let mut path = vec![S0];
        // interior points are irrelevant; only endpoints and count matter
        path.extend(std::iter::repeat(77.7).take(N - 1));
        path.push(SN);
        let g = geometric_mean(&path).unwrap();
        assert_relative_eq!(g, 5.639564465753690e-3, max_relative = 1e-12);
        // agrees with the printed 4-digit value at print precision
        assert!((g - 5.640e-3).abs() < 5e-7);
    }

    #[test]
    fn geometric_mean_reconstructs_terminal_value() {
        let g = geometric_mean(&[S0, 1.0, SN, 2.0, 100.0, SN]).unwrap();
        let rebuilt = compound_on_mean(S0, g, 5, Convention::Log).unwrap();
        assert_relative_eq!(rebuilt, SN, max_relative = 1e-12);
    }

    #[test]
    fn arithmetic_mean_of_known_returns() {
        // 50% then -33.33..% average to 8.33..%
        let m = arithmetic_mean(&[0.5, -1.0 / 3.0]).unwrap();
        assert_relative_eq!(m, 1.0 / 12.0, max_relative = 1e-15);
    }

    #[test]
    fn arithmetic_mean_rejects_invalid_net() {
        assert!(matches!(
            arithmetic_mean(&[0.5, -1.0]),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn compound_on_mean_net_from_rounded_mean() {
        // The 4-significant-digit mean 6.543e-3 deterministically yields
        // 6087.41; the value printed alongside it (6089.20) came from an
        // unrounded mean, so agreement is only to ~0.05% relative.
        let v = compound_on_mean(S0, 6.543e-3, 720, Convention::Net).unwrap();
        assert_relative_eq!(v, 6087.4103118192, max_relative = 1e-10);
        assert!((v / 6089.20 - 1.0).abs() < 5e-4);
    }

    #[test]
    fn compound_on_mean_rejects_bad_inputs() {
        assert!(compound_on_mean(0.0, 0.1, 10, Convention::Net).is_err());
        assert!(compound_on_mean(100.0, -1.0, 10, Convention::Net).is_err());
        assert!(compound_on_mean(100.0, -0.5, 10, Convention::Gross).is_err());
    }

    #[test]
    fn mean_summary_example() {
        let prices = PriceSeries::from_values(vec![100.0, 150.0, 100.0]).unwrap();
        let s = mean_summary(&prices).unwrap();
        assert_relative_eq!(s.geometric_mean_log, 0.0, epsilon = 1e-15);
        assert_relative_eq!(s.arithmetic_mean_net, 1.0 / 12.0, max_relative = 1e-14);
        assert_eq!(s.n_periods, 2);
        // arithmetic-vs-geometric ordering
        assert!((1.0 + s.arithmetic_mean_net).ln() > s.geometric_mean_log);
    }

    proptest! {
        // Path independence: permuting interior points never changes the
        // geometric mean (bit-identical, since only endpoints enter).
        #[test]
        fn geometric_mean_is_path_independent(
            interior in proptest::collection::vec(0.01f64..1e4, 1..40),
            rotate in 0usize..40,
        ) {
            let mut a = vec![100.0];
            a.extend(interior.iter().cloned());
            a.push(250.0);
            let mut b = a.clone();
            let k = rotate % interior.len().max(1);
            b[1..interior.len() + 1].rotate_left(k);
            prop_assert_eq!(geometric_mean(&a).unwrap(), geometric_mean(&b).unwrap());
        }

        // Strict arithmetic-over-geometric dominance for non-constant paths,
        // equality for constant ones.
        #[test]
        fn arithmetic_dominates_geometric(
            nets in proptest::collection::vec(-0.9f64..4.0, 2..60),
        ) {
            let mut values = vec![100.0f64];
            for r in &nets {
                let next = values.last().unwrap() * (1.0 + r);
                values.push(next);
            }
            let g = geometric_mean(&values).unwrap();
            let a = arithmetic_mean(&returns_from_values(&values, Convention::Net).unwrap()).unwrap();
            let spread = nets.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
                - nets.iter().cloned().fold(f64::INFINITY, f64::min);
            if spread > 1e-6 {
                prop_assert!((1.0 + a) > g.exp(), "1+am {} vs e^gm {}", 1.0 + a, g.exp());
            } else {
                prop_assert!(((1.0 + a).ln() - g).abs() < 1e-9);
            }
        }

        // Reconstruction: compounding the geometric mean recovers the
        // terminal value to 1e-10 relative.
        #[test]
        fn compound_reconstruction(
            values in proptest::collection::vec(0.5f64..5000.0, 2..80),
        ) {
            let g = geometric_mean(&values).unwrap();
            let rebuilt = compound_on_mean(values[0], g, (values.len() - 1) as u32, Convention::Log).unwrap();
            let last = *values.last().unwrap();
            prop_assert!((rebuilt - last).abs() <= 1e-10 * last.abs().max(1.0));
        }
    }
}
