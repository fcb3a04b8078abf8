//! Long-short portfolio accounting in two flavours, plus the growth-gap
//! inequalities that separate them.
//!
//! A periodically rebalanced long-short (PRLS) portfolio restarts both legs
//! at the same capital every period, so its per-period return is the plain
//! difference of the leg returns measured on that capital. A buy-and-hold
//! long-short (BHLS) portfolio is opened once at zero net cost; its value
//! path starts at exactly zero, which is why no return convention is defined
//! for it — any attempt to compute returns on a BHLS value series is an
//! error, not a number.

use crate::error::{Error, Result};
use crate::return_calculus::returns_from_values;
use crate::series::{Convention, ReturnSeries};
use crate::stats::{mean, sample_covariance, sample_variance};

/// Per-period PRLS return: the leg-value gap measured on the common capital.
///
/// Both legs are restarted at `capital`, so with end-of-period leg values
/// `long_end` and `short_end` the portfolio earns
/// (long_end - short_end) / capital.
pub fn net_return_difference(long_end: f64, short_end: f64, capital: f64) -> Result<f64> {
    if !capital.is_finite() || capital <= 0.0 {
        return Err(Error::domain(format!(
            "capital must be positive and finite, got {capital}"
        )));
    }
    if !long_end.is_finite() || !short_end.is_finite() {
        return Err(Error::domain("leg values must be finite"));
    }
    Ok((long_end - short_end) / capital)
}

/// End-of-period leg values for a PRLS portfolio, one entry per period,
/// with the common restart capital.
#[derive(Debug, Clone, PartialEq)]
pub struct LegPair {
    long: Vec<f64>,
    short: Vec<f64>,
    capital: f64,
}

impl LegPair {
    pub fn new(long: Vec<f64>, short: Vec<f64>, capital: f64) -> Result<Self> {
        if long.len() != short.len() {
            return Err(Error::Shape {
                what: "leg value series",
                expected: long.len(),
                got: short.len(),
            });
        }
        if !capital.is_finite() || capital <= 0.0 {
            return Err(Error::domain(format!(
                "capital must be positive and finite, got {capital}"
            )));
        }
        for v in long.iter().chain(short.iter()) {
            if !v.is_finite() {
                return Err(Error::domain("leg values must be finite"));
            }
        }
        Ok(LegPair {
            long,
            short,
            capital,
        })
    }

    pub fn long(&self) -> &[f64] {
        &self.long
    }

    pub fn short(&self) -> &[f64] {
        &self.short
    }

    pub fn capital(&self) -> f64 {
        self.capital
    }

    /// Per-period PRLS returns (L_t - S_t) / capital.
    pub fn return_differences(&self) -> Vec<f64> {
        self.long
            .iter()
            .zip(&self.short)
            .map(|(l, s)| (l - s) / self.capital)
            .collect()
    }
}

/// First two moments of the PRLS return series, decomposed by leg.
#[derive(Debug, Clone, PartialEq)]
pub struct PrlsStats {
    /// Mean per-period return: (mean(L) - mean(S)) / capital.
    pub mean: f64,
    /// Variance of the return: (var(L) + var(S) - 2 cov(L,S)) / capital^2.
    pub variance: f64,
    /// Covariance of the capital-normalised legs.
    pub covariance: f64,
}

/// Compute [`PrlsStats`] from leg values. Needs at least two periods.
///
/// The variance identity var(L/c - S/c) = (var L + var S - 2 cov(L,S)) / c^2
/// is exact; tests verify it against the brute-force variance of the
/// difference series.
pub fn prls_stats(legs: &LegPair) -> Result<PrlsStats> {
    let c = legs.capital;
    let var_l = sample_variance(&legs.long)?;
    let var_s = sample_variance(&legs.short)?;
    let cov = sample_covariance(&legs.long, &legs.short)?;
    Ok(PrlsStats {
        mean: (mean(&legs.long)? - mean(&legs.short)?) / c,
        variance: (var_l + var_s - 2.0 * cov) / (c * c),
        covariance: cov / (c * c),
    })
}

/// Value path of a buy-and-hold long-short portfolio. Starts at exactly zero.
#[derive(Debug, Clone, PartialEq)]
pub struct BhlsSeries {
    values: Vec<f64>,
}

impl BhlsSeries {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn terminal(&self) -> f64 {
        *self.values.last().expect("non-empty by construction")
    }

    /// Always an error: a series that starts at zero value admits no return
    /// convention (division by the zero initial value).
    pub fn returns(&self, _convention: Convention) -> Result<ReturnSeries> {
        Err(Error::ReturnsUndefined)
    }
}

/// Build a BHLS value path from two buy-and-hold leg paths opened at equal
/// value. Unequal initial values violate the zero-cost construction.
pub fn bhls_from_legs(long_path: &[f64], short_path: &[f64]) -> Result<BhlsSeries> {
    if long_path.len() != short_path.len() {
        return Err(Error::Shape {
            what: "leg paths",
            expected: long_path.len(),
            got: short_path.len(),
        });
    }
    if long_path.is_empty() {
        return Err(Error::InsufficientData { needed: 1, got: 0 });
    }
    if long_path[0] != short_path[0] {
        return Err(Error::ZeroCost {
            long: long_path[0],
            short: short_path[0],
        });
    }
    Ok(BhlsSeries {
        values: long_path
            .iter()
            .zip(short_path)
            .map(|(l, s)| l - s)
            .collect(),
    })
}

/// Per-period leg return differences under a convention (long minus short).
pub fn leg_return_diffs(
    long_path: &[f64],
    short_path: &[f64],
    convention: Convention,
) -> Result<Vec<f64>> {
    if long_path.len() != short_path.len() {
        return Err(Error::Shape {
            what: "leg paths",
            expected: long_path.len(),
            got: short_path.len(),
        });
    }
    let rl = returns_from_values(long_path, convention)?;
    let rs = returns_from_values(short_path, convention)?;
    Ok(rl.iter().zip(&rs).map(|(l, s)| l - s).collect())
}

/// Simple average of the per-period leg return differences.
pub fn leg_return_diff_mean(
    long_path: &[f64],
    short_path: &[f64],
    convention: Convention,
) -> Result<f64> {
    mean(&leg_return_diffs(long_path, short_path, convention)?)
}

/// A start value compounded through per-period excess returns.
#[derive(Debug, Clone, PartialEq)]
pub struct ExcessCompounding {
    /// Compounded values, starting with the start value itself.
    pub series: Vec<f64>,
    /// The per-period excess returns (risky minus risk-free).
    pub excess_returns: Vec<f64>,
    /// Simple average of the excess returns.
    pub mean: f64,
}

/// Compound `start` through the per-period excess of a risky path over a
/// risk-free path, under either the log or the net convention.
///
/// The gross convention is rejected: a difference of gross returns is not a
/// growth factor, so there is no meaningful way to compound on it.
pub fn compound_on_excess(
    start: f64,
    risky: &[f64],
    riskfree: &[f64],
    convention: Convention,
) -> Result<ExcessCompounding> {
    if !start.is_finite() || start <= 0.0 {
        return Err(Error::domain(format!(
            "start value must be positive and finite, got {start}"
        )));
    }
    if convention == Convention::Gross {
        return Err(Error::domain(
            "excess compounding is defined for net and log conventions only",
        ));
    }
    let excess = leg_return_diffs(risky, riskfree, convention)?;
    let mut series = Vec::with_capacity(excess.len() + 1);
    series.push(start);
    for (i, x) in excess.iter().enumerate() {
        let prev = *series.last().expect("non-empty");
        let next = match convention {
            Convention::Log => prev * x.exp(),
            Convention::Net => {
                if *x <= -1.0 {
                    return Err(Error::domain(format!(
                        "net excess return at period {} is {x}, cannot compound at or below -100%",
                        i + 1
                    )));
                }
                prev * (1.0 + x)
            }
            Convention::Gross => unreachable!("rejected above"),
        };
        series.push(next);
    }
    Ok(ExcessCompounding {
        mean: mean(&excess)?,
        excess_returns: excess,
        series,
    })
}

/// The two terminal measures whose gap Proposition-2-style reasoning bounds:
/// market-minus-T-bill terminal wealth versus excess-return future value.
#[derive(Debug, Clone, PartialEq)]
pub struct Prop2Gap {
    /// base * (e^(n*ybar) - e^(n*r)): hold the market, short the bill.
    pub mmtb: f64,
    /// Future value of the compounded excess, net of the base.
    pub xmfv: f64,
    /// (mmtb - xmfv) / mmtb, or zero when both sides vanish.
    pub underestimate: f64,
}

/// Gap with the excess compounded in log space: xmfv = base*(e^(n(ybar-r))-1).
///
/// For ybar > r > 0 the gap is strictly positive (mmtb factors as
/// (e^(n(ybar-r)) - 1) * e^(nr) with e^(nr) > 1); at r = 0 the two sides
/// coincide exactly.
pub fn prop2_gap(ybar: f64, r: f64, n: u32, base: f64) -> Result<Prop2Gap> {
    check_gap_inputs(ybar, r, base)?;
    let nf = n as f64;
    let mmtb = base * ((nf * ybar).exp() - (nf * r).exp());
    let xmfv = base * ((nf * (ybar - r)).exp() - 1.0);
    Ok(gap(mmtb, xmfv))
}

/// Gap with the excess formed in net space: the per-period net excess is
/// e^ybar - e^r and compounds as base * (1 + excess)^n.
pub fn prop2_gap_net(ybar: f64, r: f64, n: u32, base: f64) -> Result<Prop2Gap> {
    check_gap_inputs(ybar, r, base)?;
    let nf = n as f64;
    let mmtb = base * ((nf * ybar).exp() - (nf * r).exp());
    let excess = ybar.exp() - r.exp();
    if excess <= -1.0 {
        return Err(Error::domain(format!(
            "net excess {excess} cannot compound at or below -100%"
        )));
    }
    let xmfv = base * ((1.0 + excess).powi(n as i32) - 1.0);
    Ok(gap(mmtb, xmfv))
}

fn check_gap_inputs(ybar: f64, r: f64, base: f64) -> Result<()> {
    if !ybar.is_finite() || !r.is_finite() {
        return Err(Error::domain("rates must be finite"));
    }
    if !base.is_finite() || base <= 0.0 {
        return Err(Error::domain(format!(
            "base must be positive and finite, got {base}"
        )));
    }
    Ok(())
}

fn gap(mmtb: f64, xmfv: f64) -> Prop2Gap {
    let underestimate = if mmtb == 0.0 {
        0.0
    } else {
        (mmtb - xmfv) / mmtb
    };
    Prop2Gap {
        mmtb,
        xmfv,
        underestimate,
    }
}

/// Uniform-shift comparison: does adding delta to both rates widen the
/// terminal gap? True iff e^(n(ybar+delta)) - e^(n(r+delta)) strictly
/// exceeds e^(n*ybar) - e^(n*r). Holds for any ybar > r with delta > 0.
pub fn corollary1_holds(ybar: f64, r: f64, delta: f64, n: u32) -> bool {
    let nf = n as f64;
    let shifted = (nf * (ybar + delta)).exp() - (nf * (r + delta)).exp();
    let unshifted = (nf * ybar).exp() - (nf * r).exp();
    shifted > unshifted
}

/// Strict power-difference inequality: (y - x)^n < y^n - x^n.
///
/// Holds for y > x > 0 with n >= 2; degenerates to equality at x = 0 (any n)
/// and at n = 1, so those boundaries return false.
pub fn power_inequality_holds(y: f64, x: f64, n: u32) -> bool {
    let lhs = (y - x).powi(n as i32);
    let rhs = y.powi(n as i32) - x.powi(n as i32);
    lhs < rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn return_difference_scales_with_capital() {
        // 10% long gain and 3% short gain on 1000 capital
        let r = net_return_difference(1100.0, 1030.0, 1000.0).unwrap();
        assert_relative_eq!(r, 0.07, max_relative = 1e-14);
        assert!(net_return_difference(1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn dollar_gap_and_return_can_rank_opposite_ways() {
        // Larger dollar gap, smaller return: 70 > 12 but 7% < 12%.
        let big = bhls_from_legs(&[1000.0, 1100.0], &[1000.0, 1030.0]).unwrap();
        let small = bhls_from_legs(&[100.0, 115.0], &[100.0, 103.0]).unwrap();
        assert!(big.terminal() > small.terminal());
        let r_big = net_return_difference(1100.0, 1030.0, 1000.0).unwrap();
        let r_small = net_return_difference(115.0, 103.0, 100.0).unwrap();
        assert!(r_big < r_small);
    }

    #[test]
    fn prls_stats_match_hand_computation() {
        let legs = LegPair::new(
            vec![105.0, 110.0, 95.0],
            vec![100.0, 102.0, 101.0],
            100.0,
        )
        .unwrap();
        let s = prls_stats(&legs).unwrap();
        assert_relative_eq!(s.mean, (310.0 / 3.0 - 101.0) / 100.0, max_relative = 1e-14);
        // identity against the direct difference series
        let diffs = legs.return_differences();
        assert_relative_eq!(
            s.variance,
            sample_variance(&diffs).unwrap(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn bhls_starts_at_zero_and_refuses_returns() {
        let b = bhls_from_legs(&[100.0, 150.0, 100.0], &[100.0, 80.0, 100.0]).unwrap();
        assert_eq!(b.values(), &[0.0, 70.0, 0.0]);
        assert_eq!(b.terminal(), 0.0);
        assert_eq!(
            b.returns(Convention::Net).unwrap_err(),
            Error::ReturnsUndefined
        );
    }

    #[test]
    fn unequal_initial_values_violate_zero_cost() {
        assert!(matches!(
            bhls_from_legs(&[100.0, 150.0], &[90.0, 80.0]),
            Err(Error::ZeroCost { .. })
        ));
    }

    #[test]
    fn leg_return_diffs_three_point_scenario() {
        // long 100->150->100, short 100->80->100
        let long = [100.0, 150.0, 100.0];
        let short = [100.0, 80.0, 100.0];
        let net = leg_return_diffs(&long, &short, Convention::Net).unwrap();
        assert_relative_eq!(net[0], 0.70, max_relative = 1e-14);
        assert_relative_eq!(net[1], -1.0 / 3.0 - 0.25, max_relative = 1e-14);
        assert_relative_eq!(
            leg_return_diff_mean(&long, &short, Convention::Net).unwrap(),
            (0.70 - 7.0 / 12.0) / 2.0,
            max_relative = 1e-13
        );
        let log = leg_return_diffs(&long, &short, Convention::Log).unwrap();
        assert_relative_eq!(log[0], 1.5f64.ln() - 0.8f64.ln(), max_relative = 1e-14);
        assert_relative_eq!(
            leg_return_diff_mean(&long, &short, Convention::Log).unwrap(),
            0.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn compound_on_excess_small_example() {
        let out = compound_on_excess(
            100.0,
            &[100.0, 110.0],
            &[100.0, 105.0],
            Convention::Net,
        )
        .unwrap();
        assert_eq!(out.series.len(), 2);
        assert_relative_eq!(out.series[1], 105.0, max_relative = 1e-14);
        assert_relative_eq!(out.mean, 0.05, max_relative = 1e-14);
        let log = compound_on_excess(
            100.0,
            &[100.0, 110.0],
            &[100.0, 105.0],
            Convention::Log,
        )
        .unwrap();
        assert_relative_eq!(log.series[1], 100.0 * 1.1 / 1.05, max_relative = 1e-14);
        assert!(compound_on_excess(
            100.0,
            &[100.0, 110.0],
            &[100.0, 105.0],
            Convention::Gross
        )
        .is_err());
    }

    #[test]
    fn prop2_gap_frozen_values() {
        let g = prop2_gap(0.10, 0.03, 20, 100.0).unwrap();
        assert_relative_eq!(g.mmtb, 556.6937298540, max_relative = 1e-10);
        assert_relative_eq!(g.xmfv, 305.5199966845, max_relative = 1e-10);
        assert_relative_eq!(g.underestimate, 0.451188363906, max_relative = 1e-9);
    }

    #[test]
    fn prop2_gap_net_frozen_values() {
        let g = prop2_gap_net(0.10, 0.03, 20, 100.0).unwrap();
        assert_relative_eq!(g.mmtb, 556.6937298540, max_relative = 1e-10);
        // grows to ~422.55, so the future value nets to ~322.55
        assert_relative_eq!(g.xmfv, 322.5493086833, max_relative = 1e-10);
        assert_relative_eq!(g.underestimate, 0.420598272648, max_relative = 1e-9);
    }

    #[test]
    fn prop2_gap_daily_compounding_within_a_month() {
        let g = prop2_gap(0.10 / 365.0, 0.03 / 365.0, 30, 100.0).unwrap();
        assert_relative_eq!(g.underestimate, 0.002462715952, max_relative = 1e-8);
    }

    #[test]
    fn prop2_gap_degenerates_at_equal_rates() {
        let g = prop2_gap(0.05, 0.05, 10, 100.0).unwrap();
        assert_eq!(g.mmtb, 0.0);
        assert_eq!(g.xmfv, 0.0);
        assert_eq!(g.underestimate, 0.0);
    }

    #[test]
    fn corollary_shift_boundaries() {
        assert!(corollary1_holds(0.10, 0.03, 0.02, 20));
        // delta = 0 gives equality, not strict improvement
        assert!(!corollary1_holds(0.10, 0.03, 0.0, 20));
    }

    #[test]
    fn power_inequality_boundaries() {
        assert!(power_inequality_holds(2.0, 1.0, 2)); // 1 < 3
        assert!(!power_inequality_holds(2.0, 0.0, 2)); // equality at x = 0
        assert!(!power_inequality_holds(2.0, 1.0, 1)); // equality at n = 1
    }

    proptest! {
        // PRLS variance identity vs the brute-force difference series.
        #[test]
        fn prls_variance_identity(
            long in proptest::collection::vec(50.0f64..150.0, 2..40),
            shift in proptest::collection::vec(-20.0f64..20.0, 2..40),
        ) {
            let n = long.len().min(shift.len());
            let short: Vec<f64> = long[..n].iter().zip(&shift[..n]).map(|(l, d)| l + d).collect();
            let legs = LegPair::new(long[..n].to_vec(), short, 100.0).unwrap();
            let s = prls_stats(&legs).unwrap();
            let brute = sample_variance(&legs.return_differences()).unwrap();
            // The identity cancels var(L) + var(S) against 2 cov(L,S), so its
            // rounding error scales with those terms, not with the (possibly
            // tiny) result: near-identical legs make `brute` collapse while
            // the cancelled terms stay large.
            let var_l = sample_variance(&legs.long).unwrap();
            let var_s = sample_variance(&legs.short).unwrap();
            let cov = sample_covariance(&legs.long, &legs.short).unwrap();
            let scale = (var_l + var_s + 2.0 * cov.abs()) / (100.0 * 100.0);
            prop_assert!((s.variance - brute).abs() <= 1e-12 * scale.max(1e-12));
            let mean_brute = crate::stats::mean(&legs.return_differences()).unwrap();
            prop_assert!((s.mean - mean_brute).abs() <= 1e-12);
        }

        // Strict growth gap for ybar > r > 0.
        #[test]
        fn prop2_gap_is_strict(
            r in 1e-4f64..1.0,
            extra in 1e-4f64..1.0,
            n in 1u32..50,
        ) {
            let g = prop2_gap(r + extra, r, n, 100.0).unwrap();
            prop_assert!(g.mmtb > g.xmfv);
            prop_assert!(g.underestimate > 0.0);
        }

        // Strict shift effect for delta > 0.
        #[test]
        fn corollary_shift_is_strict(
            r in 0.0f64..1.0,
            extra in 1e-4f64..1.0,
            delta in 1e-4f64..1.0,
            n in 1u32..40,
        ) {
            prop_assert!(corollary1_holds(r + extra, r, delta, n));
        }

        // Strict power-difference inequality away from the boundaries.
        #[test]
        fn power_inequality_is_strict(
            x in 1e-3f64..10.0,
            ratio in 1e-3f64..10.0,
            n in 2u32..=30,
        ) {
            let y = x * (1.0 + ratio);
            prop_assert!(power_inequality_holds(y, x, n));
        }
    }
}
