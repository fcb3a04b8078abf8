//! Terminal-value ledgers for buy-and-hold versus periodic-rebalancing
//! strategies.
//!
//! A buy-and-hold position compounds the asset itself. A periodically
//! rebalanced position restarts each period at the same capital, sweeping the
//! period's profit or loss into a cash account; the swept cash either sits
//! flat or earns the risk-free rate. The ledger below makes both accountings
//! explicit so the two strategies can be compared at equal capital.
//!
//! Rate alignment convention: with n return periods, the cash swept at the
//! end of period t (1-indexed) is reinvested through the risk-free rates of
//! periods t..n-1 and the final period's cash earns nothing. An explicit rate
//! series may therefore carry n-1 rates (exactly the reinvestment rates) or
//! n rates (aligned one per period; the last one is validated but unused).

use crate::error::{Error, Result};
use crate::series::{Convention, ReturnSeries};

/// A per-period risk-free rate path.
#[derive(Debug, Clone, PartialEq)]
pub enum RatePath {
    /// One net rate per period, aligned with the strategy's return periods.
    Explicit(Vec<f64>),
    /// A constant annual rate, divided evenly across periods within the year.
    Constant { annual: f64, periods_per_year: u32 },
}

impl RatePath {
    /// Constant-rate constructor; `periods_per_year` is typically 12.
    pub fn constant_annual(annual: f64, periods_per_year: u32) -> Self {
        RatePath::Constant {
            annual,
            periods_per_year,
        }
    }

    /// The per-period rate of a constant path.
    pub fn per_period(annual: f64, periods_per_year: u32) -> f64 {
        annual / periods_per_year as f64
    }

    /// Materialize the n-1 reinvestment rates for a strategy with n return
    /// periods (see the module docs for the alignment convention).
    fn reinvestment_rates(&self, n_periods: usize) -> Result<Vec<f64>> {
        if n_periods == 0 {
            return Err(Error::InsufficientData { needed: 1, got: 0 });
        }
        let rates = match self {
            RatePath::Constant {
                annual,
                periods_per_year,
            } => {
                if *periods_per_year == 0 {
                    return Err(Error::domain("periods_per_year must be positive"));
                }
                vec![annual / *periods_per_year as f64; n_periods - 1]
            }
            RatePath::Explicit(r) => {
                if r.len() == n_periods {
                    r[..n_periods - 1].to_vec()
                } else if r.len() == n_periods - 1 {
                    r.clone()
                } else {
                    return Err(Error::Shape {
                        what: "explicit rate series (need n or n-1 rates for n periods)",
                        expected: n_periods,
                        got: r.len(),
                    });
                }
            }
        };
        for (i, r) in rates.iter().enumerate() {
            if !r.is_finite() || *r <= -1.0 {
                return Err(Error::domain(format!(
                    "rate at index {i} must be finite and exceed -1, got {r}"
                )));
            }
        }
        Ok(rates)
    }
}

/// Cash-ledger outcome of a periodically rebalanced position.
#[derive(Debug, Clone, PartialEq)]
pub struct LedgerResult {
    /// Position capital plus compounded cash.
    pub terminal_total: f64,
    /// The cash swept at the end of each period (before reinvestment).
    pub per_period_cash: Vec<f64>,
    /// Sum of swept cash after reinvestment at the rate path.
    pub cash_compounded: f64,
    /// Plain sum of swept cash with no reinvestment.
    pub cash_simple_sum: f64,
    /// The capital parked in the position (restored every period).
    pub position_value: f64,
}

/// Terminal value of buy-and-hold: s0 times the product of gross returns.
pub fn bh_terminal(s0: f64, returns: &ReturnSeries) -> Result<f64> {
    check_capital(s0)?;
    let gross = returns.convert(Convention::Gross)?;
    Ok(s0 * gross.values().iter().product::<f64>())
}

/// Periodic rebalancing with the swept cash held flat (no interest).
pub fn pr_terminal_flat(s0: f64, net_returns: &[f64]) -> Result<LedgerResult> {
    check_capital(s0)?;
    let flows = cash_flows(s0, net_returns)?;
    let sum: f64 = flows.iter().sum();
    Ok(LedgerResult {
        terminal_total: s0 + sum,
        per_period_cash: flows,
        cash_compounded: sum,
        cash_simple_sum: sum,
        position_value: s0,
    })
}

/// Periodic rebalancing with the swept cash reinvested at the rate path.
pub fn pr_terminal_compounded(
    s0: f64,
    net_returns: &[f64],
    rates: &RatePath,
) -> Result<LedgerResult> {
    check_capital(s0)?;
    let flows = cash_flows(s0, net_returns)?;
    let reinvest = rates.reinvestment_rates(flows.len())?;
    let compounded = compound_flows(&flows, &reinvest);
    Ok(LedgerResult {
        terminal_total: s0 + compounded,
        cash_simple_sum: flows.iter().sum(),
        per_period_cash: flows,
        cash_compounded: compounded,
        position_value: s0,
    })
}

/// Closed-form ledger for a constant per-period net mean on fixed capital:
/// every period sweeps s0 * mean_net into cash, reinvested at the rate path.
///
/// Shares the compounding routine with [`pr_terminal_compounded`], so feeding
/// that function a constant return path equal to `mean_net` produces exactly
/// the same cash value, bit for bit.
pub fn mean_on_fixed_capital(
    s0: f64,
    mean_net: f64,
    n_periods: usize,
    rates: &RatePath,
) -> Result<f64> {
    check_capital(s0)?;
    Convention::Net.check(mean_net)?;
    if n_periods == 0 {
        return Err(Error::InsufficientData { needed: 1, got: 0 });
    }
    let flows = vec![s0 * mean_net; n_periods];
    let reinvest = rates.reinvestment_rates(n_periods)?;
    Ok(compound_flows(&flows, &reinvest))
}

fn check_capital(s0: f64) -> Result<()> {
    if !s0.is_finite() || s0 <= 0.0 {
        return Err(Error::domain(format!(
            "capital must be positive and finite, got {s0}"
        )));
    }
    Ok(())
}

fn cash_flows(s0: f64, net_returns: &[f64]) -> Result<Vec<f64>> {
    if net_returns.is_empty() {
        return Err(Error::InsufficientData { needed: 1, got: 0 });
    }
    for r in net_returns {
        Convention::Net.check(*r)?;
    }
    Ok(net_returns.iter().map(|r| s0 * r).collect())
}

/// Sum of flows[i] * prod(1 + reinvest[i..]) with the final flow earning
/// nothing. Runs back-to-front with a running suffix product.
fn compound_flows(flows: &[f64], reinvest: &[f64]) -> f64 {
    debug_assert_eq!(reinvest.len() + 1, flows.len());
    let mut factor = 1.0;
    let mut total = 0.0;
    for i in (0..flows.len()).rev() {
        total += flows[i] * factor;
        if i > 0 {
            factor *= 1.0 + reinvest[i - 1];
        }
    }
    total
}
