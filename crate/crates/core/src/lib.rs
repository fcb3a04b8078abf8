//! Return-convention calculus for time-series asset pricing.
//!
//! This crate implements the arithmetic that separates return conventions —
//! gross, net, and log — and follows the consequences through portfolio
//! accounting: geometric versus arithmetic means, buy-and-hold versus
//! periodically rebalanced value processes, long-short portfolios in both
//! rebalanced and buy-and-hold form, OLS alphas and Sharpe ratios computed
//! under each convention, a seeded Monte Carlo experiment measuring how
//! often the net-return convention manufactures significant alphas, and the
//! capital-share arithmetic of size/value factor portfolios.
//!
//! The companion binary crate exposes each piece as a CLI subcommand and
//! replays the embedded reference tables.

pub mod econometrics;
pub mod error;
pub mod fixtures;
pub mod long_short;
pub mod market_share;
pub mod mc_experiments;
pub mod return_calculus;
pub mod series;
pub mod stats;
pub mod value_process;

pub use error::{Error, Result};
pub use series::{Convention, PriceSeries, ReturnSeries};
