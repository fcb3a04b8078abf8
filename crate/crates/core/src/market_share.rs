//! Size/value portfolio snapshots and the capital-share arithmetic that
//! shows how small the investable base of the classic size and value
//! factors is relative to the whole market.
//!
//! A snapshot is a dated cross-section of portfolio capitalisations
//! (Small/Big, Low/Medium/High, and the six intersections S/L..B/H) plus the
//! market total. The factor strategies are assumed to deploy one common
//! capital amount per constituent portfolio: six portfolios for the
//! small-minus-big factor, four for the high-minus-low factor, with the
//! common capital set to half the smallest corner portfolio so that both
//! sides of every spread can be funded.

use crate::error::{Error, Result};
use std::collections::BTreeMap;

/// Name of the whole-market row present in every snapshot.
pub const MARKET: &str = "Market";

/// The four corner portfolios that bound the common capital.
pub const CORNER_PORTFOLIOS: [&str; 4] = ["S/L", "S/H", "B/L", "B/H"];

/// A dated cross-section of portfolio capitalisations.
///
/// Capitalisations are stored in a single currency unit chosen by the
/// caller (the embedded fixtures normalise everything to thousands). The
/// `Market` row is mandatory; every other cap must not exceed it, and when
/// both `Small` and `Big` are present they must add up to the market total
/// within data rounding (relative 1e-5).
#[derive(Debug, Clone, PartialEq)]
pub struct MarketSnapshot {
    label: String,
    caps: BTreeMap<String, f64>,
    firms: BTreeMap<String, u32>,
    min_sizes: BTreeMap<String, f64>,
    max_sizes: BTreeMap<String, f64>,
}

impl MarketSnapshot {
    pub fn new(
        label: impl Into<String>,
        caps: BTreeMap<String, f64>,
        firms: BTreeMap<String, u32>,
    ) -> Result<Self> {
        let snapshot = MarketSnapshot {
            label: label.into(),
            caps,
            firms,
            min_sizes: BTreeMap::new(),
            max_sizes: BTreeMap::new(),
        };
        snapshot.validate()?;
        Ok(snapshot)
    }

    fn validate(&self) -> Result<()> {
        let market = *self
            .caps
            .get(MARKET)
            .ok_or_else(|| Error::UnknownPortfolio(MARKET.to_string()))?;
        if !market.is_finite() || market <= 0.0 {
            return Err(Error::domain(format!(
                "market cap must be positive and finite, got {market}"
            )));
        }
        for (name, cap) in &self.caps {
            if !cap.is_finite() || *cap <= 0.0 {
                return Err(Error::domain(format!(
                    "capitalisation of {name} must be positive and finite, got {cap}"
                )));
            }
            if *cap > market * (1.0 + 1e-9) {
                return Err(Error::domain(format!(
                    "capitalisation of {name} ({cap}) exceeds the market total ({market})"
                )));
            }
        }
        if let (Some(small), Some(big)) = (self.caps.get("Small"), self.caps.get("Big")) {
            let gap = (small + big - market).abs();
            if gap > 1e-5 * market {
                return Err(Error::domain(format!(
                    "Small + Big ({}) does not add up to the market total ({market})",
                    small + big
                )));
            }
        }
        Ok(())
    }

    /// Parse a snapshot from CSV text with header `name,firms,min,max,cap`.
    ///
    /// All monetary columns (min, max, cap) are multiplied by
    /// `unit_multiplier`, which converts the file's currency unit into the
    /// caller's working unit (e.g. 1000.0 for a file quoted in millions
    /// when working in thousands).
    pub fn from_csv_str(
        label: impl Into<String>,
        csv_text: &str,
        unit_multiplier: f64,
    ) -> Result<Self> {
        if !unit_multiplier.is_finite() || unit_multiplier <= 0.0 {
            return Err(Error::domain(format!(
                "unit multiplier must be positive and finite, got {unit_multiplier}"
            )));
        }
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(csv_text.as_bytes());
        let headers = reader
            .headers()
            .map_err(|e| Error::domain(format!("unreadable snapshot header: {e}")))?
            .clone();
        for required in ["name", "firms", "min", "max", "cap"] {
            if !headers.iter().any(|h| h == required) {
                return Err(Error::domain(format!(
                    "snapshot CSV is missing the `{required}` column"
                )));
            }
        }
        let col = |name: &str| headers.iter().position(|h| h == name).expect("checked");
        let (c_name, c_firms, c_min, c_max, c_cap) =
            (col("name"), col("firms"), col("min"), col("max"), col("cap"));

        let mut snapshot = MarketSnapshot {
            label: label.into(),
            caps: BTreeMap::new(),
            firms: BTreeMap::new(),
            min_sizes: BTreeMap::new(),
            max_sizes: BTreeMap::new(),
        };
        for (i, record) in reader.records().enumerate() {
            let line = i + 2; // header is line 1
            let record =
                record.map_err(|e| Error::domain(format!("snapshot line {line}: {e}")))?;
            let field = |idx: usize| -> Result<&str> {
                record
                    .get(idx)
                    .ok_or_else(|| Error::domain(format!("snapshot line {line}: short record")))
            };
            let parse = |idx: usize, what: &str| -> Result<f64> {
                field(idx)?.parse::<f64>().map_err(|e| {
                    Error::domain(format!("snapshot line {line}: bad {what}: {e}"))
                })
            };
            let name = field(c_name)?.to_string();
            let firms = field(c_firms)?
                .parse::<u32>()
                .map_err(|e| Error::domain(format!("snapshot line {line}: bad firms: {e}")))?;
            snapshot.firms.insert(name.clone(), firms);
            snapshot
                .min_sizes
                .insert(name.clone(), parse(c_min, "min")? * unit_multiplier);
            snapshot
                .max_sizes
                .insert(name.clone(), parse(c_max, "max")? * unit_multiplier);
            snapshot
                .caps
                .insert(name, parse(c_cap, "cap")? * unit_multiplier);
        }
        snapshot.validate()?;
        Ok(snapshot)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn market_cap(&self) -> f64 {
        self.caps[MARKET]
    }

    pub fn cap(&self, portfolio: &str) -> Result<f64> {
        self.caps
            .get(portfolio)
            .copied()
            .ok_or_else(|| Error::UnknownPortfolio(portfolio.to_string()))
    }

    pub fn firm_count(&self, portfolio: &str) -> Result<u32> {
        self.firms
            .get(portfolio)
            .copied()
            .ok_or_else(|| Error::UnknownPortfolio(portfolio.to_string()))
    }

    pub fn min_size(&self, portfolio: &str) -> Result<f64> {
        self.min_sizes
            .get(portfolio)
            .copied()
            .ok_or_else(|| Error::UnknownPortfolio(portfolio.to_string()))
    }

    pub fn max_size(&self, portfolio: &str) -> Result<f64> {
        self.max_sizes
            .get(portfolio)
            .copied()
            .ok_or_else(|| Error::UnknownPortfolio(portfolio.to_string()))
    }

    /// Portfolio names in deterministic (sorted) order, market row included.
    pub fn portfolio_names(&self) -> impl Iterator<Item = &str> {
        self.caps.keys().map(|s| s.as_str())
    }
}

/// Fraction of the whole market held in one portfolio.
pub fn share_of_market(snapshot: &MarketSnapshot, portfolio: &str) -> Result<f64> {
    Ok(snapshot.cap(portfolio)? / snapshot.market_cap())
}

/// The common capital both factor strategies can deploy per constituent
/// portfolio: half the smallest of the four corner portfolios.
pub fn common_capital(snapshot: &MarketSnapshot) -> Result<f64> {
    let mut smallest = f64::INFINITY;
    for name in CORNER_PORTFOLIOS {
        smallest = smallest.min(snapshot.cap(name)?);
    }
    Ok(smallest / 2.0)
}

/// Capital deployed by the size and value factors funded at `capital` per
/// constituent portfolio, expressed as shares of a reference market.
#[derive(Debug, Clone, PartialEq)]
pub struct FactorCapitalReport {
    pub snapshot_label: String,
    pub reference_label: String,
    /// Common capital per constituent portfolio.
    pub capital: f64,
    /// Six constituent portfolios.
    pub smb_capital: f64,
    /// Four constituent portfolios.
    pub hml_capital: f64,
    pub smb_share: f64,
    pub hml_share: f64,
    /// (smb_capital + hml_capital) / reference market cap.
    pub combined_share: f64,
    /// Snapshot market cap over reference market cap.
    pub market_cap_ratio: f64,
}

/// Express the factor capital implied by `capital` as shares of the
/// reference snapshot's market. Snapshot and reference may be the same
/// cross-section (shares of the own market) or different dates (how much of
/// a later market the earlier factor capital would represent).
pub fn factor_capital_share(
    snapshot: &MarketSnapshot,
    reference: &MarketSnapshot,
    capital: f64,
) -> Result<FactorCapitalReport> {
    if !capital.is_finite() || capital <= 0.0 {
        return Err(Error::domain(format!(
            "capital must be positive and finite, got {capital}"
        )));
    }
    let smb_capital = 6.0 * capital;
    let hml_capital = 4.0 * capital;
    let reference_cap = reference.market_cap();
    Ok(FactorCapitalReport {
        snapshot_label: snapshot.label().to_string(),
        reference_label: reference.label().to_string(),
        capital,
        smb_capital,
        hml_capital,
        smb_share: smb_capital / reference_cap,
        hml_share: hml_capital / reference_cap,
        combined_share: (smb_capital + hml_capital) / reference_cap,
        market_cap_ratio: snapshot.market_cap() / reference_cap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn toy_snapshot(scale: f64) -> MarketSnapshot {
        let caps = BTreeMap::from([
            (MARKET.to_string(), 1000.0 * scale),
            ("Small".to_string(), 100.0 * scale),
            ("Big".to_string(), 900.0 * scale),
            ("S/L".to_string(), 40.0 * scale),
            ("S/H".to_string(), 30.0 * scale),
            ("B/L".to_string(), 500.0 * scale),
            ("B/H".to_string(), 80.0 * scale),
        ]);
        let firms = BTreeMap::from([(MARKET.to_string(), 50u32)]);
        MarketSnapshot::new("toy", caps, firms).unwrap()
    }

    #[test]
    fn market_share_of_market_is_one() {
        let snap = toy_snapshot(1.0);
        assert_eq!(share_of_market(&snap, MARKET).unwrap(), 1.0);
        assert_relative_eq!(
            share_of_market(&snap, "Small").unwrap(),
            0.1,
            max_relative = 1e-14
        );
        assert!(matches!(
            share_of_market(&snap, "Tiny"),
            Err(Error::UnknownPortfolio(_))
        ));
    }

    #[test]
    fn common_capital_is_half_the_smallest_corner() {
        let snap = toy_snapshot(1.0);
        assert_relative_eq!(common_capital(&snap).unwrap(), 15.0, max_relative = 1e-14);
        // all four corners equal to 2c -> capital c
        let caps = BTreeMap::from([
            (MARKET.to_string(), 100.0),
            ("S/L".to_string(), 8.0),
            ("S/H".to_string(), 8.0),
            ("B/L".to_string(), 8.0),
            ("B/H".to_string(), 8.0),
        ]);
        let snap = MarketSnapshot::new("equal", caps, BTreeMap::new()).unwrap();
        assert_relative_eq!(common_capital(&snap).unwrap(), 4.0, max_relative = 1e-14);
    }

    #[test]
    fn missing_corner_portfolio_is_reported_by_name() {
        let caps = BTreeMap::from([(MARKET.to_string(), 100.0), ("S/L".to_string(), 8.0)]);
        let snap = MarketSnapshot::new("partial", caps, BTreeMap::new()).unwrap();
        assert!(matches!(
            common_capital(&snap),
            Err(Error::UnknownPortfolio(name)) if name == "S/H"
        ));
    }

    #[test]
    fn factor_capital_share_uses_six_and_four_portfolios() {
        let snap = toy_snapshot(1.0);
        let report = factor_capital_share(&snap, &snap, 15.0).unwrap();
        assert_relative_eq!(report.smb_capital, 90.0, max_relative = 1e-14);
        assert_relative_eq!(report.hml_capital, 60.0, max_relative = 1e-14);
        assert_relative_eq!(report.smb_share, 0.09, max_relative = 1e-14);
        assert_relative_eq!(report.hml_share, 0.06, max_relative = 1e-14);
        assert_relative_eq!(report.combined_share, 0.15, max_relative = 1e-14);
        assert_relative_eq!(report.market_cap_ratio, 1.0, max_relative = 1e-14);
        assert!(factor_capital_share(&snap, &snap, 0.0).is_err());
    }

    #[test]
    fn validation_rejects_inconsistent_snapshots() {
        // portfolio bigger than the market
        let caps = BTreeMap::from([(MARKET.to_string(), 100.0), ("Big".to_string(), 200.0)]);
        assert!(MarketSnapshot::new("bad", caps, BTreeMap::new()).is_err());
        // Small + Big far from the market total
        let caps = BTreeMap::from([
            (MARKET.to_string(), 100.0),
            ("Small".to_string(), 10.0),
            ("Big".to_string(), 50.0),
        ]);
        assert!(MarketSnapshot::new("bad", caps, BTreeMap::new()).is_err());
        // missing market row
        let caps = BTreeMap::from([("Small".to_string(), 10.0)]);
        assert!(MarketSnapshot::new("bad", caps, BTreeMap::new()).is_err());
    }

    #[test]
    fn csv_round_trip_with_unit_conversion() {
        let text = "name,firms,min,max,cap\n\
                    Market,10,1,100,1000\n\
                    Small,5,1,10,100\n\
                    Big,5,11,100,900\n\
                    S/L,2,1,5,40\n\
                    S/H,2,1,5,30\n\
                    B/L,3,11,50,500\n\
                    B/H,3,11,50,80\n";
        let snap = MarketSnapshot::from_csv_str("csv", text, 1000.0).unwrap();
        assert_relative_eq!(snap.market_cap(), 1_000_000.0, max_relative = 1e-14);
        assert_relative_eq!(snap.cap("S/L").unwrap(), 40_000.0, max_relative = 1e-14);
        assert_eq!(snap.firm_count(MARKET).unwrap(), 10);
        assert_relative_eq!(snap.min_size(MARKET).unwrap(), 1000.0, max_relative = 1e-14);
        // shares are unchanged by the unit conversion
        let unscaled = MarketSnapshot::from_csv_str("csv", text, 1.0).unwrap();
        assert_relative_eq!(
            share_of_market(&snap, "Small").unwrap(),
            share_of_market(&unscaled, "Small").unwrap(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn csv_errors_name_the_line() {
        let text = "name,firms,min,max,cap\nMarket,10,1,100,oops\n";
        let err = MarketSnapshot::from_csv_str("csv", text, 1.0).unwrap_err();
        assert!(err.to_string().contains("line 2"), "got: {err}");
        let text = "name,firms,min,cap\nMarket,10,1,100\n";
        assert!(MarketSnapshot::from_csv_str("csv", text, 1.0).is_err());
    }

    proptest! {
        // Scaling every cap and the capital by one constant changes nothing.
        #[test]
        fn shares_are_unit_invariant(scale in 1e-3f64..1e6) {
            let a = toy_snapshot(1.0);
            let b = toy_snapshot(scale);
            for name in ["Small", "Big", "S/L", "B/H"] {
                let sa = share_of_market(&a, name).unwrap();
                let sb = share_of_market(&b, name).unwrap();
                prop_assert!((sa - sb).abs() <= 1e-12 * sa.abs());
            }
            let ca = common_capital(&a).unwrap();
            let cb = common_capital(&b).unwrap();
            let ra = factor_capital_share(&a, &a, ca).unwrap();
            let rb = factor_capital_share(&b, &b, cb).unwrap();
            prop_assert!((ra.smb_share - rb.smb_share).abs() <= 1e-12);
            prop_assert!((ra.hml_share - rb.hml_share).abs() <= 1e-12);
            prop_assert!((ra.combined_share - rb.combined_share).abs() <= 1e-12);
        }
    }
}
