//! Embedded data fixtures: the worked two-period long-short scenarios, the
//! ten-year two-leg simulation panels, the 120-month pathological price
//! pair, the size/value market snapshots, and two synthetic decade-long
//! market factor series with fixed sample moments.
//!
//! All tabular fixtures live as CSV under `fixtures/` and are embedded at
//! build time; this module parses them once on first access. The CSV
//! parsers here are also the ingestion path for user-supplied files of the
//! same shape, so their errors carry line numbers.

use crate::error::{Error, Result};
use crate::market_share::MarketSnapshot;
use crate::series::PriceSeries;
use chrono::NaiveDate;
use std::sync::LazyLock;

/// A two-period long/short scenario: three values per leg.
#[derive(Debug, Clone, PartialEq)]
pub struct Table2Panel {
    pub label: &'static str,
    pub long: [f64; 3],
    pub short: [f64; 3],
}

/// The three worked scenarios: flat, winning and losing buy-and-hold
/// long-short outcomes over two periods.
pub const TABLE2_PANELS: [Table2Panel; 3] = [
    Table2Panel {
        label: "A. No-Gain for BHLS",
        long: [100.0, 150.0, 100.0],
        short: [100.0, 80.0, 100.0],
    },
    Table2Panel {
        label: "B. Gain for BHLS",
        long: [100.0, 90.0, 115.0],
        short: [100.0, 10.0, 70.0],
    },
    Table2Panel {
        label: "C. Loss for BHLS",
        long: [100.0, 10.0, 70.0],
        short: [100.0, 40.0, 80.0],
    },
];

/// A yearly two-leg fixture: a risky leg and a risk-free leg.
#[derive(Debug, Clone, PartialEq)]
pub struct LegFixture {
    pub years: Vec<i32>,
    pub risky: Vec<f64>,
    pub riskfree: Vec<f64>,
}

/// The paired 120-month price series that end near each other's mirror
/// image: `up` drifts upward with calm months, `down` collapses early and
/// then recovers violently.
#[derive(Debug, Clone, PartialEq)]
pub struct PathologicalFixture {
    pub months: Vec<u32>,
    pub up: Vec<f64>,
    pub down: Vec<f64>,
}

fn parse_leg_fixture(text: &str) -> Result<LegFixture> {
    let mut years = Vec::new();
    let mut risky = Vec::new();
    let mut riskfree = Vec::new();
    for (record, line) in csv_records(text, &["year", "risky", "riskfree"])? {
        years.push(parse_field::<i32>(&record, 0, "year", line)?);
        risky.push(parse_field::<f64>(&record, 1, "risky", line)?);
        riskfree.push(parse_field::<f64>(&record, 2, "riskfree", line)?);
    }
    Ok(LegFixture {
        years,
        risky,
        riskfree,
    })
}

fn parse_pathological(text: &str) -> Result<PathologicalFixture> {
    let mut months = Vec::new();
    let mut up = Vec::new();
    let mut down = Vec::new();
    for (record, line) in csv_records(text, &["month", "up", "down"])? {
        months.push(parse_field::<u32>(&record, 0, "month", line)?);
        up.push(parse_field::<f64>(&record, 1, "up", line)?);
        down.push(parse_field::<f64>(&record, 2, "down", line)?);
    }
    Ok(PathologicalFixture { months, up, down })
}

/// Parse a price CSV with header `date,close` (ISO-8601 dates, positive
/// decimal closes) into a validated [`PriceSeries`]. Errors name the
/// offending line.
pub fn price_series_from_csv_str(text: &str) -> Result<PriceSeries> {
    let mut dates = Vec::new();
    let mut values = Vec::new();
    for (record, line) in csv_records(text, &["date", "close"])? {
        dates.push(parse_date(&record, 0, line)?);
        let close = parse_field::<f64>(&record, 1, "close", line)?;
        if close <= 0.0 {
            return Err(Error::domain(format!(
                "line {line}: close must be positive, got {close}"
            )));
        }
        values.push(close);
    }
    PriceSeries::new(dates, values)
}

/// Parse a rate CSV with header `date,rate` (monthly net decimal rates)
/// into the per-period rate vector. Dates must be strictly increasing.
pub fn rates_from_csv_str(text: &str) -> Result<Vec<f64>> {
    let mut dates: Vec<NaiveDate> = Vec::new();
    let mut rates = Vec::new();
    for (record, line) in csv_records(text, &["date", "rate"])? {
        let date = parse_date(&record, 0, line)?;
        if let Some(prev) = dates.last() {
            if date <= *prev {
                return Err(Error::domain(format!(
                    "line {line}: dates must be strictly increasing ({prev} then {date})"
                )));
            }
        }
        dates.push(date);
        rates.push(parse_field::<f64>(&record, 1, "rate", line)?);
    }
    Ok(rates)
}

/// Iterate CSV records after checking the exact expected header, yielding
/// each record with its 1-based line number in the file.
fn csv_records(
    text: &str,
    expected_header: &[&str],
) -> Result<Vec<(csv::StringRecord, usize)>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| Error::domain(format!("unreadable CSV header: {e}")))?;
    let got: Vec<&str> = headers.iter().collect();
    if got != expected_header {
        return Err(Error::domain(format!(
            "expected CSV header `{}`, got `{}`",
            expected_header.join(","),
            got.join(",")
        )));
    }
    let mut out = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let line = i + 2; // header occupies line 1
        let record = record.map_err(|e| Error::domain(format!("line {line}: {e}")))?;
        if record.len() != expected_header.len() {
            return Err(Error::domain(format!(
                "line {line}: expected {} fields, got {}",
                expected_header.len(),
                record.len()
            )));
        }
        out.push((record, line));
    }
    Ok(out)
}

fn parse_field<T: std::str::FromStr>(
    record: &csv::StringRecord,
    idx: usize,
    what: &str,
    line: usize,
) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    record
        .get(idx)
        .ok_or_else(|| Error::domain(format!("line {line}: missing {what}")))?
        .parse::<T>()
        .map_err(|e| Error::domain(format!("line {line}: bad {what}: {e}")))
}

fn parse_date(record: &csv::StringRecord, idx: usize, line: usize) -> Result<NaiveDate> {
    let raw = record
        .get(idx)
        .ok_or_else(|| Error::domain(format!("line {line}: missing date")))?;
    NaiveDate::parse_from_str(raw, "%Y-%m-%d")
        .map_err(|e| Error::domain(format!("line {line}: bad date `{raw}`: {e}")))
}

static TABLE3_A: LazyLock<LegFixture> = LazyLock::new(|| {
    parse_leg_fixture(include_str!("../fixtures/table3_panel_a.csv"))
        .expect("embedded fixture is valid")
});

static TABLE3_B: LazyLock<LegFixture> = LazyLock::new(|| {
    parse_leg_fixture(include_str!("../fixtures/table3_panel_b.csv"))
        .expect("embedded fixture is valid")
});

static TABLE8: LazyLock<PathologicalFixture> = LazyLock::new(|| {
    parse_pathological(include_str!("../fixtures/table8_pathological_prices.csv"))
        .expect("embedded fixture is valid")
});

static TABLE8_UP_SERIES: LazyLock<PriceSeries> = LazyLock::new(|| {
    PriceSeries::from_values(TABLE8.up.clone()).expect("embedded fixture is valid")
});

static TABLE8_DOWN_SERIES: LazyLock<PriceSeries> = LazyLock::new(|| {
    PriceSeries::from_values(TABLE8.down.clone()).expect("embedded fixture is valid")
});

static SNAPSHOT_1926: LazyLock<MarketSnapshot> = LazyLock::new(|| {
    MarketSnapshot::from_csv_str("1926", include_str!("../fixtures/snapshot_1926.csv"), 1.0)
        .expect("embedded fixture is valid")
});

static SNAPSHOT_1932: LazyLock<MarketSnapshot> = LazyLock::new(|| {
    MarketSnapshot::from_csv_str("1932", include_str!("../fixtures/snapshot_1932.csv"), 1.0)
        .expect("embedded fixture is valid")
});

// The 2020 table is quoted in millions; normalise to thousands so all three
// snapshots share one unit.
static SNAPSHOT_2020: LazyLock<MarketSnapshot> = LazyLock::new(|| {
    MarketSnapshot::from_csv_str(
        "2020",
        include_str!("../fixtures/snapshot_2020.csv"),
        1000.0,
    )
    .expect("embedded fixture is valid")
});

static MARKET_FACTOR_HIGH: LazyLock<PriceSeries> = LazyLock::new(|| {
    price_series_from_csv_str(include_str!("../fixtures/market_factor_high.csv"))
        .expect("embedded fixture is valid")
});

static MARKET_FACTOR_LOW: LazyLock<PriceSeries> = LazyLock::new(|| {
    price_series_from_csv_str(include_str!("../fixtures/market_factor_low.csv"))
        .expect("embedded fixture is valid")
});

/// Ten-year two-leg panel with a strongly rising risky leg.
pub fn table3_panel_a() -> &'static LegFixture {
    &TABLE3_A
}

/// Ten-year two-leg panel whose risky leg ends below the risk-free leg.
pub fn table3_panel_b() -> &'static LegFixture {
    &TABLE3_B
}

/// The 120-month pathological price pair (months 0..=120).
pub fn table8() -> &'static PathologicalFixture {
    &TABLE8
}

/// The upward pathological path as a monthly price series.
pub fn table8_up_series() -> &'static PriceSeries {
    &TABLE8_UP_SERIES
}

/// The collapsing/recovering pathological path as a monthly price series.
pub fn table8_down_series() -> &'static PriceSeries {
    &TABLE8_DOWN_SERIES
}

/// End-of-June 1926 size/value snapshot (thousands of dollars).
pub fn snapshot_1926() -> &'static MarketSnapshot {
    &SNAPSHOT_1926
}

/// End-of-June 1932 size/value snapshot (thousands of dollars).
pub fn snapshot_1932() -> &'static MarketSnapshot {
    &SNAPSHOT_1932
}

/// End-of-2020 size/value snapshot, normalised to thousands of dollars.
pub fn snapshot_2020() -> &'static MarketSnapshot {
    &SNAPSHOT_2020
}

/// Synthetic monthly market factor, 1990-01..2000-01: 121 prices whose net
/// returns have annualised sample mean 15.4% and volatility 13.3% exactly
/// (up to the 10-decimal price quantisation).
pub fn market_factor_high() -> &'static PriceSeries {
    &MARKET_FACTOR_HIGH
}

/// Synthetic monthly market factor, 2000-01..2010-01: annualised sample
/// mean -1.3% and volatility 16.4%.
pub fn market_factor_low() -> &'static PriceSeries {
    &MARKET_FACTOR_LOW
}
