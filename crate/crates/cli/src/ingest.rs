//! File-level ingestion: thin wrappers over the library's CSV parsers that
//! attach the file path to every error and describe what was loaded.

use std::fs;
use std::path::Path;

use retcalc::fixtures::{price_series_from_csv_str, rates_from_csv_str};
use retcalc::PriceSeries;

use crate::CliError;

/// Load a price CSV (header `date,close`, ISO-8601 dates, positive closes).
pub fn load_prices(path: &Path) -> Result<PriceSeries, CliError> {
    let text = read(path)?;
    price_series_from_csv_str(&text)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Load a rate CSV (header `date,rate`, monthly net decimal rates).
pub fn load_rates(path: &Path) -> Result<Vec<f64>, CliError> {
    let text = read(path)?;
    rates_from_csv_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Row count and date span of a loaded series, for report headers.
pub fn describe(series: &PriceSeries) -> (usize, String) {
    let dates = series.dates();
    let span = match (dates.first(), dates.last()) {
        (Some(a), Some(b)) => format!("{a} to {b}"),
        _ => "empty".to_string(),
    };
    (series.len(), span)
}
