//! Small descriptive-statistics helpers shared across the crate.
//!
//! All dispersion measures use the sample convention (divide by n-1).

use crate::error::{Error, Result};

/// Arithmetic mean. Errors on an empty slice rather than returning NaN.
pub fn mean(xs: &[f64]) -> Result<f64> {
    if xs.is_empty() {
        return Err(Error::InsufficientData { needed: 1, got: 0 });
    }
    Ok(xs.iter().sum::<f64>() / xs.len() as f64)
}

/// Sample variance (n-1 denominator). Needs at least two observations.
///
/// A series whose values are all bitwise equal has exactly zero variance;
/// without the short-circuit the mean can land one ulp off the common value
/// and report a spurious ~1e-34 dispersion, breaking degeneracy checks.
pub fn sample_variance(xs: &[f64]) -> Result<f64> {
    if xs.len() < 2 {
        return Err(Error::InsufficientData {
            needed: 2,
            got: xs.len(),
        });
    }
    if xs.windows(2).all(|w| w[0] == w[1]) {
        return Ok(0.0);
    }
    let m = mean(xs)?;
    let ss: f64 = xs.iter().map(|x| (x - m) * (x - m)).sum();
    Ok(ss / (xs.len() - 1) as f64)
}

/// Sample standard deviation (n-1 denominator).
pub fn sample_stdev(xs: &[f64]) -> Result<f64> {
    sample_variance(xs).map(f64::sqrt)
}

/// Sample covariance (n-1 denominator) of two equal-length slices.
pub fn sample_covariance(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(Error::Shape {
            what: "covariance inputs",
            expected: xs.len(),
            got: ys.len(),
        });
    }
    if xs.len() < 2 {
        return Err(Error::InsufficientData {
            needed: 2,
            got: xs.len(),
        });
    }
    let mx = mean(xs)?;
    let my = mean(ys)?;
    let s: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (x - mx) * (y - my))
        .sum();
    Ok(s / (xs.len() - 1) as f64)
}
