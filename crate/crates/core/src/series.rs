//! Core series types: dated price series and convention-tagged return series.
//!
//! Three return conventions are used throughout: gross (price relative
//! S_t/S_{t-1}), net (gross - 1), and log (ln of gross). Every return series
//! carries its convention so that means, compounding, and risk statistics can
//! never silently mix conventions.

use chrono::NaiveDate;

use crate::error::{Error, Result};

/// Return convention tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Convention {
    /// Price relative S_t / S_{t-1}; must be positive.
    Gross,
    /// S_t / S_{t-1} - 1; must exceed -1.
    Net,
    /// ln(S_t / S_{t-1}); must be finite.
    Log,
}

impl Convention {
    /// Human-readable lowercase name, used in report labels.
    pub fn name(self) -> &'static str {
        match self {
            Convention::Gross => "gross",
            Convention::Net => "net",
            Convention::Log => "log",
        }
    }

    /// Validate a single return value against this convention's domain.
    pub fn check(self, x: f64) -> Result<f64> {
        if !x.is_finite() {
            return Err(Error::domain(format!("{} return must be finite, got {x}", self.name())));
        }
        match self {
            Convention::Gross if x <= 0.0 => Err(Error::domain(format!(
                "gross return must be positive, got {x}"
            ))),
            Convention::Net if x <= -1.0 => Err(Error::domain(format!(
                "net return must exceed -1, got {x}"
            ))),
            _ => Ok(x),
        }
    }
}

/// Convert one return value between conventions.
///
/// Conversions go through numerically careful primitives (`ln_1p`, `exp_m1`)
/// so round-trips hold to about 1e-12 even near the -1 boundary.
pub fn convert_value(x: f64, from: Convention, to: Convention) -> Result<f64> {
    let x = from.check(x)?;
    if from == to {
        return Ok(x);
    }
    // Normalise through the net representation.
    let net = match from {
        Convention::Net => x,
        Convention::Gross => x - 1.0,
        Convention::Log => x.exp_m1(),
    };
    Ok(match to {
        Convention::Net => net,
        Convention::Gross => net + 1.0,
        Convention::Log => net.ln_1p(),
    })
}

/// A dated price series: strictly increasing dates, strictly positive values.
#[derive(Debug, Clone, PartialEq)]
pub struct PriceSeries {
    dates: Vec<NaiveDate>,
    values: Vec<f64>,
}

impl PriceSeries {
    /// Build a validated series. Dates must strictly increase and values must
    /// be positive and finite; at least one observation is required.
    pub fn new(dates: Vec<NaiveDate>, values: Vec<f64>) -> Result<Self> {
        if dates.len() != values.len() {
            return Err(Error::Shape {
                what: "price series dates vs values",
                expected: dates.len(),
                got: values.len(),
            });
        }
        if values.is_empty() {
            return Err(Error::InsufficientData { needed: 1, got: 0 });
        }
        for (i, v) in values.iter().enumerate() {
            if !v.is_finite() || *v <= 0.0 {
                return Err(Error::domain(format!(
                    "price at index {i} must be positive and finite, got {v}"
                )));
            }
        }
        for w in dates.windows(2) {
            if w[1] <= w[0] {
                return Err(Error::domain(format!(
                    "dates must strictly increase, got {} then {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(PriceSeries { dates, values })
    }

    /// Build a series from values alone, assigning synthetic consecutive
    /// dates. Useful for undated fixture data.
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        let start = NaiveDate::from_ymd_opt(2000, 1, 1).expect("valid date");
        let dates = (0..values.len() as i64)
            .map(|i| start + chrono::Duration::days(i))
            .collect();
        PriceSeries::new(dates, values)
    }

    pub fn dates(&self) -> &[NaiveDate] {
        &self.dates
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn first(&self) -> f64 {
        self.values[0]
    }

    pub fn last(&self) -> f64 {
        *self.values.last().expect("non-empty by construction")
    }

    /// Per-period returns under the requested convention. The result has one
    /// fewer observation than the price series and keeps the dates of each
    /// period's end.
    pub fn returns(&self, convention: Convention) -> Result<ReturnSeries> {
        let values = crate::return_calculus::returns_from_values(&self.values, convention)?;
        Ok(ReturnSeries {
            convention,
            values,
            period: None,
        })
    }
}

/// A return series tagged with its convention and an optional period label
/// such as "monthly".
#[derive(Debug, Clone, PartialEq)]
pub struct ReturnSeries {
    convention: Convention,
    values: Vec<f64>,
    period: Option<String>,
}

impl ReturnSeries {
    /// Build a validated return series; every value must lie in the
    /// convention's domain.
    pub fn new(convention: Convention, values: Vec<f64>) -> Result<Self> {
        for v in &values {
            convention.check(*v)?;
        }
        Ok(ReturnSeries {
            convention,
            values,
            period: None,
        })
    }

    /// Attach a period label (e.g. "monthly") for reporting.
    pub fn with_period(mut self, period: impl Into<String>) -> Self {
        self.period = Some(period.into());
        self
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn period(&self) -> Option<&str> {
        self.period.as_deref()
    }

    /// Convert every value to another convention, preserving the period tag.
    pub fn convert(&self, to: Convention) -> Result<ReturnSeries> {
        let values = self
            .values
            .iter()
            .map(|x| convert_value(*x, self.convention, to))
            .collect::<Result<Vec<_>>>()?;
        Ok(ReturnSeries {
            convention: to,
            values,
            period: self.period.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn dates(n: usize) -> Vec<NaiveDate> {
        let start = NaiveDate::from_ymd_opt(2020, 1, 1).unwrap();
        (0..n as i64)
            .map(|i| start + chrono::Duration::days(i))
            .collect()
    }

    #[test]
    fn conversions_match_hand_values() {
        // gross 1.10 <-> net 0.10 <-> log ln(1.1)
        let log = convert_value(0.10, Convention::Net, Convention::Log).unwrap();
        assert_relative_eq!(log, 1.1f64.ln(), max_relative = 1e-15);
        let gross = convert_value(log, Convention::Log, Convention::Gross).unwrap();
        assert_relative_eq!(gross, 1.10, max_relative = 1e-14);
    }

    #[test]
    fn net_at_minus_one_is_rejected() {
        assert!(matches!(
            convert_value(-1.0, Convention::Net, Convention::Log),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn non_positive_price_is_rejected() {
        assert!(matches!(
            PriceSeries::new(dates(2), vec![100.0, 0.0]),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn non_increasing_dates_are_rejected() {
        let mut d = dates(3);
        d[2] = d[1];
        assert!(matches!(
            PriceSeries::new(d, vec![1.0, 2.0, 3.0]),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn returns_need_two_points() {
        let s = PriceSeries::new(dates(1), vec![100.0]).unwrap();
        assert_eq!(
            s.returns(Convention::Net),
            Err(Error::InsufficientData { needed: 2, got: 1 })
        );
    }

    #[test]
    fn convention_tag_survives_conversion() {
        let s = ReturnSeries::new(Convention::Net, vec![0.5, -0.2])
            .unwrap()
            .with_period("monthly");
        let l = s.convert(Convention::Log).unwrap();
        assert_eq!(l.convention(), Convention::Log);
        assert_eq!(l.period(), Some("monthly"));
        assert_relative_eq!(l.values()[0], 1.5f64.ln(), max_relative = 1e-15);
    }

    proptest! {
        // Round-trips hold to 1e-12 (relative for large values) across the
        // whole net domain, including close to the -1 boundary.
        #[test]
        fn net_log_round_trip(x in -0.999999f64..1.0e6) {
            let log = convert_value(x, Convention::Net, Convention::Log).unwrap();
            let back = convert_value(log, Convention::Log, Convention::Net).unwrap();
            prop_assert!((back - x).abs() <= 1e-12 * x.abs().max(1.0));
        }

        #[test]
        fn gross_net_round_trip(g in 1.0e-6f64..1.0e6) {
            let net = convert_value(g, Convention::Gross, Convention::Net).unwrap();
            let back = convert_value(net, Convention::Net, Convention::Gross).unwrap();
            prop_assert!((back - g).abs() <= 1e-12 * g.abs().max(1.0));
        }
    }
}
