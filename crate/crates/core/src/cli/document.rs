//! Serialized form of an exact series.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_algebra::Rat;
use crate::power_series::Series;

/// A truncated series with coefficients as fraction strings.
///
/// `precision` is the last known exponent, so the coefficient list runs from
/// `valuation` to `precision` inclusive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesDocument {
    pub variable: String,
    pub valuation: i64,
    pub coefficients: Vec<String>,
    pub precision: i64,
    pub meta: Vec<String>,
}

impl SeriesDocument {
    pub fn from_series(s: &Series<Rat>, meta: Vec<String>) -> Result<SeriesDocument> {
        if s.is_exact() {
            return Err(Error::NeedsPrecision);
        }
        let last = s.prec() - 1;
        let val = s.val().min(last + 1);
        let coefficients = s.coeff_range(val, last + 1)?.iter().map(|c| c.to_string()).collect();
        Ok(SeriesDocument {
            variable: s.var().to_string(),
            valuation: val,
            coefficients,
            precision: last,
            meta,
        })
    }

    pub fn to_series(&self) -> Result<Series<Rat>> {
        let coeffs = self
            .coefficients
            .iter()
            .map(|c| Rat::from_str(c))
            .collect::<Result<Vec<_>>>()?;
        if coeffs.len() as i64 != self.precision - self.valuation + 1 {
            return Err(Error::Parse("coefficient count does not match the precision".into()));
        }
        Ok(Series::from_coeffs(&self.variable, self.valuation, coeffs, self.precision + 1))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json(s: &str) -> Result<SeriesDocument> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Rows `exponent,coefficient`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("exponent,coefficient\n");
        for (i, c) in self.coefficients.iter().enumerate() {
            out.push_str(&format!("{},{}\n", self.valuation + i as i64, c));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn layout() {
        let s = Series::from_coeffs("q", -1, vec![Rat::new(1, 2), Rat::int(0), Rat::int(-3)], 3);
        let d = SeriesDocument::from_series(&s, vec!["test".into()]).unwrap();
        assert_eq!(d.coefficients, vec!["1/2", "0", "-3", "0"]);
        assert_eq!(d.valuation, -1);
        assert_eq!(d.precision, 2);
        assert_eq!(d.to_series().unwrap(), s);
        assert!(SeriesDocument::from_series(&Series::<Rat>::one("q"), vec![]).is_err());
        assert_eq!(d.to_csv(), "exponent,coefficient\n-1,1/2\n0,0\n1,-3\n2,0\n");
    }

    #[test]
    fn zero_series() {
        let z = Series::<Rat>::zero("q", 3);
        let d = SeriesDocument::from_series(&z, vec![]).unwrap();
        assert_eq!(d.to_series().unwrap(), z);
    }

    proptest! {
        #[test]
        fn json_round_trip(
            val in -3i64..3,
            nums in proptest::collection::vec((-50i64..50, 1i64..20), 1..8),
        ) {
            let coeffs: Vec<Rat> = nums.iter().map(|&(a, b)| Rat::new(a, b)).collect();
            let prec = val + coeffs.len() as i64;
            let s = Series::from_coeffs("q", val, coeffs, prec);
            let d = SeriesDocument::from_series(&s, vec!["meta".into()]).unwrap();
            let back = SeriesDocument::from_json(&d.to_json()).unwrap();
            prop_assert_eq!(&back, &d);
            prop_assert_eq!(back.to_series().unwrap(), s);
        }
    }
}
