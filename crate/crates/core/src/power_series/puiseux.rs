//! Series in a root `s` of `q`, with cyclotomic coefficients.

use super::series::Series;
use crate::error::{Error, Result};
use crate::exact_algebra::{CycloNum, Rat, Ring};

/// A series in `s` where `s^ramification = scale·q`.
#[derive(Clone, Debug)]
pub struct PuiseuxSeries {
    pub base: Series<CycloNum>,
    pub ramification: u32,
    pub scale: Rat,
}

impl PuiseuxSeries {
    pub fn new(base: Series<CycloNum>, ramification: u32) -> PuiseuxSeries {
        PuiseuxSeries {
            base,
            ramification,
            scale: Rat::one(),
        }
    }

    /// Rewrite as a rational series in `q`. Every surviving exponent must be a
    /// multiple of the ramification and every coefficient must be rational.
    pub fn to_q_series(&self, var: &str) -> Result<Series<Rat>> {
        let n = self.ramification as i64;
        let dec = self.base.decimate(n)?;
        let mut out = Vec::new();
        let lo = dec.val();
        let mut sc = if lo >= 0 {
            self.scale.pow(lo)
        } else {
            self.scale.inv().unwrap().pow(-lo)
        };
        for (i, c) in dec.raw_coeffs().iter().enumerate() {
            let r = c.as_rational().ok_or_else(|| {
                Error::Rationality(format!(
                    "coefficient of s^{} is irrational: {c:?}",
                    n * (lo + i as i64)
                ))
            })?;
            out.push(r * &sc);
            sc = &sc * &self.scale;
        }
        Ok(Series::from_coeffs(var, lo, out, dec.prec()))
    }
}

impl Ring for PuiseuxSeries {
    fn zero() -> Self {
        PuiseuxSeries::new(Series::zero("s", super::EXACT), 1)
    }
    fn one() -> Self {
        PuiseuxSeries::new(Series::one("s"), 1)
    }
    fn is_zero(&self) -> bool {
        self.base.is_zero()
    }
    fn from_rat(r: &Rat) -> Self {
        PuiseuxSeries::new(Series::constant("s", CycloNum::from_rat(r)), 1)
    }
    fn add(&self, o: &Self) -> Self {
        self.with(o, self.base.add(&o.base))
    }
    fn sub(&self, o: &Self) -> Self {
        self.with(o, self.base.sub(&o.base))
    }
    fn mul(&self, o: &Self) -> Self {
        self.with(o, self.base.mul(&o.base))
    }
    fn neg(&self) -> Self {
        PuiseuxSeries {
            base: self.base.neg(),
            ..self.clone()
        }
    }
    fn scale(&self, r: &Rat) -> Self {
        PuiseuxSeries {
            base: self.base.scale(r),
            ..self.clone()
        }
    }
    fn inv(&self) -> Option<Self> {
        Some(PuiseuxSeries {
            base: self.base.inv().ok()?,
            ..self.clone()
        })
    }
}

impl PartialEq for PuiseuxSeries {
    fn eq(&self, o: &Self) -> bool {
        self.base == o.base
    }
}

impl PuiseuxSeries {
    fn with(&self, o: &Self, base: Series<CycloNum>) -> Self {
        let (ramification, scale) = if self.ramification >= o.ramification {
            (self.ramification, self.scale.clone())
        } else {
            (o.ramification, o.scale.clone())
        };
        PuiseuxSeries {
            base,
            ramification,
            scale,
        }
    }
}
