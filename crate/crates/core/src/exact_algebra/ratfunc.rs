//! Rational functions in one variable and their reconstruction from series.

use std::fmt;

use super::rat::Rat;
use super::upoly::UPoly;
use crate::error::{Error, Result};
use crate::power_series::Series;

/// `num/den` in lowest terms; the lowest nonzero coefficient of `den` is 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: UPoly,
    den: UPoly,
}

impl RatFunc {
    pub fn new(num: UPoly, den: UPoly) -> RatFunc {
        assert!(!den.is_zero(), "zero denominator");
        let g = num.gcd(&den);
        let (mut num, mut den) = if num.is_zero() {
            (UPoly::zero(), UPoly::one())
        } else {
            (num.divrem(&g).0, den.divrem(&g).0)
        };
        let low = den.coeff(den.low_degree().unwrap());
        let s = low.inv().unwrap();
        num = num.scale(&s);
        den = den.scale(&s);
        RatFunc { num, den }
    }

    /// Product of `factor^exponent` terms, each a polynomial with an integer exponent.
    pub fn from_factors(factors: &[(UPoly, i32)]) -> RatFunc {
        let mut num = UPoly::one();
        let mut den = UPoly::one();
        for (p, e) in factors {
            if *e >= 0 {
                num = num.mul(&p.pow(*e as u32));
            } else {
                den = den.mul(&p.pow(e.unsigned_abs()));
            }
        }
        RatFunc::new(num, den)
    }

    pub fn num(&self) -> &UPoly {
        &self.num
    }

    pub fn den(&self) -> &UPoly {
        &self.den
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn pow(&self, e: i32) -> RatFunc {
        let (n, d) = if e >= 0 {
            (self.num.pow(e as u32), self.den.pow(e as u32))
        } else {
            (self.den.pow(e.unsigned_abs()), self.num.pow(e.unsigned_abs()))
        };
        RatFunc::new(n, d)
    }

    /// Expansion as a Laurent series in `var` through order `order`.
    pub fn expand(&self, var: &str, order: i64) -> Result<Series<Rat>> {
        let low = self.den.low_degree().unwrap() as i64;
        let shifted = UPoly::new(self.den.coeffs()[low as usize..].to_vec());
        let num = Series::from_coeffs(var, 0, self.num.coeffs().to_vec(), order + 1 + low);
        let den = Series::from_coeffs(var, 0, shifted.coeffs().to_vec(), order + 1 + low);
        Ok(num.div(&den)?.shift(-low))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == UPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Recover `p/denom` from the series `s`, where `p` must be a polynomial of
/// degree at most `max_deg`.
///
/// Every coefficient of `s*denom` past `max_deg` that lies within the
/// precision of `s` must vanish. Negative valuations are absorbed into the
/// denominator.
pub fn ratfunc_reconstruct(s: &Series<Rat>, denom: &UPoly, max_deg: usize) -> Result<RatFunc> {
    let dd = denom.degree().ok_or_else(|| Error::Reconstruction("zero denominator".into()))?;
    let shift = (-s.val()).max(0);
    let s = s.shift(shift);
    let needed = (max_deg + dd + 4) as i64;
    if s.prec() < needed {
        return Err(Error::Reconstruction(format!(
            "series known to order {} but {} is needed",
            s.prec() - 1,
            needed - 1
        )));
    }
    let d = Series::from_coeffs(s.var(), 0, denom.coeffs().to_vec(), i64::MAX);
    let p = s.mul(&d);
    for k in (max_deg as i64 + 1)..p.prec() {
        let c = p.coeff(k)?;
        if !c.is_zero() {
            return Err(Error::Reconstruction(format!(
                "coefficient of q^{k} in the numerator is {c}, expected 0"
            )));
        }
    }
    let num = UPoly::new((0..=max_deg as i64).map(|k| p.coeff(k)).collect::<Result<_>>()?);
    let den = denom.mul(&UPoly::monomial(shift as usize, Rat::one()));
    Ok(RatFunc::new(num, den))
}
