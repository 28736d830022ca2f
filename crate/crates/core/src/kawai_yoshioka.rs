//! The Kawai–Yoshioka numbers `N_{g,n}`.
//!
//! `Σ N_{g,n} y^n q^g = y/(1-y)² Π_{m≥1} (1-q^m)^{-20} (1-yq^m)^{-2} (1-y^{-1}q^m)^{-2}`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact_algebra::Rat;
use crate::power_series::{Series, EXACT};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KYTable {
    pub gmax: usize,
    pub nmax: usize,
    entries: BTreeMap<(i64, i64), BigInt>,
}

impl KYTable {
    /// `N_{g,n}`; zero below the support `n < 1 - g`.
    pub fn get(&self, g: i64, n: i64) -> Result<BigInt> {
        if g < 0 || g > self.gmax as i64 || n > self.nmax as i64 {
            return Err(Error::OutOfTableRange { g, n });
        }
        Ok(self.entries.get(&(g, n)).cloned().unwrap_or_default())
    }

    /// Stored entries in `(g, n)` order, from `n = 1 - g` up to `nmax`.
    pub fn entries(&self) -> impl Iterator<Item = (i64, i64, &BigInt)> {
        self.entries.iter().map(|(&(g, n), v)| (g, n, v))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("g,n,N\n");
        for (g, n, v) in self.entries() {
            let _ = writeln!(out, "{g},{n},{v}");
        }
        out
    }
}

/// Expand the product for `g ≤ gmax` and `n ≤ nmax`.
pub fn ky_table(gmax: usize, nmax: usize) -> Result<KYTable> {
    let qp = gmax as i64 + 1;
    let yprec = (nmax + gmax) as i64 + 2;
    let y_const = |c: i64| Series::constant("y", Rat::int(c));
    let mut prod = Series::<Series<Rat>>::one("q").truncate(qp);
    for m in 1..=gmax {
        let binomial = |c: Series<Rat>| {
            let mut v = vec![Series::<Rat>::zero("y", EXACT); m + 1];
            v[0] = y_const(1);
            v[m] = c.neg();
            Series::from_coeffs("q", 0, v, EXACT)
        };
        let plain = binomial(y_const(1));
        let with_y = binomial(Series::monomial("y", Rat::one(), 1));
        let with_inv = binomial(Series::monomial("y", Rat::one(), -1));
        prod = prod
            .mul(&plain.pow_int(20)?)
            .mul(&with_y.pow_int(2)?)
            .mul(&with_inv.pow_int(2)?)
            .truncate(qp);
    }
    let gen = prod.inv()?;
    let pre = Series::from_fn("y", 1, yprec, Rat::int);
    let mut entries = BTreeMap::new();
    for g in 0..=gmax as i64 {
        let c = gen.coeff(g)?.mul(&pre);
        for n in (1 - g)..=nmax as i64 {
            let v = c.coeff(n)?;
            if !v.is_integer() {
                return Err(Error::Rationality(format!("N_{{{g},{n}}} = {v} is not an integer")));
            }
            entries.insert((g, n), v.numer().clone());
        }
    }
    Ok(KYTable { gmax, nmax, entries })
}
