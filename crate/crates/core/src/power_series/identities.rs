//! Series identities used by the Segre computations, each checked by an
//! independent expansion.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::exact_algebra::{binom_general, MPoly, Rat, Ring};

use super::multi::{mv_lagrange_burmann_check, MultiSeries, Shape};
use super::series::{Series, EXACT};

type Laurent = BTreeMap<Vec<i64>, Rat>;

fn laurent_mul(a: &Laurent, b: &Laurent) -> Laurent {
    let mut out = Laurent::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<i64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert_with(Rat::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `(1 - z)^{-x}` with `z = c · w^e`, through `z^depth`.
fn neg_binomial(coef: Rat, exps: &[i64], x: i64, depth: i64) -> Laurent {
    let mut out = Laurent::new();
    for k in 0..=depth {
        let e: Vec<i64> = exps.iter().map(|v| v * k).collect();
        let c = binom_general(x + k - 1, k as u64) * coef.pow(k);
        out.insert(e, c);
    }
    out
}

/// Free term of `Σ_j (1 + w_j)^{-x_1} Π_{i≠j} (w_j - w_i)^{-x_•}`, expanded
/// in the region `|w_1| ≪ … ≪ |w_N| ≪ 1`; the exponents `x_2, …, x_N` are
/// handed to the other variables in increasing order.
///
/// Every ratio `w_a/w_b` appearing in a term involves `w_j`, so no
/// cancellation can reach past total degree `Σ x`, which bounds the expansion.
pub fn free_term_expansion(x: &[i64]) -> Rat {
    let n = x.len();
    let depth: i64 = x.iter().sum();
    let mut total = Rat::zero();
    for j in 0..n {
        let unit = |i: usize| {
            let mut e = vec![0i64; n];
            e[i] = 1;
            e
        };
        // (1 + w_j)^{-x_1}
        let mut term = neg_binomial(Rat::int(-1), &unit(j), x[0], depth);
        let others = (0..n).filter(|&i| i != j);
        for (i, &xi) in others.zip(&x[1..]) {
            let mut lead = vec![0i64; n];
            let factor = if i > j {
                // (w_j - w_i)^{-x} = (-1)^x w_i^{-x} (1 - w_j/w_i)^{-x}
                lead[i] = -xi;
                let mut ratio = vec![0i64; n];
                ratio[j] = 1;
                ratio[i] = -1;
                let mut f = neg_binomial(Rat::one(), &ratio, xi, depth);
                f = f.into_iter().map(|(e, c)| (e, c * Rat::sign_pow(xi))).collect();
                f
            } else {
                // w_j^{-x} (1 - w_i/w_j)^{-x}
                lead[j] = -xi;
                let mut ratio = vec![0i64; n];
                ratio[i] = 1;
                ratio[j] = -1;
                neg_binomial(Rat::one(), &ratio, xi, depth)
            };
            term = laurent_mul(&term, &laurent_mul(&Laurent::from([(lead, Rat::one())]), &factor));
        }
        total += term.get(&vec![0i64; n]).cloned().unwrap_or_else(Rat::zero);
    }
    total
}

/// `(-1)^{x_2+…+x_N} binom(Σx - 1, x_1 - 1)`.
pub fn free_term_closed(x: &[i64]) -> Rat {
    let s: i64 = x.iter().sum();
    Rat::sign_pow(s - x[0]) * binom_general(s - 1, (x[0] - 1) as u64)
}

/// With `q = t(1+t)^r`: checks
/// `Σ binom(d - rn + r, n) q^n = (1+t)^{d+r+1}/(1+(r+1)t)` and
/// `log(1+t) = Σ binom(-rn-1, n-1) q^n/n` through `q^K`.
pub fn binomial_sums_check(r: i64, d: i64, k: usize) -> Result<(bool, bool)> {
    let p = k as i64 + 1;
    let opt = Series::<Rat>::from_ints("t", 0, &[1, 1], EXACT);
    let f = Series::<Rat>::gen("t").mul(&opt.truncate(p + 1).pow_int(r)?);
    let t = f.reversion()?.with_var("q").truncate(p);
    let one = Series::<Rat>::one("q");
    let one_t = one.add(&t);
    let rhs1 = one_t
        .pow_int(d + r + 1)?
        .div(&one.add(&t.scale(&Rat::int(r + 1))))?;
    let lhs1 = Series::from_fn("q", 0, p, |n| binom_general(d - r * n + r, n as u64));
    let lhs2 = one_t.log()?;
    let rhs2 = Series::from_fn("q", 0, p, |n| {
        if n == 0 {
            Rat::zero()
        } else {
            binom_general(-r * n - 1, n as u64 - 1) * Rat::new(1, n)
        }
    });
    Ok((lhs1 == rhs1.truncate(p), lhs2 == rhs2))
}

/// `Σ_{j<n} (-1)^j binom(n-1, j)/(x+j) = (x-1)!(n-1)!/(x+n-1)!`, both sides.
pub fn alternating_sum(x: i64, n: i64) -> (Rat, Rat) {
    let lhs = (0..n)
        .map(|j| Rat::sign_pow(j) * binom_general(n - 1, j as u64) * Rat::new(1, x + j))
        .sum();
    let rhs = Rat::one() / (Rat::int(x) * binom_general(x + n - 1, (n - 1) as u64));
    (lhs, rhs)
}

fn phi_with_weight(w: i64, prec: i64) -> Result<Series<Rat>> {
    // (1-h)(1-h-w)/(h+w)
    let num = Series::from_ints("h", 0, &[1, -1], EXACT)
        .mul(&Series::from_ints("h", 0, &[1 - w, -1], EXACT))
        .truncate(prec);
    num.div(&Series::from_ints("h", 0, &[w, 1], EXACT))
}

/// The two-variable Lagrange–Bürmann identity on a few numeric instances
/// shaped like the localization integrands.
pub fn mv_lagrange_spot_checks(k: usize) -> Result<bool> {
    let shape = Shape::total(2, k as u32);
    let h1 = MPoly::var(0);
    let h2 = MPoly::var(1);
    let diff = h1.sub(&h2);
    let vandermonde = MultiSeries::from_poly(&shape, &diff.mul(&diff));
    let geometric = MultiSeries::one(&shape).div_poly(&MPoly::one().sub(&h1).sub(&h2))?;
    let cases = [(2, 3, &vandermonde), (3, -2, &geometric), (5, 2, &geometric)];
    for (w1, w2, psi) in cases {
        let p = k as i64 + 2;
        if !mv_lagrange_burmann_check(&phi_with_weight(w1, p)?, &phi_with_weight(w2, p)?, psi, k)? {
            return Ok(false);
        }
    }
    Ok(true)
}
