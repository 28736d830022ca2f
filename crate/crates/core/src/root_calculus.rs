//! Puiseux roots of `z^N = q(z-1)^N` and `h^N(1-h) = (-1)^{N-1} q`, and the
//! symmetric functions of them that give `U_N` and the general-type series.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact_algebra::{binom_general, CycloNum, Rat, RatFunc, Ring, UPoly};
use crate::power_series::{PuiseuxSeries, Series, EXACT};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootEquation {
    /// `z^N - q(z-1)^N = 0`
    Quotient,
    /// `h^N(1-h) = (-1)^{N-1} q`
    HEquation,
}

/// The `N` roots vanishing at `q = 0`, as series in `s` with `s^N = ±q`.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub n: u32,
    pub equation: RootEquation,
    pub roots: Vec<PuiseuxSeries>,
}

impl RootSystem {
    fn bases(&self) -> Vec<Series<CycloNum>> {
        self.roots.iter().map(|r| r.base.clone()).collect()
    }

    fn scale(&self) -> Rat {
        self.roots[0].scale.clone()
    }

    /// Rewrite a symmetric expression (in `s`) as a rational `q`-series,
    /// asserting that it really is one.
    pub fn to_q(&self, sym: Series<CycloNum>) -> Result<Series<Rat>> {
        PuiseuxSeries {
            base: sym,
            ramification: self.n,
            scale: self.scale(),
        }
        .to_q_series("q")
    }

    /// `s^N` as an exact series in `s`, i.e. `±q`.
    fn q_in_s(&self) -> Series<CycloNum> {
        let sc = CycloNum::rational(self.scale().inv().expect("scale is ±1"));
        Series::monomial("s", sc, self.n as i64)
    }
}

/// `r_j = -Σ_{m≥1} (ζ^j s)^m` with `s^N = q`, known through `s^{N(K+1)-1}`.
pub fn roots_quotient_eq(n: u32, k: usize) -> RootSystem {
    roots_quotient_eq_prec(n, n as i64 * (k as i64 + 1))
}

fn roots_quotient_eq_prec(n: u32, prec: i64) -> RootSystem {
    let roots = (0..n as i64)
        .map(|j| {
            let base = Series::from_fn("s", 1, prec, |m| CycloNum::zeta_pow(n, j * m).neg());
            PuiseuxSeries::new(base, n)
        })
        .collect();
    RootSystem {
        n,
        equation: RootEquation::Quotient,
        roots,
    }
}

/// `z^N - q(z-1)^N` at every root, which must vanish to precision.
pub fn quotient_residuals(sys: &RootSystem) -> Vec<Series<CycloNum>> {
    let q = sys.q_in_s();
    let n = sys.n as i64;
    sys.bases()
        .iter()
        .map(|z| {
            let zm1 = z.sub(&Series::one("s"));
            z.pow_int(n).unwrap().sub(&q.mul(&zm1.pow_int(n).unwrap()))
        })
        .collect()
}

fn prod_pairs(xs: &[Series<CycloNum>], f: impl Fn(&Series<CycloNum>) -> Series<CycloNum>) -> Series<CycloNum> {
    let mut acc = Series::one("s");
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            acc = acc.mul(&f(&xs[i].sub(&xs[j])));
        }
    }
    acc
}

fn one_minus_sq(d: &Series<CycloNum>) -> Series<CycloNum> {
    Series::one("s").sub(&d.mul(d))
}

/// `Π_{i<j} (1 - (r_i - r_j)^2)` as a `q`-series through `q^K`.
pub fn pair_product(n: u32, k: usize) -> Result<Series<Rat>> {
    let sys = roots_quotient_eq(n, k);
    sys.to_q(prod_pairs(&sys.bases(), one_minus_sq))
}

/// The same product taken over ordered pairs `i ≠ j`.
pub fn pair_product_ordered(n: u32, k: usize) -> Result<Series<Rat>> {
    let p = pair_product(n, k)?;
    Ok(p.mul(&p))
}

fn u_prefactor(n: u32, k: usize) -> Result<Series<Rat>> {
    let p = k as i64 + 1;
    let nn = n as i64;
    let one_q = Series::from_ints("q", 0, &[1, -1], EXACT).truncate(p);
    let den = Series::from_coeffs("q", 0, vec![Rat::one(), -Rat::int(2).pow(nn)], EXACT).truncate(p);
    one_q.pow_int(2 * nn)?.div(&den.pow_int(nn)?)
}

/// `U_N = (1-q)^{2N}/(1-2^N q)^N · Π_{i<j} (1 - (r_i - r_j)^2)`.
pub fn u_series(n: u32, k: usize) -> Result<Series<Rat>> {
    Ok(u_prefactor(n, k)?.mul(&pair_product(n, k)?))
}

/// The palindromic `P_N` with `U_N = (1-q)^2 P_N / (1-2^N q)^N`.
pub fn u_palindromic(n: u32) -> Result<UPoly> {
    let nn = n as i64;
    let deg = 2 * n as usize - 2;
    let k = 3 * n as usize + 8;
    let u = u_series(n, k)?;
    let one_q = Series::from_ints("q", 0, &[1, -1], EXACT).truncate(k as i64 + 1);
    let p = u.div(&one_q.pow_int(2)?)?;
    let den = UPoly::new(vec![Rat::one(), -Rat::int(2).pow(nn)]).pow(n);
    let rf = crate::exact_algebra::ratfunc_reconstruct(&p, &den, deg)?;
    let poly = rf.num().clone();
    if rf.den() != &den {
        return Err(Error::Reconstruction(format!("unexpected denominator {}", rf.den().display_var("q"))));
    }
    if poly.degree() != Some(deg) || !poly.is_palindromic() {
        return Err(Error::Reconstruction(format!(
            "P_{n} = {} is not palindromic of degree {deg}",
            poly.display_var("q")
        )));
    }
    Ok(poly)
}

/// `U_N` as a rational function.
pub fn u_ratfunc(n: u32) -> Result<RatFunc> {
    let p = u_palindromic(n)?;
    let nn = n as i64;
    Ok(RatFunc::from_factors(&[
        (UPoly::from_ints(&[1, -1]), 2),
        (p, 1),
        (UPoly::new(vec![Rat::one(), -Rat::int(2).pow(nn)]), -(n as i32)),
    ]))
}

/// `(1-q)^2(P_N)/(1-2^N q)^N` written out in factored form.
pub fn u_factored(n: u32, p: &UPoly) -> String {
    let base = format!("(1 - {}q)", Rat::int(2).pow(n as i64));
    let den = if n == 1 { base } else { format!("{base}^{n}") };
    if p.degree() == Some(0) {
        format!("(1 - q)^2/{den}")
    } else {
        format!("(1 - q)^2({})/{den}", p.display_var("q"))
    }
}

/// `A(x_1..x_k) = (-1)^{binom(k,2)}/N^k Π (1+x_i)^N(1-x_i)/x_i^{N-1} Π_{i<j} (x_i-x_j)^2/(1-(x_i-x_j)^2)`.
fn root_choice_factor(n: u32, xs: &[Series<CycloNum>]) -> Result<Series<CycloNum>> {
    let k = xs.len() as i64;
    let nn = n as i64;
    let c = Rat::sign_pow(k * (k - 1) / 2) * Rat::int(nn).pow(-k);
    let mut acc = Series::constant("s", CycloNum::rational(c));
    let one = Series::<CycloNum>::one("s");
    for x in xs {
        acc = acc
            .mul(&one.add(x).pow_int(nn)?)
            .mul(&one.sub(x))
            .mul(&x.pow_int(-(nn - 1))?);
    }
    let num = prod_pairs(xs, |d| d.mul(d));
    let den = prod_pairs(xs, one_minus_sq);
    acc.mul(&num).div(&den)
}

fn subsets(n: usize, l: usize) -> Vec<Vec<usize>> {
    if l == 0 {
        return vec![vec![]];
    }
    if n < l {
        return vec![];
    }
    let mut out = subsets(n - 1, l);
    for mut s in subsets(n - 1, l - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// `Z = (-1)^{ℓχ} q^{ℓ(1-g)} Σ_{|S| = N-ℓ} A(r_S)^{1-g}` through `q^K`.
pub fn general_type_series(n: u32, l: u32, g: i64, chi: i64, k: i64) -> Result<Series<Rat>> {
    if l > n {
        return Err(Error::Unsupported(format!("ℓ = {l} exceeds N = {n}")));
    }
    let low = l as i64 * (1 - g);
    if k < low {
        return Ok(Series::zero("q", k + 1));
    }
    let m = k - low;
    let nn = n as i64;
    let size = (n - l) as usize;
    // valuation of A in s, so that A^{1-g} keeps enough terms
    let v_a = -(size as i64) * (nn - 1) + (size * size.saturating_sub(1)) as i64;
    let need = nn * (m + 1);
    let prec = need - (1 - g) * v_a + 2 + nn;
    let sys = roots_quotient_eq_prec(n, prec.max(nn + 2));
    let bases = sys.bases();
    let terms: Vec<Series<CycloNum>> = subsets(n as usize, size)
        .par_iter()
        .map(|s| {
            let xs: Vec<_> = s.iter().map(|&i| bases[i].clone()).collect();
            root_choice_factor(n, &xs)?.pow_int(1 - g)
        })
        .collect::<Result<_>>()?;
    let mut total = Series::zero("s", EXACT);
    for t in terms {
        total = total.add(&t);
    }
    let z = sys.to_q(total)?.truncate(m + 1);
    if z.prec() <= m {
        return Err(Error::NeedsPrecision);
    }
    Ok(z.scale(&Rat::sign_pow(l as i64 * chi)).shift(low))
}

/// `H(u)` with `H(1-H)^{1/N} = u`, through `u^{prec-1}`.
fn h_inverse(n: u32, prec: i64) -> Result<Series<Rat>> {
    let one_m = Series::from_ints("u", 0, &[1, -1], EXACT).truncate(prec + 1);
    let f = Series::<Rat>::gen("u").mul(&one_m.pow_rat(&Rat::new(1, n as i64))?);
    Ok(f.reversion()?.truncate(prec))
}

/// The `N` roots `h_j = H(ζ^j s)`, `s^N = (-1)^{N-1} q`, and the distinguished
/// root `1 + t` with `q = (-1)^N t(1+t)^N`.
pub fn roots_h_eq(n: u32, k: usize) -> Result<(RootSystem, Series<Rat>)> {
    let (sys, _) = h_roots_prec(n, n as i64 * (k as i64 + 1))?;
    Ok((sys, distinguished_root(n, k)?))
}

fn h_roots_prec(n: u32, prec: i64) -> Result<(RootSystem, Series<Rat>)> {
    let h = h_inverse(n, prec)?;
    let scale = Rat::sign_pow(n as i64 - 1);
    let roots = (0..n as i64)
        .map(|j| {
            let base = Series::from_fn("s", 0, prec, |m| {
                CycloNum::zeta_pow(n, j * m).scale(&h.coeff(m).expect("within precision"))
            });
            PuiseuxSeries {
                base,
                ramification: n,
                scale: scale.clone(),
            }
        })
        .collect();
    Ok((
        RootSystem {
            n,
            equation: RootEquation::HEquation,
            roots,
        },
        h,
    ))
}

pub fn distinguished_root(n: u32, k: usize) -> Result<Series<Rat>> {
    let nn = n as i64;
    let p = k as i64 + 1;
    let one_t = Series::<Rat>::from_ints("t", 0, &[1, 1], EXACT).truncate(p + 1);
    let f = Series::<Rat>::gen("t").mul(&one_t.pow_int(nn)?).scale(&Rat::sign_pow(nn));
    let t = f.reversion()?.with_var("q").truncate(p);
    Ok(Series::one("q").add(&t))
}

/// `h^N(1-h) - (-1)^{N-1} q` at every root.
pub fn h_residuals(sys: &RootSystem) -> Vec<Series<CycloNum>> {
    let q = sys.q_in_s().scale(&Rat::sign_pow(sys.n as i64 - 1));
    sys.bases()
        .iter()
        .map(|h| {
            h.pow_int(sys.n as i64)
                .unwrap()
                .mul(&Series::one("s").sub(h))
                .sub(&q)
        })
        .collect()
}

/// `(-1)^{binom(N+1,2)} Π_{i<j}(h_i-h_j)^2 (h_1…h_N)^{-(N-1)} Π (1-h_i)^2 / Π ((N+1)h_i - N)`.
pub fn b_from_h_roots(n: u32, k: usize) -> Result<Series<Rat>> {
    let nn = n as i64;
    // (h_1…h_N)^{-(N-1)} costs N(N-1) orders of s
    let (sys, _) = h_roots_prec(n, nn * (k as i64 + 1) + nn * nn + 2)?;
    let hs = sys.bases();
    let one = Series::<CycloNum>::one("s");
    let mut acc = Series::constant("s", CycloNum::rational(Rat::sign_pow(nn * (nn + 1) / 2)));
    acc = acc.mul(&prod_pairs(&hs, |d| d.mul(d)));
    for h in &hs {
        let lin = h.scale(&Rat::int(nn + 1)).sub(&one.scale(&Rat::int(nn)));
        acc = acc
            .mul(&h.pow_int(-(nn - 1))?)
            .mul(&one.sub(h).pow_int(2)?)
            .div(&lin)?;
    }
    Ok(sys.to_q(acc)?.truncate(k as i64 + 1))
}

/// Compares both sides of the root identity for `B_{1,N}` through `q^K`.
pub fn identity_ee_check(n: u32, k: usize) -> Result<bool> {
    let lhs = b_from_h_roots(n, k)?;
    let h = distinguished_root(n, k)?;
    let nn = n as i64;
    let den = h.scale(&Rat::int(nn + 1)).sub(&Series::constant("q", Rat::int(nn)));
    let rhs = h.pow_int(nn + 1)?.div(&den)?.truncate(k as i64 + 1);
    Ok(lhs == rhs)
}

/// Coefficients `e_1..e_N` of the monic form of `(z^N - q(z-1)^N)/(1-q)`,
/// with `Π (z - r_i) = z^N - e_1 z^{N-1} + …`.
pub fn elementary_from_polynomial(n: u32, k: usize) -> Result<Vec<Series<Rat>>> {
    let nn = n as i64;
    let p = k as i64 + 1;
    let inv = Series::from_ints("q", 0, &[1, -1], EXACT).truncate(p).inv()?;
    Ok((1..=nn)
        .map(|i| {
            // coefficient of z^{N-i} in -q(z-1)^N is -q binom(N, i) (-1)^i
            let c = -binom_general(nn, i as u64) * Rat::sign_pow(i);
            Series::from_coeffs("q", 1, vec![c], EXACT)
                .mul(&inv)
                .scale(&Rat::sign_pow(i))
        })
        .collect())
}
