//! Closed-form Segre series for Quot schemes of curves.

use crate::error::{Error, Result};
use crate::exact_algebra::{binom_general, MPoly, Rat, Ring};
use crate::power_series::{compositions, Series, EXACT};

/// Twist of a K-theory class: a number, or the formal variable `x_{i+1}`.
#[derive(Clone, Debug, PartialEq)]
pub enum Twist {
    Value(Rat),
    Formal(usize),
}

/// A K-theory class on a curve; ranks and degrees may be negative.
#[derive(Clone, Debug, PartialEq)]
pub struct KClass {
    pub rank: i64,
    pub degree: i64,
    pub twist: Twist,
}

impl KClass {
    pub fn new(rank: i64, degree: i64, twist: Twist) -> KClass {
        KClass { rank, degree, twist }
    }

    /// Untwisted, `x = 1`.
    pub fn plain(rank: i64, degree: i64) -> KClass {
        KClass::new(rank, degree, Twist::Value(Rat::one()))
    }

    fn twist_poly(&self) -> MPoly {
        match &self.twist {
            Twist::Value(r) => MPoly::constant(r.clone()),
            Twist::Formal(i) => MPoly::var(*i),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurveSpec {
    pub genus: i64,
    pub n: u32,
    pub classes: Vec<KClass>,
}

/// `s_x(α^{[n]})` on `C^{[n]} ≅ P^n`, i.e. `(1 - x h)^{d - n r + r}` truncated at `h^n`.
pub fn segre_class_pn<C: Ring>(rank: i64, degree: i64, x: &C, n: usize) -> Series<C> {
    let e = degree - n as i64 * rank + rank;
    let lin = Series::poly("h", vec![C::one(), x.neg()]).truncate(n as i64 + 1);
    lin.pow_int(e).expect("constant term 1 is invertible")
}

/// The N = 1 curve series `Z = Π A_i^{d_i} · B^{1-g}` and its pieces.
#[derive(Clone, Debug)]
pub struct CurveSeries<C: Ring> {
    pub z: Series<C>,
    pub a: Vec<Series<C>>,
    pub b: Series<C>,
}

/// The N = 1 curve series over any coefficient ring: classes given as `(rank, degree, twist)`.
pub fn curve_series_generic<C: Ring>(genus: i64, classes: &[(i64, i64, C)], k: usize) -> Result<CurveSeries<C>> {
    let p = k as i64 + 1;
    // q = t Π (1 - x_i t)^{r_i}
    let mut f = Series::<C>::gen("t").truncate(p + 1);
    for (r, _, x) in classes {
        let lin = Series::poly("t", vec![C::one(), x.neg()]).truncate(p + 1);
        f = f.mul(&lin.pow_int(*r)?);
    }
    let t = f.reversion()?.with_var("q");
    let one = Series::<C>::one("q");
    let a: Vec<Series<C>> = classes
        .iter()
        .map(|(_, _, x)| one.sub(&t.mul_scalar(x)).truncate(p))
        .collect();
    let q_over_t = Series::<C>::gen("q").div(&t)?;
    let b = q_over_t.mul(&q_over_t).mul(&t.derivative()).truncate(p);
    let mut z = b.pow_int(1 - genus)?;
    for (ai, (_, d, _)) in a.iter().zip(classes) {
        z = z.mul(&ai.pow_int(*d)?);
    }
    Ok(CurveSeries { z: z.truncate(p), a, b })
}

/// The N = 1 curve series with polynomial coefficients in the formal twists.
pub fn z_curve_formal(spec: &CurveSpec, k: usize) -> Result<CurveSeries<MPoly>> {
    if spec.n != 1 {
        return Err(Error::Unsupported("the product formula needs N = 1".into()));
    }
    let classes: Vec<(i64, i64, MPoly)> = spec
        .classes
        .iter()
        .map(|c| (c.rank, c.degree, c.twist_poly()))
        .collect();
    curve_series_generic(spec.genus, &classes, k)
}

/// The N = 1 curve series when every twist is a number.
pub fn z_curve_n1(spec: &CurveSpec, k: usize) -> Result<CurveSeries<Rat>> {
    if spec.n != 1 {
        return Err(Error::Unsupported("the product formula needs N = 1".into()));
    }
    let classes = spec
        .classes
        .iter()
        .map(|c| match &c.twist {
            Twist::Value(x) => Ok((c.rank, c.degree, x.clone())),
            Twist::Formal(_) => Err(Error::Unsupported("formal twist in a numeric evaluation".into())),
        })
        .collect::<Result<Vec<_>>>()?;
    curve_series_generic(spec.genus, &classes, k)
}

/// `Z_C = Π A_i^{d_i} B^{1-g}` with numeric twists for any `N`.
///
/// `N > 1` needs a single class; `B` is only known for rank 1, so other
/// ranks are limited to genus 1. A twist `x` acts by `q -> x^N q`.
pub fn z_curve_numeric(spec: &CurveSpec, k: usize) -> Result<Series<Rat>> {
    if spec.n == 1 {
        return Ok(z_curve_n1(spec, k)?.z);
    }
    let p = k as i64 + 1;
    let n = spec.n;
    let class = match spec.classes.as_slice() {
        [] => return Ok(Series::one("q").truncate(p)),
        [c] => c,
        cs => {
            return Err(Error::Unsupported(format!(
                "{} classes with N = {n}: no closed form known",
                cs.len()
            )))
        }
    };
    let Twist::Value(x) = &class.twist else {
        return Err(Error::Unsupported("formal twist in a numeric evaluation".into()));
    };
    let (a, b) = if class.rank == 1 {
        let (a, b) = ab_closed_rank1(n, k)?;
        (a, Some(b))
    } else {
        (a_universal(class.rank, n as i64, k)?, None)
    };
    let mut z = a.pow_int(class.degree)?;
    if spec.genus != 1 {
        let b = b.ok_or_else(|| {
            Error::Unsupported(format!("B is unknown for rank {} and N = {n}", class.rank))
        })?;
        z = z.mul(&b.pow_int(1 - spec.genus)?);
    }
    z.truncate(p).subs_scale(&x.pow(n as i64))
}

/// Genus 0, `N = 1`: `Σ q^n [h^n] Π (1 - x_i h)^{d_i - n r_i + r_i}` on `P^n`.
pub fn z_genus0_direct<C: Ring>(classes: &[(i64, i64, C)], k: usize) -> Result<Series<C>> {
    let mut out = Vec::with_capacity(k + 1);
    for n in 0..=k {
        let mut s = Series::<C>::one("h").truncate(n as i64 + 1);
        for (r, d, x) in classes {
            s = s.mul(&segre_class_pn(*r, *d, x, n));
        }
        out.push(s.coeff(n as i64)?);
    }
    Ok(Series::from_coeffs("q", 0, out, k as i64 + 1))
}

/// `a_n^{(j)} = x_j Σ_{|p| = n-1} binom(-n r_j - 1, p_j) Π_{i≠j} binom(-n r_i, p_i) x^p`
/// (0-based `j`).
pub fn a_n(ranks: &[i64], j: usize, n: usize) -> MPoly {
    let l = ranks.len();
    let mut acc = MPoly::zero();
    for p in compositions(n - 1, l) {
        let mut c = Rat::one();
        for (i, &pi) in p.iter().enumerate() {
            let top = if i == j {
                -(n as i64) * ranks[i] - 1
            } else {
                -(n as i64) * ranks[i]
            };
            c *= binom_general(top, pi as u64);
            if c.is_zero() {
                break;
            }
        }
        if c.is_zero() {
            continue;
        }
        let mut e: Vec<u32> = p.iter().map(|&v| v as u32).collect();
        e[j] += 1;
        acc = acc.add(&MPoly::monomial(e, c));
    }
    acc
}

/// `log A_1 = Σ (-1)^n q^n/n · a_n` with polynomial coefficients in `x_1..x_l`.
pub fn log_a1(ranks: &[i64], k: usize) -> Series<MPoly> {
    log_a_j(ranks, 0, k)
}

/// The same for the class `j` (0-based).
pub fn log_a_j(ranks: &[i64], j: usize, k: usize) -> Series<MPoly> {
    let mut out = vec![MPoly::zero()];
    for n in 1..=k {
        let c = Rat::sign_pow(n as i64) * Rat::new(1, n as i64);
        out.push(a_n(ranks, j, n).scale(&c));
    }
    Series::from_coeffs("q", 0, out, k as i64 + 1)
}

/// `log A = Σ (-1)^{(N+1)n+1} binom((r+N)n-1, Nn-1) q^n/n` for a rank `r` class.
pub fn log_a_universal(r: i64, n_rank: i64, k: usize) -> Series<Rat> {
    Series::from_fn("q", 0, k as i64 + 1, |n| {
        if n == 0 {
            return Rat::zero();
        }
        let sign = Rat::sign_pow((n_rank + 1) * n + 1);
        sign * binom_general((r + n_rank) * n - 1, (n_rank * n - 1) as u64) * Rat::new(1, n)
    })
}

/// `A = exp(log A)` from the universal logarithm.
pub fn a_universal(r: i64, n_rank: i64, k: usize) -> Result<Series<Rat>> {
    log_a_universal(r, n_rank, k).exp()
}

/// `q = (-1)^N t(1+t)^N`, `A = (1+t)^N`, `B = (1+t)^{N+1}/(1+(N+1)t)`.
pub fn ab_closed_rank1(n_rank: u32, k: usize) -> Result<(Series<Rat>, Series<Rat>)> {
    let nn = n_rank as i64;
    let p = k as i64 + 1;
    let one_t = Series::<Rat>::from_ints("t", 0, &[1, 1], EXACT);
    let f = Series::<Rat>::gen("t")
        .mul(&one_t.truncate(p + 1).pow_int(nn)?)
        .scale(&Rat::sign_pow(nn));
    let t = f.reversion()?.with_var("q");
    let opt = Series::<Rat>::one("q").add(&t);
    let a = opt.pow_int(nn)?.truncate(p);
    let den = Series::<Rat>::one("q").add(&t.scale(&Rat::int(nn + 1)));
    let b = opt.pow_int(nn + 1)?.div(&den)?.truncate(p);
    Ok((a, b))
}

/// `B = Σ (-1)^{n(N+1)} binom((n-1)(N+1), n) q^n`.
pub fn b_binomial_sum(n_rank: u32, k: usize) -> Series<Rat> {
    let nn = n_rank as i64;
    Series::from_fn("q", 0, k as i64 + 1, |n| {
        Rat::sign_pow(n * (nn + 1)) * binom_general((n - 1) * (nn + 1), n as u64)
    })
}

/// `∫ s(L^{[n]})` over `Quot_{P^1}(C^N, n)` for `deg L = d`: `(-1)^{Nn} binom(Nd - N(n-1), n)`.
pub fn segre_p1_closed(n_rank: u32, d: i64, n: usize) -> Rat {
    let nn = n_rank as i64;
    let n = n as i64;
    Rat::sign_pow(nn * n) * binom_general(nn * d - nn * (n - 1), n as u64)
}

/// The other side of the symmetry: `(-1)^{n(N-1)} ∫_{P^n} s(L^{[n]})^N`.
pub fn segre_p1_symmetric(n_rank: u32, d: i64, n: usize) -> Rat {
    let nn = n_rank as i64;
    let s = segre_class_pn(1, d, &Rat::one(), n)
        .pow_int(nn)
        .expect("positive power");
    Rat::sign_pow(n as i64 * (nn - 1)) * s.coeff(n as i64).expect("within precision")
}

/// `B` for a rank 2 class and `N = 2`, from its closed form in `t` with `q = -t²`:
/// `(1+√(1-4t))⁴ (1+√(1+4t))⁴ (1-√(1-16t²)) / (2048 t² √(1-16t²))`.
///
/// Fails if the expansion in `t` has an odd power.
pub fn b22_closed_form(k: usize) -> Result<Series<Rat>> {
    let p = 2 * k as i64 + 3;
    let half = Rat::new(1, 2);
    let sqrt = |c: &[i64]| Series::<Rat>::from_ints("t", 0, c, EXACT).truncate(p + 2).pow_rat(&half);
    let one = Series::<Rat>::one("t");
    let a = one.add(&sqrt(&[1, -4])?).pow_int(4)?;
    let b = one.add(&sqrt(&[1, 4])?).pow_int(4)?;
    let root = sqrt(&[1, 0, -16])?;
    let num = a.mul(&b).mul(&one.sub(&root));
    let den = root.shift(2).scale(&Rat::int(2048));
    let f = num.div(&den)?.truncate(2 * k as i64 + 2);
    for j in (1..=2 * k as i64 + 1).step_by(2) {
        if !f.coeff(j)?.is_zero() {
            return Err(Error::Rationality(format!("odd power t^{j} in the closed form")));
        }
    }
    // f(t) = B(-t²)
    f.decimate(2)?.with_var("q").subs_scale(&Rat::int(-1))
}

/// Series `Â`, `B̂` defined through `q = t(1-t)^r` by
/// `Â = log(1-t)` and `B̂ = (r+1) log(1-t) - log(1-(r+1)t)`.
pub fn mop_series(r: i64, k: usize) -> Result<(Series<Rat>, Series<Rat>)> {
    let p = k as i64 + 1;
    let one_mt = Series::<Rat>::from_ints("t", 0, &[1, -1], EXACT).truncate(p + 1);
    let f = Series::<Rat>::gen("t").mul(&one_mt.pow_int(r)?);
    let t = f.reversion()?.with_var("q");
    let one = Series::<Rat>::one("q");
    let log1 = one.sub(&t).log()?;
    let log2 = one.sub(&t.scale(&Rat::int(r + 1))).log()?;
    let a = log1.truncate(p);
    let b = log1.scale(&Rat::int(r + 1)).sub(&log2).truncate(p);
    Ok((a, b))
}
