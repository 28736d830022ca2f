//! Truncated Laurent series with explicit precision.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exact_algebra::{MPoly, Rat, Ring};

/// Precision of a series that is known exactly (a Laurent polynomial).
pub const EXACT: i64 = i64::MAX;

fn padd(a: i64, b: i64) -> i64 {
    if a == EXACT || b == EXACT {
        EXACT
    } else {
        a + b
    }
}

fn pmul(a: i64, b: i64) -> i64 {
    if a == EXACT || b == EXACT {
        EXACT
    } else {
        a * b
    }
}

/// `Σ c_k q^k + O(q^prec)`.
///
/// `coeffs[i]` is the coefficient of `q^(val+i)`. The leading stored
/// coefficient is nonzero; a series with no stored coefficients has
/// `val == prec`. Finite-precision series store every coefficient up to
/// `prec - 1`, exact ones drop trailing zeros.
#[derive(Clone)]
pub struct Series<C> {
    var: Arc<str>,
    val: i64,
    coeffs: Vec<C>,
    prec: i64,
}

impl<C: PartialEq> PartialEq for Series<C> {
    // the variable name is deliberately ignored
    fn eq(&self, o: &Self) -> bool {
        self.val == o.val && self.prec == o.prec && self.coeffs == o.coeffs
    }
}

impl<C: Ring> Series<C> {
    pub fn from_coeffs(var: &str, val: i64, coeffs: Vec<C>, prec: i64) -> Series<C> {
        Series::build(Arc::from(var), val, coeffs, prec)
    }

    fn build(var: Arc<str>, val: i64, mut coeffs: Vec<C>, prec: i64) -> Series<C> {
        if prec != EXACT {
            let keep = (prec - val).max(0) as usize;
            coeffs.truncate(keep);
        }
        let lead = coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => Series {
                var,
                val: prec,
                coeffs: Vec::new(),
                prec,
            },
            Some(i) => {
                coeffs.drain(..i);
                let val = val + i as i64;
                if prec == EXACT {
                    while coeffs.last().is_some_and(|c| c.is_zero()) {
                        coeffs.pop();
                    }
                } else {
                    coeffs.resize((prec - val) as usize, C::zero());
                }
                Series {
                    var,
                    val,
                    coeffs,
                    prec,
                }
            }
        }
    }

    /// `O(q^prec)`
    pub fn zero(var: &str, prec: i64) -> Series<C> {
        Series::from_coeffs(var, 0, Vec::new(), prec)
    }

    pub fn one(var: &str) -> Series<C> {
        Series::constant(var, C::one())
    }

    pub fn constant(var: &str, c: C) -> Series<C> {
        Series::from_coeffs(var, 0, vec![c], EXACT)
    }

    /// `c q^k`, exact.
    pub fn monomial(var: &str, c: C, k: i64) -> Series<C> {
        Series::from_coeffs(var, k, vec![c], EXACT)
    }

    /// The series `q` itself.
    pub fn gen(var: &str) -> Series<C> {
        Series::monomial(var, C::one(), 1)
    }

    /// Exact polynomial from ascending coefficients.
    pub fn poly(var: &str, coeffs: Vec<C>) -> Series<C> {
        Series::from_coeffs(var, 0, coeffs, EXACT)
    }

    pub fn from_fn(var: &str, val: i64, prec: i64, f: impl Fn(i64) -> C) -> Series<C> {
        assert!(prec != EXACT);
        Series::from_coeffs(var, val, (val..prec).map(f).collect(), prec)
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn with_var(mut self, var: &str) -> Series<C> {
        self.var = Arc::from(var);
        self
    }

    /// Exponent of the leading nonzero coefficient (equal to `prec` when none is known).
    pub fn val(&self) -> i64 {
        self.val
    }

    /// The series is known modulo `q^prec`.
    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec == EXACT
    }

    /// No nonzero coefficient below the precision.
    pub fn is_zero_to_prec(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The coefficient of `q^k`; asking beyond the precision is an error.
    pub fn coeff(&self, k: i64) -> Result<C> {
        if k >= self.prec {
            return Err(Error::BeyondPrecision {
                requested: k,
                precision: self.prec,
            });
        }
        Ok(self.get(k).cloned().unwrap_or_else(C::zero))
    }

    fn get(&self, k: i64) -> Option<&C> {
        if k < self.val {
            return None;
        }
        self.coeffs.get((k - self.val) as usize)
    }

    /// Stored coefficients, starting at `val`.
    pub fn raw_coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Coefficients of `q^lo .. q^hi` (exclusive), each within precision.
    pub fn coeff_range(&self, lo: i64, hi: i64) -> Result<Vec<C>> {
        (lo..hi).map(|k| self.coeff(k)).collect()
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.first()
    }

    fn merge_var(&self, o: &Series<C>) -> Arc<str> {
        if self.var.is_empty() {
            o.var.clone()
        } else {
            debug_assert!(
                o.var.is_empty() || o.var == self.var,
                "series variables differ: {} vs {}",
                self.var,
                o.var
            );
            self.var.clone()
        }
    }

    pub fn truncate(&self, prec: i64) -> Series<C> {
        if prec >= self.prec {
            return self.clone();
        }
        Series::build(self.var.clone(), self.val, self.coeffs.clone(), prec)
    }

    /// Pretend the series is known to `prec`, padding with zeros. Only for
    /// iterations that correct the padded terms afterwards.
    pub(crate) fn assume_prec(&self, prec: i64) -> Series<C> {
        let mut s = self.clone();
        if s.coeffs.is_empty() {
            s.val = prec;
        } else if prec != EXACT {
            s.coeffs.resize((prec - s.val).max(0) as usize, C::zero());
        }
        s.prec = prec;
        Series::build(s.var, s.val, s.coeffs, s.prec)
    }

    pub fn add(&self, o: &Series<C>) -> Series<C> {
        self.combine(o, false)
    }

    pub fn sub(&self, o: &Series<C>) -> Series<C> {
        self.combine(o, true)
    }

    fn combine(&self, o: &Series<C>, negate: bool) -> Series<C> {
        let prec = self.prec.min(o.prec);
        let val = self.val.min(o.val).min(prec);
        let top = if prec == EXACT {
            let end = |s: &Series<C>| {
                if s.coeffs.is_empty() {
                    val
                } else {
                    s.val + s.coeffs.len() as i64
                }
            };
            end(self).max(end(o))
        } else {
            prec
        };
        let mut out = Vec::with_capacity((top - val).max(0) as usize);
        for k in val..top {
            let a = self.get(k);
            let b = o.get(k);
            let c = match (a, b) {
                (Some(a), Some(b)) => {
                    if negate {
                        a.sub(b)
                    } else {
                        a.add(b)
                    }
                }
                (Some(a), None) => a.clone(),
                (None, Some(b)) => {
                    if negate {
                        b.neg()
                    } else {
                        b.clone()
                    }
                }
                (None, None) => C::zero(),
            };
            out.push(c);
        }
        Series::build(self.merge_var(o), val, out, prec)
    }

    pub fn neg(&self) -> Series<C> {
        Series {
            var: self.var.clone(),
            val: self.val,
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
            prec: self.prec,
        }
    }

    pub fn scale(&self, r: &Rat) -> Series<C> {
        Series::build(
            self.var.clone(),
            self.val,
            self.coeffs.iter().map(|c| c.scale(r)).collect(),
            self.prec,
        )
    }

    pub fn mul_scalar(&self, c: &C) -> Series<C> {
        Series::build(
            self.var.clone(),
            self.val,
            self.coeffs.iter().map(|a| a.mul(c)).collect(),
            self.prec,
        )
    }

    pub fn mul(&self, o: &Series<C>) -> Series<C> {
        let var = self.merge_var(o);
        let val = padd(self.val, o.val);
        let prec = padd(self.val, o.prec).min(padd(o.val, self.prec));
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return Series::build(var, val.min(prec), Vec::new(), prec);
        }
        let len = if prec == EXACT {
            self.coeffs.len() + o.coeffs.len() - 1
        } else {
            (prec - val).max(0) as usize
        };
        let mut out = vec![C::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len || a.is_zero() {
                continue;
            }
            let m = o.coeffs.len().min(len - i);
            for (j, b) in o.coeffs[..m].iter().enumerate() {
                out[i + j].add_mul(a, b);
            }
        }
        Series::build(var, val, out, prec)
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i64) -> Series<C> {
        if self.coeffs.is_empty() {
            let p = padd(self.prec, k);
            return Series::build(self.var.clone(), p, Vec::new(), p);
        }
        Series {
            var: self.var.clone(),
            val: self.val + k,
            coeffs: self.coeffs.clone(),
            prec: padd(self.prec, k),
        }
    }

    /// Inverse to the relative precision `rel` (used when `self` is exact).
    fn inv_rel(&self, rel: i64) -> Result<Series<C>> {
        let lead = self.leading().ok_or(Error::NonInvertibleLeading)?;
        let li = lead.inv().ok_or(Error::NonInvertibleLeading)?;
        if rel == EXACT {
            if self.coeffs.len() == 1 {
                return Ok(Series::monomial(&self.var, li, -self.val));
            }
            return Err(Error::NeedsPrecision);
        }
        let n = rel.max(0) as usize;
        let mut out: Vec<C> = Vec::with_capacity(n);
        for k in 0..n {
            if k == 0 {
                out.push(li.clone());
                continue;
            }
            let mut acc = C::zero();
            for j in 1..=k.min(self.coeffs.len() - 1) {
                acc.add_mul(&self.coeffs[j], &out[k - j]);
            }
            out.push(acc.mul(&li).neg());
        }
        Ok(Series::build(self.var.clone(), -self.val, out, -self.val + rel))
    }

    fn rel_prec(&self) -> i64 {
        if self.prec == EXACT {
            EXACT
        } else {
            self.prec - self.val
        }
    }

    pub fn inv(&self) -> Result<Series<C>> {
        self.inv_rel(self.rel_prec())
    }

    pub fn div(&self, o: &Series<C>) -> Result<Series<C>> {
        let rel = if o.prec == EXACT && o.coeffs.len() > 1 {
            let r = self.rel_prec();
            if r == EXACT {
                return Err(Error::NeedsPrecision);
            }
            r
        } else {
            o.rel_prec()
        };
        Ok(self.mul(&o.inv_rel(rel)?))
    }

    pub fn derivative(&self) -> Series<C> {
        let out: Vec<C> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.scale(&Rat::int(self.val + i as i64)))
            .collect();
        Series::build(self.var.clone(), self.val - 1, out, padd(self.prec, -1))
    }

    /// Antiderivative with zero constant term; fails on a `q^-1` term.
    pub fn integral(&self) -> Result<Series<C>> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            let k = self.val + i as i64;
            if k == -1 {
                if !c.is_zero() {
                    return Err(Error::BadConstantTerm("residue term cannot be integrated"));
                }
                out.push(C::zero());
            } else {
                out.push(c.scale(&Rat::new(1, k + 1)));
            }
        }
        Ok(Series::build(self.var.clone(), self.val + 1, out, padd(self.prec, 1)))
    }

    fn constant_term_is_one(&self) -> bool {
        self.val == 0 && self.coeffs[0].is_one()
    }

    pub fn log(&self) -> Result<Series<C>> {
        if self.coeffs.is_empty() || !self.constant_term_is_one() {
            return Err(Error::BadConstantTerm("log needs constant term 1"));
        }
        if self.prec == EXACT && self.coeffs.len() > 1 {
            return Err(Error::NeedsPrecision);
        }
        self.derivative().div(self)?.integral()
    }

    pub fn exp(&self) -> Result<Series<C>> {
        if self.val <= 0 && !self.coeffs.is_empty() {
            return Err(Error::BadConstantTerm("exp needs constant term 0"));
        }
        if self.coeffs.is_empty() {
            let s = Series::one(&self.var);
            return Ok(s.truncate(self.prec));
        }
        if self.prec == EXACT {
            return Err(Error::NeedsPrecision);
        }
        let n = self.prec as usize;
        // k*a_k for k < n
        let ka: Vec<C> = (0..n)
            .map(|k| {
                self.get(k as i64)
                    .map(|c| c.scale(&Rat::int(k as i64)))
                    .unwrap_or_else(C::zero)
            })
            .collect();
        let mut e: Vec<C> = vec![C::one()];
        for m in 1..n {
            let mut acc = C::zero();
            for k in 1..=m {
                acc.add_mul(&ka[k], &e[m - k]);
            }
            e.push(acc.scale(&Rat::new(1, m as i64)));
        }
        Ok(Series::build(self.var.clone(), 0, e, self.prec))
    }

    pub fn pow_int(&self, m: i64) -> Result<Series<C>> {
        if m < 0 {
            return self.inv()?.pow_int(-m);
        }
        let mut acc = Series::one(&self.var);
        if self.prec != EXACT {
            acc = acc.truncate(self.rel_prec());
        }
        let mut base = self.clone();
        let mut e = m as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// `self^alpha`; non-integral exponents need constant term 1.
    pub fn pow_rat(&self, alpha: &Rat) -> Result<Series<C>> {
        if let Some(m) = alpha.to_i64() {
            return self.pow_int(m);
        }
        if self.coeffs.is_empty() || !self.constant_term_is_one() {
            return Err(Error::BadConstantTerm("fractional power needs constant term 1"));
        }
        if self.prec == EXACT {
            return Err(Error::NeedsPrecision);
        }
        let n = self.prec as usize;
        let a: Vec<C> = (0..n).map(|k| self.get(k as i64).cloned().unwrap_or_else(C::zero)).collect();
        let mut b: Vec<C> = vec![C::one()];
        let a1 = alpha + &Rat::one();
        for m in 1..n {
            let mut acc = C::zero();
            for k in 1..=m {
                if a[k].is_zero() {
                    continue;
                }
                let w = &(&a1 * &Rat::int(k as i64)) - &Rat::int(m as i64);
                acc.add_assign(&a[k].mul(&b[m - k]).scale(&w));
            }
            b.push(acc.scale(&Rat::new(1, m as i64)));
        }
        Ok(Series::build(self.var.clone(), 0, b, self.prec))
    }

    /// `self(inner(q))`; `inner` must have positive valuation.
    pub fn compose(&self, inner: &Series<C>) -> Result<Series<C>> {
        if inner.coeffs.is_empty() || inner.val < 1 {
            return Err(Error::BadValuation {
                expected: 1,
                found: inner.val,
            });
        }
        let var = inner.var.clone();
        let cut = pmul(self.prec, inner.val);
        if self.coeffs.is_empty() {
            return Ok(Series::build(var, cut, Vec::new(), cut));
        }
        // Horner on the coefficients, then the q^val prefactor
        let mut acc: Series<C> = Series::zero(&var, EXACT);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&Series::constant(&var, c.clone()));
            if cut != EXACT {
                acc = acc.truncate(cut);
            }
        }
        let pre = inner.pow_int(self.val)?;
        Ok(acc.mul(&pre).truncate(cut).with_var(&var))
    }

    /// `q -> c q`.
    pub fn subs_scale(&self, c: &C) -> Result<Series<C>> {
        let base = if self.val < 0 {
            c.inv().ok_or(Error::NonInvertibleLeading)?.pow_u(self.val.unsigned_abs())
        } else {
            c.pow_u(self.val as u64)
        };
        let mut p = base;
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.mul(&p));
            p = p.mul(c);
        }
        Ok(Series::build(self.var.clone(), self.val, out, self.prec))
    }

    /// `q -> q^n`.
    pub fn ramify(&self, n: i64) -> Series<C> {
        assert!(n >= 1);
        let mut out = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                for _ in 1..n {
                    out.push(C::zero());
                }
            }
            out.push(c.clone());
        }
        let prec = if self.prec == EXACT {
            EXACT
        } else {
            // known through q^(n*(prec-1)), i.e. below n*prec - n + 1
            n * (self.prec - 1) + 1
        };
        Series::build(self.var.clone(), self.val * n, out, prec)
    }

    /// Inverse of [`Series::ramify`]: every nonzero exponent must be a multiple of `n`.
    pub fn decimate(&self, n: i64) -> Result<Series<C>> {
        let mut out = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            let k = self.val + i as i64;
            if k.rem_euclid(n) != 0 && !c.is_zero() {
                return Err(Error::Rationality(format!(
                    "exponent {k} is not a multiple of {n}"
                )));
            }
        }
        let lo = self.val.div_euclid(n) + i64::from(self.val.rem_euclid(n) != 0);
        let prec = if self.prec == EXACT {
            EXACT
        } else {
            // exponents n*m < prec are known
            (self.prec - 1).div_euclid(n) + 1
        };
        if !self.coeffs.is_empty() {
            let hi = self.val + self.coeffs.len() as i64;
            let mut m = lo;
            while n * m < hi && m < prec {
                out.push(self.get(n * m).cloned().unwrap_or_else(C::zero));
                m += 1;
            }
        }
        Ok(Series::build(self.var.clone(), lo, out, prec))
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> D) -> Series<D> {
        Series::build(self.var.clone(), self.val, self.coeffs.iter().map(f).collect(), self.prec)
    }

    pub fn try_map_coeffs<D: Ring>(&self, f: impl Fn(&C) -> Result<D>) -> Result<Series<D>> {
        let c = self.coeffs.iter().map(f).collect::<Result<Vec<D>>>()?;
        Ok(Series::build(self.var.clone(), self.val, c, self.prec))
    }

    /// Render with a custom coefficient printer.
    pub fn render(&self, coef: impl Fn(&C) -> String) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = self.val + i as i64;
            let mono = match k {
                0 => String::new(),
                1 => self.var.to_string(),
                _ => format!("{}^{}", self.var, k),
            };
            let cs = coef(c);
            let needs_paren = cs[1..].contains([' ', '+', '-']);
            let term = if mono.is_empty() {
                cs
            } else if cs == "1" {
                mono
            } else if cs == "-1" {
                format!("-{mono}")
            } else if needs_paren {
                format!("({cs})*{mono}")
            } else {
                format!("{cs}*{mono}")
            };
            parts.push(term);
        }
        let mut out = String::new();
        for (i, p) in parts.iter().enumerate() {
            if i == 0 {
                out.push_str(p);
            } else if let Some(rest) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        if self.prec != EXACT {
            let o = format!("O({}^{})", self.var, self.prec);
            if out.is_empty() {
                out = o;
            } else {
                out.push_str(" + ");
                out.push_str(&o);
            }
        } else if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl Series<Rat> {
    pub fn from_ints(var: &str, val: i64, coeffs: &[i64], prec: i64) -> Series<Rat> {
        Series::from_coeffs(var, val, coeffs.iter().map(|&c| Rat::int(c)).collect(), prec)
    }

    /// Lagrange inversion, kept as an independent check on [`Series::reversion`].
    pub fn reversion_lagrange(&self) -> Result<Series<Rat>> {
        super::reversion::lagrange_reversion(self)
    }
}

impl fmt::Display for Series<Rat> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(|c| c.to_string()))
    }
}

impl fmt::Display for Series<MPoly> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(|c| c.to_string()))
    }
}

impl<C: Ring> fmt::Debug for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(|c| format!("{c:?}")))
    }
}

/// Nested use: series with series coefficients (e.g. a weight parameter
/// inside a q-series). Ring identities are exact and variable-less.
impl<C: Ring> Ring for Series<C> {
    fn zero() -> Self {
        Series::zero("", EXACT)
    }
    fn one() -> Self {
        Series::one("")
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.prec == EXACT
    }
    fn from_rat(r: &Rat) -> Self {
        Series::constant("", C::from_rat(r))
    }
    fn add(&self, o: &Self) -> Self {
        Series::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Series::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Series::mul(self, o)
    }
    fn neg(&self) -> Self {
        Series::neg(self)
    }
    fn scale(&self, r: &Rat) -> Self {
        Series::scale(self, r)
    }
    fn inv(&self) -> Option<Self> {
        Series::inv(self).ok()
    }
}
