//! Compositional inversion and the Lagrange–Bürmann coefficient identity.

use super::series::Series;
use crate::error::{Error, Result};
use crate::exact_algebra::{Rat, Ring};

impl<C: Ring> Series<C> {
    /// The compositional inverse `g` with `self(g(q)) = q`, to the precision of `self`.
    pub fn reversion(&self) -> Result<Series<C>> {
        if self.is_exact() {
            return Err(Error::NeedsPrecision);
        }
        self.reversion_to(self.prec())
    }

    /// Newton iteration `g <- g - (f(g) - q)/f'(g)`, doubling the precision each step.
    pub fn reversion_to(&self, prec: i64) -> Result<Series<C>> {
        if self.val() != 1 {
            return Err(Error::BadValuation {
                expected: 1,
                found: self.val(),
            });
        }
        let target = prec.min(self.prec());
        let var = self.var().to_string();
        let f = self.truncate(target);
        let lead_inv = f.leading().unwrap().inv().ok_or(Error::NonInvertibleLeading)?;
        let q = Series::<C>::gen(&var);
        let df = f.derivative();
        let mut g = Series::monomial(&var, lead_inv, 1).truncate(2.min(target));
        let mut cur = 2.min(target);
        while cur < target {
            let next = (2 * cur).min(target);
            let ge = g.assume_prec(next);
            let resid = f.compose(&ge)?.sub(&q).truncate(next);
            let step = resid.div(&df.compose(&ge)?)?;
            g = ge.sub(&step).truncate(next);
            cur = next;
        }
        // re-substitution check
        let back = f.compose(&g)?.sub(&q);
        if !back.is_zero_to_prec() {
            return Err(Error::Reconstruction("reversion failed re-substitution".into()));
        }
        Ok(g.truncate(target))
    }
}

/// `g_n = (1/n) [t^(n-1)] (t/f)^n`.
pub(crate) fn lagrange_reversion(f: &Series<Rat>) -> Result<Series<Rat>> {
    if f.val() != 1 {
        return Err(Error::BadValuation {
            expected: 1,
            found: f.val(),
        });
    }
    if f.is_exact() {
        return Err(Error::NeedsPrecision);
    }
    let p = f.prec();
    // t/f as a power series known to relative precision p - 1
    let phi = Series::<Rat>::gen(f.var()).div(f)?;
    let mut pw = Series::one(f.var()).truncate(p - 1);
    let mut out = vec![Rat::zero()];
    for n in 1..p {
        pw = pw.mul(&phi);
        out.push(pw.coeff(n - 1)? * Rat::new(1, n));
    }
    Ok(Series::from_coeffs(f.var(), 0, out, p))
}

/// `Σ_{n≤K} ([t^n] f(t)^n g(t)) q^n` by direct extraction.
pub fn lagrange_burmann(f: &Series<Rat>, g: &Series<Rat>, k: usize) -> Result<Series<Rat>> {
    let f0 = f.coeff(0)?;
    if f0.is_zero() || f.val() < 0 {
        return Err(Error::BadConstantTerm("f must have an invertible constant term"));
    }
    let p = k as i64 + 1;
    let f = f.truncate(p);
    let g = g.truncate(p);
    let mut pw = Series::<Rat>::one(f.var()).truncate(p);
    let mut out = Vec::with_capacity(k + 1);
    for n in 0..=k as i64 {
        out.push(pw.mul(&g).coeff(n)?);
        pw = pw.mul(&f);
    }
    Ok(Series::from_coeffs("q", 0, out, p))
}

/// The closed side `(g/f)·dt/dq` evaluated at `t = t(q)`, `q = t/f(t)`.
pub fn lagrange_burmann_closed(f: &Series<Rat>, g: &Series<Rat>, k: usize) -> Result<Series<Rat>> {
    let p = k as i64 + 1;
    let f = f.truncate(p + 1).with_var("t");
    let g = g.truncate(p + 1).with_var("t");
    let q_of_t = Series::<Rat>::gen("t").div(&f)?;
    let t_of_q = q_of_t.reversion()?.with_var("q");
    let gf = g.div(&f)?;
    let out = gf.compose(&t_of_q)?.mul(&t_of_q.derivative());
    Ok(out.truncate(p).with_var("q"))
}
