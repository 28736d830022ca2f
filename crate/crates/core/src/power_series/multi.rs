//! Truncated multivariate power series and fixed-locus coefficient extraction.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::series::Series;
use crate::error::{Error, Result};
use crate::exact_algebra::{MPoly, Rat, Ring};

/// The set of exponent vectors kept by a [`MultiSeries`]: every group of
/// variables has a cap on its total degree.
#[derive(Debug)]
pub struct Shape {
    nvars: usize,
    groups: Vec<(Vec<usize>, u32)>,
    monos: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl Shape {
    pub fn new(nvars: usize, groups: Vec<(Vec<usize>, u32)>) -> Arc<Shape> {
        let mut covered = vec![false; nvars];
        for (g, _) in &groups {
            for &v in g {
                assert!(!covered[v], "variable {v} in two groups");
                covered[v] = true;
            }
        }
        assert!(covered.iter().all(|&c| c), "every variable needs a cap");
        let mut monos = vec![vec![0u32; nvars]];
        for v in 0..nvars {
            let mut next = Vec::new();
            for m in &monos {
                let mut e = m.clone();
                loop {
                    next.push(e.clone());
                    e[v] += 1;
                    if !within(&groups, &e) {
                        break;
                    }
                }
            }
            monos = next;
        }
        // graded order so that division can proceed degree by degree
        monos.sort_by_key(|m| (m.iter().sum::<u32>(), m.clone()));
        let index = monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Arc::new(Shape {
            nvars,
            groups,
            monos,
            index,
        })
    }

    /// Each variable separately capped at `cap`.
    pub fn boxed(nvars: usize, cap: u32) -> Arc<Shape> {
        Shape::new(nvars, (0..nvars).map(|v| (vec![v], cap)).collect())
    }

    /// Total degree at most `cap`.
    pub fn total(nvars: usize, cap: u32) -> Arc<Shape> {
        Shape::new(nvars, vec![((0..nvars).collect(), cap)])
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn contains(&self, e: &[u32]) -> bool {
        within(&self.groups, e)
    }

    pub fn monomials(&self) -> &[Vec<u32>] {
        &self.monos
    }
}

fn within(groups: &[(Vec<usize>, u32)], e: &[u32]) -> bool {
    groups
        .iter()
        .all(|(g, cap)| g.iter().map(|&v| e.get(v).copied().unwrap_or(0)).sum::<u32>() <= *cap)
}

/// A power series in several variables truncated to a [`Shape`].
#[derive(Clone, Debug)]
pub struct MultiSeries {
    shape: Arc<Shape>,
    coeffs: Vec<Rat>,
}

impl PartialEq for MultiSeries {
    fn eq(&self, o: &Self) -> bool {
        self.shape.monos == o.shape.monos && self.coeffs == o.coeffs
    }
}

fn padded(e: &[u32], n: usize) -> Vec<u32> {
    let mut v = e.to_vec();
    v.resize(n, 0);
    v
}

impl MultiSeries {
    pub fn zero(shape: &Arc<Shape>) -> MultiSeries {
        MultiSeries {
            shape: shape.clone(),
            coeffs: vec![Rat::zero(); shape.len()],
        }
    }

    pub fn one(shape: &Arc<Shape>) -> MultiSeries {
        MultiSeries::from_poly(shape, &MPoly::one())
    }

    /// Truncation of a polynomial whose variable `i` is series variable `i`.
    pub fn from_poly(shape: &Arc<Shape>, p: &MPoly) -> MultiSeries {
        let mut s = MultiSeries::zero(shape);
        for (e, c) in p.terms() {
            assert!(e.len() <= shape.nvars, "polynomial has too many variables");
            if let Some(&i) = shape.index.get(&padded(e, shape.nvars)) {
                s.coeffs[i] = c.clone();
            }
        }
        s
    }

    pub fn shape(&self) -> &Arc<Shape> {
        &self.shape
    }

    /// Coefficient of a monomial inside the shape.
    pub fn coeff(&self, e: &[u32]) -> Result<Rat> {
        let key = padded(e, self.shape.nvars);
        match self.shape.index.get(&key) {
            Some(&i) => Ok(self.coeffs[i].clone()),
            None => Err(Error::BeyondPrecision {
                requested: key.iter().sum::<u32>() as i64,
                precision: -1,
            }),
        }
    }

    fn terms_of(&self, p: &MPoly) -> Vec<(Vec<u32>, Rat)> {
        p.terms()
            .map(|(e, c)| {
                assert!(e.len() <= self.shape.nvars, "polynomial has too many variables");
                (padded(e, self.shape.nvars), c.clone())
            })
            .collect()
    }

    fn lookup_minus(&self, m: &[u32], t: &[u32]) -> Option<usize> {
        let mut d = Vec::with_capacity(m.len());
        for (a, b) in m.iter().zip(t) {
            if a < b {
                return None;
            }
            d.push(a - b);
        }
        self.shape.index.get(&d).copied()
    }

    pub fn mul_poly(&self, p: &MPoly) -> MultiSeries {
        let terms = self.terms_of(p);
        let mut out = vec![Rat::zero(); self.coeffs.len()];
        for (i, m) in self.shape.monos.iter().enumerate() {
            let mut acc = Rat::zero();
            for (t, c) in &terms {
                if let Some(j) = self.lookup_minus(m, t) {
                    acc.add_mul(c, &self.coeffs[j]);
                }
            }
            out[i] = acc;
        }
        MultiSeries {
            shape: self.shape.clone(),
            coeffs: out,
        }
    }

    /// Divide by a polynomial with nonzero constant term.
    pub fn div_poly(&self, p: &MPoly) -> Result<MultiSeries> {
        let c0 = p.constant_term();
        let c0i = c0
            .inv()
            .ok_or_else(|| Error::IntegrandPole(format!("{p}")))?;
        let terms: Vec<_> = self
            .terms_of(p)
            .into_iter()
            .filter(|(t, _)| t.iter().any(|&x| x > 0))
            .collect();
        let mut out = vec![Rat::zero(); self.coeffs.len()];
        for (i, m) in self.shape.monos.iter().enumerate() {
            let mut acc = self.coeffs[i].clone();
            for (t, c) in &terms {
                if let Some(j) = self.lookup_minus(m, t) {
                    if !out[j].is_zero() {
                        acc -= c * &out[j];
                    }
                }
            }
            out[i] = acc * &c0i;
        }
        Ok(MultiSeries {
            shape: self.shape.clone(),
            coeffs: out,
        })
    }

    /// Multiply by `p^e` for any integer `e`.
    pub fn mul_poly_pow(&self, p: &MPoly, e: i64) -> Result<MultiSeries> {
        let mut s = self.clone();
        for _ in 0..e.unsigned_abs() {
            s = if e > 0 { s.mul_poly(p) } else { s.div_poly(p)? };
        }
        Ok(s)
    }

    pub fn mul(&self, o: &MultiSeries) -> MultiSeries {
        assert!(Arc::ptr_eq(&self.shape, &o.shape) || self.shape.monos == o.shape.monos);
        let mut out = vec![Rat::zero(); self.coeffs.len()];
        for (i, m) in self.shape.monos.iter().enumerate() {
            let mut acc = Rat::zero();
            for (j, t) in self.shape.monos.iter().enumerate() {
                if self.coeffs[j].is_zero() {
                    continue;
                }
                if let Some(k) = self.lookup_minus(m, t) {
                    acc.add_mul(&self.coeffs[j], &o.coeffs[k]);
                }
            }
            out[i] = acc;
        }
        MultiSeries {
            shape: self.shape.clone(),
            coeffs: out,
        }
    }

    pub fn add(&self, o: &MultiSeries) -> MultiSeries {
        MultiSeries {
            shape: self.shape.clone(),
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    /// Substitute a univariate series with positive valuation for each
    /// variable (variable `i` gets `subs[i]`), landing in `target`.
    pub fn substitute(&self, subs: &[Series<Rat>], target: &Arc<Shape>) -> Result<MultiSeries> {
        assert_eq!(subs.len(), self.shape.nvars);
        assert_eq!(target.nvars, self.shape.nvars);
        // powers of each substituted series as coefficient vectors
        let mut pows: Vec<Vec<Vec<Rat>>> = Vec::new();
        for (v, s) in subs.iter().enumerate() {
            if s.val() < 1 {
                return Err(Error::BadValuation {
                    expected: 1,
                    found: s.val(),
                });
            }
            let maxdeg = self.shape.monos.iter().map(|m| m[v]).max().unwrap_or(0);
            let tcap = target.monos.iter().map(|m| m[v]).max().unwrap_or(0) as i64;
            let mut list = Vec::new();
            let mut p = Series::<Rat>::one(s.var());
            for _ in 0..=maxdeg {
                list.push(p.coeff_range(0, tcap + 1)?);
                p = p.mul(s);
            }
            pows.push(list);
        }
        let mut out = MultiSeries::zero(target);
        for (i, m) in self.shape.monos.iter().enumerate() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            for (j, e) in target.monos.iter().enumerate() {
                let mut prod = c.clone();
                for v in 0..self.shape.nvars {
                    let f = &pows[v][m[v] as usize][e[v] as usize];
                    if f.is_zero() {
                        prod = Rat::zero();
                        break;
                    }
                    prod *= f;
                }
                if !prod.is_zero() {
                    out.coeffs[j] += prod;
                }
            }
        }
        Ok(out)
    }
}

/// All compositions of `n` into `k` ordered nonnegative parts.
pub fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=n {
        for mut rest in compositions(n - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn param_mul(a: &[Rat], b: &[Rat], cap: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); cap + 1];
    for (i, x) in a.iter().enumerate().take(cap + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(cap + 1 - i) {
            out[i + j].add_mul(x, y);
        }
    }
    out
}

/// `[h^n] Π Φ_i^{n_i} · Ψ` where every coefficient is itself a power series
/// in an auxiliary parameter truncated at degree `cap`.
///
/// `phi_pow[i][j]` is the parameter series of `[h_i^j] Φ_i^{n_i}` and
/// `psi(m)` the parameter series of `[h^m] Ψ`.
pub(crate) fn locus_term(
    comp: &[usize],
    phi_pow: &[&[Vec<Rat>]],
    psi: &(dyn Fn(&[u32]) -> Vec<Rat> + Sync),
    cap: usize,
) -> Vec<Rat> {
    let k = comp.len();
    let mut acc = vec![Rat::zero(); cap + 1];
    let mut m = vec![0u32; k];
    loop {
        let pm = psi(&m);
        if pm.iter().any(|c| !c.is_zero()) {
            let mut prod = pm;
            for i in 0..k {
                let row = &phi_pow[i][comp[i] - m[i] as usize];
                prod = param_mul(&prod, row, cap);
            }
            for (a, b) in acc.iter_mut().zip(prod) {
                *a += b;
            }
        }
        // next m in the box m <= comp
        let mut i = 0;
        loop {
            if i == k {
                return acc;
            }
            if (m[i] as usize) < comp[i] {
                m[i] += 1;
                break;
            }
            m[i] = 0;
            i += 1;
        }
    }
}

/// `Σ_n q^n Σ_{n_1+…+n_k=n} sign(n_•) [h^n] Φ_1^{n_1}…Φ_k^{n_k} Ψ` through `q^K`.
pub fn mv_extract(
    phis: &[Series<Rat>],
    psi: &MultiSeries,
    k_order: usize,
    sign: &(dyn Fn(&[usize]) -> Rat + Sync),
) -> Result<Series<Rat>> {
    let k = phis.len();
    assert_eq!(psi.shape().nvars(), k, "Ψ must have one variable per Φ");
    for (i, p) in phis.iter().enumerate() {
        if p.coeff(0)?.is_zero() || p.val() < 0 {
            return Err(Error::IntegrandPole(format!("Φ_{} has no constant term", i + 1)));
        }
    }
    let zero = vec![0u32; k];
    let mut top = zero.clone();
    if k > 0 {
        top[0] = k_order as u32;
    }
    if !psi.shape().contains(&top) {
        psi.coeff(&top)?;
    }
    // pows[i][n] = coefficients of Φ_i^n up to h^n
    let pows: Vec<Vec<Vec<Vec<Rat>>>> = phis
        .iter()
        .map(|p| {
            (0..=k_order as i64)
                .map(|n| {
                    let s = p.truncate(n + 1).pow_int(n)?;
                    Ok(s.coeff_range(0, n + 1)?.into_iter().map(|c| vec![c]).collect())
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let psi_fn = |m: &[u32]| vec![psi.coeff(m).unwrap_or_else(|_| Rat::zero())];
    let mut out = Vec::with_capacity(k_order + 1);
    for n in 0..=k_order {
        let comps = compositions(n, k);
        let terms: Vec<Rat> = comps
            .par_iter()
            .map(|c| {
                let rows: Vec<&[Vec<Rat>]> = (0..k).map(|i| pows[i][c[i]].as_slice()).collect();
                let t = locus_term(c, &rows, &psi_fn, 0);
                &t[0] * &sign(c)
            })
            .collect();
        out.push(terms.into_iter().sum());
    }
    Ok(Series::from_coeffs("q", 0, out, k_order as i64 + 1))
}

/// Checks the two-variable Lagrange–Bürmann identity
/// `Σ t1^n1 t2^n2 [h^n] Φ1^n1 Φ2^n2 Ψ = Ψ/K` with `t_i = h_i/Φ_i(h_i)` and
/// `K = Π (1 - h_i Φ_i'(h_i)/Φ_i(h_i))`, through total order `k_order`.
pub fn mv_lagrange_burmann_check(
    phi1: &Series<Rat>,
    phi2: &Series<Rat>,
    psi: &MultiSeries,
    k_order: usize,
) -> Result<bool> {
    let p = k_order as i64 + 1;
    let target = Shape::total(2, k_order as u32);
    // left side
    let phis = [phi1, phi2];
    let mut pows: Vec<Vec<Vec<Vec<Rat>>>> = Vec::new();
    for ph in phis {
        let mut list = Vec::new();
        for n in 0..=k_order as i64 {
            let s = ph.truncate(n + 1).pow_int(n)?;
            list.push(s.coeff_range(0, n + 1)?.into_iter().map(|c| vec![c]).collect());
        }
        pows.push(list);
    }
    let psi_fn = |m: &[u32]| vec![psi.coeff(m).unwrap_or_else(|_| Rat::zero())];
    let mut lhs = MultiSeries::zero(&target);
    for (idx, m) in target.monos.iter().enumerate() {
        let c = [m[0] as usize, m[1] as usize];
        let rows: Vec<&[Vec<Rat>]> = vec![pows[0][c[0]].as_slice(), pows[1][c[1]].as_slice()];
        lhs.coeffs[idx] = locus_term(&c, &rows, &psi_fn, 0).swap_remove(0);
    }
    // right side
    let mut subs = Vec::new();
    let mut kinv = Vec::new();
    for ph in phis {
        let ph = ph.truncate(p + 1).with_var("h");
        let t_of_h = Series::<Rat>::gen("h").div(&ph)?;
        let h_of_t = t_of_h.reversion()?.with_var("t");
        let kh = Series::<Rat>::one("h").sub(&Series::gen("h").mul(&ph.derivative()).div(&ph)?);
        kinv.push(kh.compose(&h_of_t)?.inv()?);
        subs.push(h_of_t);
    }
    let mut rhs = psi.substitute(&subs, &target)?;
    for (v, ki) in kinv.iter().enumerate() {
        let mut e = vec![0u32; 2];
        let mut terms = MPoly::zero();
        for j in 0..=k_order as i64 {
            e[v] = j as u32;
            terms = terms.add(&MPoly::monomial(e.clone(), ki.coeff(j)?));
        }
        rhs = rhs.mul(&MultiSeries::from_poly(&target, &terms));
    }
    Ok(lhs == rhs)
}
