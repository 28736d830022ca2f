//! Brute-force torus localization over `P^1` for Quot scheme integrals.
//!
//! Fixed loci are products of projective spaces `P^{n_1} × … × P^{n_k}` and
//! their contributions are coefficients `[h^n] Φ_1^{n_1}…Φ_k^{n_k} Ψ`. The
//! weights enter only through a direction `c`: we put `w = ε c`, rescale
//! `h → ε h` and read off the part of the equivariant integral that carries
//! no weight. Every factor of the integrands is affine in `(h, w)`, so after
//! rescaling it is either `1 + ε·(affine)` or `ε·(affine)`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact_algebra::{MPoly, Rat, Ring};
use crate::power_series::{compositions, locus_term, MultiSeries, Series, Shape, EXACT};

/// Equivariant weights `w_1..w_N`, used as the direction of the torus action.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightVector(Vec<Rat>);

impl WeightVector {
    pub fn new(values: Vec<Rat>) -> Result<WeightVector> {
        for (i, a) in values.iter().enumerate() {
            for b in &values[i + 1..] {
                let d = a - b;
                if d.is_zero() || d == Rat::one() || d == -Rat::one() {
                    return Err(Error::InvalidWeights(format!(
                        "weights {a} and {b} differ by {d}"
                    )));
                }
            }
        }
        Ok(WeightVector(values))
    }

    /// `w_i = 2i`.
    pub fn standard(n: usize) -> WeightVector {
        WeightVector((1..=n as i64).map(|i| Rat::int(2 * i)).collect())
    }

    /// `w_i = 3i + 1`.
    pub fn secondary(n: usize) -> WeightVector {
        WeightVector((1..=n as i64).map(|i| Rat::int(3 * i + 1)).collect())
    }

    pub fn values(&self) -> &[Rat] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if self.0.len() != n {
            return Err(Error::InvalidWeights(format!(
                "expected {n} weights, got {}",
                self.0.len()
            )));
        }
        Ok(())
    }
}

/// One fixed locus: the partition, its sign and the weight-free value of
/// `∫ Φ^n Ψ` over `P^{n_1} × … × P^{n_k}`.
#[derive(Clone, Debug, PartialEq)]
pub struct LocusContribution {
    pub partition: Vec<usize>,
    pub sign: i8,
    pub value: Rat,
}

/// `(unit + Σ b_v h_v + w)^exp` with `unit` either 0 or 1.
#[derive(Clone, Debug)]
struct Factor {
    unit: bool,
    h: Vec<(usize, i64)>,
    w: Rat,
    exp: i64,
}

fn unit(h: &[(usize, i64)], w: Rat, exp: i64) -> Factor {
    Factor { unit: true, h: h.to_vec(), w, exp }
}

fn homog(h: &[(usize, i64)], w: Rat, exp: i64) -> Factor {
    Factor { unit: false, h: h.to_vec(), w, exp }
}

/// Integrand data for fixed loci in `k` hyperplane classes.
struct Integrand {
    k: usize,
    phis: Vec<Vec<Factor>>,
    psi: Vec<Factor>,
}

/// `ε`-series of a `[h^n]` coefficient, truncated at `ε^cap`.
type EpsVec = Vec<Rat>;

struct Prepared {
    // pows[i][n][d]: ε-coefficients of [h_i^d] Φ_i^n
    pows: Vec<Vec<Vec<EpsVec>>>,
    psi: MultiSeries,
    cap: usize,
}

impl Integrand {
    fn homog_exp(fs: &[Factor]) -> i64 {
        fs.iter().filter(|f| !f.unit).map(|f| f.exp).sum()
    }

    /// The power of `ε` pulled out of a composition, minus `|n|` for the
    /// rescaled classes.
    fn shift(&self, comp: &[usize]) -> i64 {
        let mut s = Integrand::homog_exp(&self.psi);
        for (i, &n) in comp.iter().enumerate() {
            s += n as i64 * (Integrand::homog_exp(&self.phis[i]) - 1);
        }
        s
    }

    fn prepare(&self, max_n: usize, cap: usize) -> Result<Prepared> {
        let ep = cap as i64 + 1;
        let eps = |c: Vec<Rat>| Series::from_coeffs("eps", 0, c, EXACT).truncate(ep);
        let mut pows = Vec::with_capacity(self.k);
        for (i, fs) in self.phis.iter().enumerate() {
            let hp = max_n as i64 + 1;
            let mut phi = Series::<Series<Rat>>::one("h").truncate(hp);
            for f in fs {
                let b = f.h.iter().filter(|(v, _)| *v == i).map(|(_, b)| *b).sum::<i64>();
                let (c0, c1) = if f.unit {
                    (eps(vec![Rat::one(), f.w.clone()]), eps(vec![Rat::zero(), Rat::int(b)]))
                } else {
                    (eps(vec![f.w.clone()]), eps(vec![Rat::int(b)]))
                };
                let lin = Series::from_coeffs("h", 0, vec![c0, c1], EXACT).truncate(hp);
                let p = lin.pow_int(f.exp).map_err(|_| {
                    Error::IntegrandPole(format!("factor of Φ_{} vanishes at h = 0", i + 1))
                })?;
                phi = phi.mul(&p);
            }
            let mut row = Vec::with_capacity(max_n + 1);
            for n in 0..=max_n {
                let pw = phi.truncate(n as i64 + 1).pow_int(n as i64)?;
                let mut coeffs = Vec::with_capacity(n + 1);
                for d in 0..=n as i64 {
                    coeffs.push(pw.coeff(d)?.coeff_range(0, ep)?);
                }
                row.push(coeffs);
            }
            pows.push(row);
        }
        // Ψ over (ε, h_1..h_k)
        let shape = Shape::new(
            self.k + 1,
            vec![(vec![0], cap as u32), ((1..=self.k).collect(), max_n as u32)],
        );
        let mut psi = MultiSeries::one(&shape);
        for f in &self.psi {
            let mut p = MPoly::zero();
            let scale = if f.unit {
                p = MPoly::one();
                MPoly::var(0)
            } else {
                MPoly::one()
            };
            let mut lin = MPoly::constant(f.w.clone());
            for &(v, b) in &f.h {
                lin = lin.add(&MPoly::var(v + 1).scale(&Rat::int(b)));
            }
            p = p.add(&scale.mul(&lin));
            psi = psi.mul_poly_pow(&p, f.exp)?;
        }
        Ok(Prepared { pows, psi, cap })
    }
}

impl Prepared {
    /// `ε`-coefficients of `[h^comp] Π Φ_i^{n_i} Ψ` after rescaling, up to `ε^cap`.
    fn term(&self, comp: &[usize], cap: usize) -> EpsVec {
        assert!(cap <= self.cap);
        let k = comp.len();
        let rows: Vec<&[EpsVec]> = (0..k).map(|i| self.pows[i][comp[i]].as_slice()).collect();
        let psi = |m: &[u32]| -> Vec<Rat> {
            let mut e = vec![0u32; k + 1];
            e[1..].copy_from_slice(m);
            (0..=cap as u32)
                .map(|d| {
                    e[0] = d;
                    self.psi.coeff(&e).unwrap_or_else(|_| Rat::zero())
                })
                .collect()
        };
        locus_term(comp, &rows, &psi, cap)
    }
}

fn sign_rat(e: i64) -> Rat {
    Rat::sign_pow(e)
}

fn binom2(n: usize) -> i64 {
    (n * n.saturating_sub(1) / 2) as i64
}

/// Weight-free values of every fixed locus with `|n| = n`.
fn weight_free_terms(ig: &Integrand, n: usize, prep: &Prepared) -> Vec<(Vec<usize>, Rat)> {
    compositions(n, ig.k)
        .into_par_iter()
        .map(|c| {
            let need = -ig.shift(&c);
            let v = if need < 0 {
                Rat::zero()
            } else {
                prep.term(&c, need as usize)[need as usize].clone()
            };
            (c, v)
        })
        .collect()
}

fn weight_free_series(ig: &Integrand, k_order: usize, sign: impl Fn(usize) -> Rat) -> Result<Series<Rat>> {
    let cap = (0..=k_order)
        .flat_map(|n| compositions(n, ig.k).into_iter().map(|c| -ig.shift(&c)))
        .max()
        .unwrap_or(0)
        .max(0) as usize;
    let prep = ig.prepare(k_order, cap)?;
    let mut out = Vec::with_capacity(k_order + 1);
    for n in 0..=k_order {
        let s: Rat = weight_free_terms(ig, n, &prep).into_iter().map(|(_, v)| v).sum();
        out.push(s * sign(n));
    }
    Ok(Series::from_coeffs("q", 0, out, k_order as i64 + 1))
}

fn euler_integrand(c: &[Rat]) -> Integrand {
    let n = c.len();
    let mut phis = Vec::with_capacity(n);
    for i in 0..n {
        let mut fs = Vec::new();
        for j in 0..n {
            fs.push(unit(&[(i, -1)], &c[i] - &c[j], 1));
            if j != i {
                fs.push(homog(&[(i, 1)], &c[j] - &c[i], -1));
            }
        }
        phis.push(fs);
    }
    let mut psi = Vec::new();
    for i in 0..n {
        psi.push(unit(&[(i, 1)], Rat::zero(), 1));
        for j in 0..n {
            if j == i {
                continue;
            }
            if i < j {
                psi.push(homog(&[(i, 1), (j, -1)], &c[j] - &c[i], 2));
            }
            psi.push(unit(&[(i, 1)], &c[j] - &c[i], 1));
            psi.push(unit(&[(i, 1), (j, -1)], &c[j] - &c[i], -1));
            psi.push(homog(&[(i, 1)], &c[j] - &c[i], -1));
        }
    }
    Integrand { k: n, phis, psi }
}

fn segre_integrand(c: &[Rat], degrees: &[i64]) -> Integrand {
    let n = c.len();
    let r = degrees.len() as i64;
    let mut phis = Vec::with_capacity(n);
    for i in 0..n {
        let mut fs = vec![unit(&[(i, -1)], c[i].clone(), -r)];
        for j in 0..n {
            if j != i {
                fs.push(homog(&[(i, 1)], &c[j] - &c[i], -1));
            }
        }
        phis.push(fs);
    }
    let mut psi = Vec::new();
    for i in 0..n {
        for &d in degrees {
            psi.push(unit(&[], -c[i].clone(), -(d + 1)));
            psi.push(unit(&[(i, -1)], c[i].clone(), d + 1));
        }
        for j in 0..n {
            if j != i {
                psi.push(homog(&[(i, 1)], &c[j] - &c[i], -1));
            }
            if i < j {
                psi.push(homog(&[(i, 1), (j, -1)], &c[j] - &c[i], 2));
            }
        }
    }
    Integrand { k: n, phis, psi }
}

/// `Σ q^n ∫_{Quot_{P^1}(C^N, n)} s(V^{[n]})` for `V = ⊕ O(d_a)`.
pub fn oracle_segre(n_rank: usize, degrees: &[i64], k_order: usize, w: &WeightVector) -> Result<Series<Rat>> {
    w.check_len(n_rank)?;
    let ig = segre_integrand(w.values(), degrees);
    let nn = n_rank as i64;
    weight_free_series(&ig, k_order, |n| sign_rat((nn - 1) * n as i64 + binom2(n_rank)))
}

/// `U_N^{-1} = Σ (-q)^n ∫ c(T Quot) c(T_n)`.
pub fn oracle_euler(n_rank: usize, k_order: usize, w: &WeightVector) -> Result<Series<Rat>> {
    w.check_len(n_rank)?;
    let ig = euler_integrand(w.values());
    let nn = n_rank as i64;
    weight_free_series(&ig, k_order, |n| {
        sign_rat(n as i64 + (nn - 1) * n as i64 + binom2(n_rank))
    })
}

/// The signed fixed-locus values behind `[q^n]` of [`oracle_euler`].
pub fn euler_contributions(n_rank: usize, n: usize, w: &WeightVector) -> Result<Vec<LocusContribution>> {
    w.check_len(n_rank)?;
    let ig = euler_integrand(w.values());
    let prep = ig.prepare(n, n_rank * n)?;
    let s = n as i64 * (n_rank as i64 - 1) + binom2(n_rank);
    let sign = if s % 2 == 0 { 1 } else { -1 };
    Ok(weight_free_terms(&ig, n, &prep)
        .into_iter()
        .map(|(partition, value)| LocusContribution { partition, sign, value })
        .collect())
}

fn general_type_integrand(c: &[Rat], curve: &[usize], rest: &[usize]) -> Integrand {
    let k = rest.len();
    let mut phis = Vec::with_capacity(k);
    for (j, &pj) in rest.iter().enumerate() {
        let mut fs = Vec::new();
        for (a, ca) in c.iter().enumerate() {
            fs.push(unit(&[(j, -1)], &c[pj] - ca, 1));
            if a != pj {
                fs.push(homog(&[(j, 1)], ca - &c[pj], -1));
            }
        }
        phis.push(fs);
    }
    let mut psi = Vec::new();
    for (j, &pj) in rest.iter().enumerate() {
        for (j2, &pj2) in rest.iter().enumerate() {
            let d = &c[pj2] - &c[pj];
            if j2 < j {
                psi.push(homog(&[(j, 1), (j2, -1)], d.clone(), 2));
            }
            psi.push(unit(&[(j, 1)], d.clone(), 1));
            if j2 != j {
                psi.push(unit(&[(j, 1), (j2, -1)], d.clone(), -1));
                psi.push(homog(&[(j, 1)], d, -1));
            }
        }
        for &i in curve {
            let d = &c[i] - &c[pj];
            psi.push(unit(&[(j, 1)], d.clone(), 1));
            psi.push(homog(&[(j, 1)], d.clone(), -1));
            psi.push(homog(&[], d.clone(), 1));
            psi.push(unit(&[], d, -1));
        }
    }
    Integrand { k, phis, psi }
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

type EpsSeries = Series<Rat>;

/// `Ã_S = Π_{i∈S, j∉S} (1 + w_i - w_j)/(w_i - w_j) · A_S((-1)^{ℓ+1} q)` with
/// `ε`-Laurent coefficients known to absolute precision `e_prec`.
fn a_tilde(c: &[Rat], curve: &[usize], m_order: usize, e_prec: i64) -> Result<Series<EpsSeries>> {
    let rest: Vec<usize> = (0..c.len()).filter(|a| !curve.contains(a)).collect();
    let k = rest.len();
    let ig = general_type_integrand(c, curve, &rest);
    let caps: Vec<i64> = (0..=m_order)
        .map(|m| {
            let s = compositions(m, k).first().map(|cc| ig.shift(cc)).unwrap_or(0);
            e_prec - s - 1
        })
        .collect();
    let cap = caps.iter().copied().max().unwrap_or(0).max(0) as usize;
    let prep = ig.prepare(m_order, cap)?;
    let mut coeffs = Vec::with_capacity(m_order + 1);
    for (m, &cm) in caps.iter().enumerate() {
        let comps = compositions(m, k);
        let sign = sign_rat(m as i64 * (k as i64 - 1) + binom2(k));
        let parts: Vec<EpsSeries> = comps
            .par_iter()
            .map(|cc| {
                let s = ig.shift(cc);
                let v = if cm < 0 { vec![] } else { prep.term(cc, cm as usize) };
                Series::from_coeffs("eps", s, v, e_prec)
            })
            .collect();
        let mut acc = EpsSeries::zero("eps", e_prec);
        for p in parts {
            acc = acc.add(&p);
        }
        coeffs.push(acc.scale(&sign));
    }
    let a = Series::from_coeffs("q", 0, coeffs, m_order as i64 + 1);
    let a = a.subs_scale(&EpsSeries::from_rat(&sign_rat(curve.len() as i64 + 1)))?;
    // prefactor, Laurent in ε
    let mut pref = EpsSeries::one("eps").truncate(e_prec + 2 * (curve.len() * k) as i64);
    for &i in curve {
        for &j in &rest {
            let d = &c[i] - &c[j];
            let num = Series::from_coeffs("eps", 0, vec![Rat::one(), d.clone()], EXACT);
            pref = pref.mul(&num).scale(&d.inv().expect("distinct weights")).shift(-1);
        }
    }
    Ok(a.mul_scalar(&pref))
}

/// Virtual Euler series of `Quot_X(C^N, ℓ K_X, n)` for a minimal surface of
/// general type with a smooth canonical curve of genus `g`, by localization.
/// The result is a Laurent series starting at `q^{ℓ(1-g)}` and known through
/// `q^K`.
pub fn oracle_general_type(
    n_rank: usize,
    l: usize,
    g: i64,
    chi: i64,
    k_order: i64,
    w: &WeightVector,
) -> Result<Series<Rat>> {
    w.check_len(n_rank)?;
    if l > n_rank {
        return Err(Error::Unsupported(format!("ℓ = {l} exceeds N = {n_rank}")));
    }
    let low = l as i64 * (1 - g);
    if k_order < low {
        return Ok(Series::zero("q", k_order + 1));
    }
    let m_order = (k_order - low) as usize;
    let mut e_prec = 4 * n_rank as i64 + 4;
    loop {
        let mut total = Series::<EpsSeries>::zero("q", m_order as i64 + 1);
        for s in subsets(n_rank, l) {
            let at = a_tilde(w.values(), &s, m_order, e_prec)?;
            total = total.add(&at.pow_int(1 - g)?);
        }
        let got: Result<Vec<Rat>> = (0..=m_order as i64)
            .map(|m| total.coeff(m)?.coeff(0))
            .collect();
        match got {
            Ok(v) => {
                let z = Series::from_coeffs("q", 0, v, m_order as i64 + 1);
                return Ok(z.scale(&sign_rat(l as i64 * chi)).shift(low));
            }
            Err(Error::BeyondPrecision { .. }) if e_prec < 1 << 12 => e_prec *= 2,
            Err(e) => return Err(e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve_quot::{b_binomial_sum, segre_p1_closed};
    use crate::power_series::mv_extract;

    fn ints(c: &[i64]) -> Series<Rat> {
        Series::from_ints("q", 0, c, c.len() as i64)
    }

    #[test]
    fn weight_validation() {
        assert!(WeightVector::new(vec![Rat::int(1), Rat::int(2)]).is_err());
        assert!(WeightVector::new(vec![Rat::int(3), Rat::int(3)]).is_err());
        assert!(WeightVector::new(vec![Rat::int(2), Rat::int(4)]).is_ok());
        assert!(oracle_euler(2, 2, &WeightVector::standard(3)).is_err());
    }

    #[test]
    fn segre_examples() {
        let w1 = WeightVector::standard(1);
        assert_eq!(oracle_segre(1, &[0], 4, &w1).unwrap(), ints(&[1, 0, 1, 4, 15]));
        let w2 = WeightVector::standard(2);
        assert_eq!(oracle_segre(2, &[0], 3, &w2).unwrap(), ints(&[1, 0, 3, -20]));
        assert_eq!(oracle_segre(2, &[1], 1, &w2).unwrap().coeff(1).unwrap(), Rat::int(2));
    }

    #[test]
    fn segre_matches_corollaries() {
        for n in 1..=3usize {
            let w = WeightVector::standard(n);
            for d in -2..=2 {
                let s = oracle_segre(n, &[d], 5, &w).unwrap();
                for k in 0..=5 {
                    assert_eq!(s.coeff(k as i64).unwrap(), segre_p1_closed(n as u32, d, k), "N={n} d={d} n={k}");
                }
            }
            assert_eq!(oracle_segre(n, &[0], 5, &w).unwrap(), b_binomial_sum(n as u32, 5));
        }
    }

    #[test]
    fn euler_examples() {
        let e1 = oracle_euler(1, 4, &WeightVector::standard(1)).unwrap();
        assert_eq!(e1, ints(&[1, 0, -1, -2, -3]));
        let e2 = oracle_euler(2, 3, &WeightVector::standard(2)).unwrap();
        assert_eq!(e2, ints(&[1, 0, 2, 24]));
    }

    #[test]
    fn weight_directions_agree() {
        for n in 1..=3 {
            let a = oracle_euler(n, 4, &WeightVector::standard(n)).unwrap();
            let b = oracle_euler(n, 4, &WeightVector::secondary(n)).unwrap();
            assert_eq!(a, b);
            let a = oracle_segre(n, &[1, -1], 4, &WeightVector::standard(n)).unwrap();
            let b = oracle_segre(n, &[1, -1], 4, &WeightVector::secondary(n)).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn contributions_sum_to_coefficient() {
        let w = WeightVector::standard(2);
        let cs = euler_contributions(2, 3, &w).unwrap();
        assert_eq!(cs.len(), 4);
        let total: Rat = cs.iter().map(|c| c.value.clone() * Rat::int(c.sign as i64)).sum();
        // (-1)^3 from (-q)^n
        assert_eq!(-total, Rat::int(24));
    }

    #[test]
    fn general_type_examples() {
        let w = WeightVector::standard(2);
        let top = oracle_general_type(2, 2, 2, 3, 0, &w).unwrap();
        assert_eq!(top, Series::from_ints("q", -2, &[1, 0, 0], 1));
        let top = oracle_general_type(1, 1, 3, 3, 2, &WeightVector::standard(1)).unwrap();
        assert_eq!(top, Series::from_ints("q", -2, &[-1, 0, 0, 0, 0], 3));
        // the q^{ℓ(1-g)} coefficient vanishes here
        let z = oracle_general_type(2, 1, 2, 4, 2, &w).unwrap();
        assert_eq!(z, Series::from_ints("q", 0, &[-8, -48, -256], 3));
        let z = oracle_general_type(2, 1, 2, 5, 2, &w).unwrap();
        assert_eq!(z, Series::from_ints("q", 0, &[8, 48, 256], 3));
        // genus 3: (128q^4 - 64q^3 + 8q^2 - 16q + 8)/(q(1-4q)^4)
        let z = oracle_general_type(2, 1, 3, 2, 3, &w).unwrap();
        let num = Series::from_ints("q", -1, &[8, -16, 8, -64, 128], 4);
        let den = Series::from_ints("q", 0, &[1, -4], EXACT).truncate(5).pow_int(4).unwrap();
        assert_eq!(z, num.div(&den).unwrap());
    }

    #[test]
    fn general_type_l0_is_euler_power() {
        for n in 1..=2 {
            let w = WeightVector::standard(n);
            let inv_u = oracle_euler(n, 5, &w).unwrap();
            let z = oracle_general_type(n, 0, 3, 1, 5, &w).unwrap();
            assert_eq!(z, inv_u.pow_int(-2).unwrap());
        }
    }

    /// The literal equivariant total at numeric weights is not weight-free:
    /// for `N = 2` Segre it agrees with the closed form that keeps `w`.
    #[test]
    fn numeric_weights_keep_weight_dependence() {
        let (w1, w2) = (Rat::int(2), Rat::int(4));
        let k = 5;
        let lin = |a: Rat, b: i64| Series::from_coeffs("h", 0, vec![a, Rat::int(b)], EXACT).truncate(k + 2);
        let one = Rat::one();
        let phi1 = lin(&one + &w1, -1).mul(&lin(&w2 - &w1, 1)).inv().unwrap();
        let phi2 = lin(&one + &w2, -1).mul(&lin(&w1 - &w2, 1)).inv().unwrap();
        let shape = Shape::boxed(2, k as u32);
        let h1 = MPoly::var(0);
        let h2 = MPoly::var(1);
        let c = |r: &Rat| MPoly::constant(r.clone());
        let psi = MultiSeries::one(&shape)
            .mul_poly(&c(&(&one + &w1)).sub(&h1))
            .mul_poly(&c(&(&one + &w2)).sub(&h2))
            .div_poly(&c(&(&w2 - &w1)).add(&h1))
            .unwrap()
            .div_poly(&c(&(&w1 - &w2)).add(&h2))
            .unwrap()
            .mul_poly_pow(&h1.sub(&h2).add(&c(&(&w2 - &w1))), 2)
            .unwrap();
        let pref = ((&one - &w1) * (&one - &w2)).inv().unwrap();
        let sign = |p: &[usize]| Rat::sign_pow(p.iter().sum::<usize>() as i64 + 1);
        let b_num = mv_extract(&[phi1, phi2], &psi, k as usize, &sign).unwrap().scale(&pref);
        // closed form with weights, in terms of the two roots of -q = h(1-h+w1)(h+w2-w1)
        let cubic = |shift: &Rat| {
            // h = shift + u, solve -q = f(u) with f(0) = 0
            let hh = Series::from_coeffs("u", 0, vec![shift.clone(), one.clone()], EXACT);
            let f = hh
                .mul(&Series::from_coeffs("u", 0, vec![&one + &w1 - shift, -one.clone()], EXACT))
                .mul(&Series::from_coeffs("u", 0, vec![&w2 - &w1 + shift, one.clone()], EXACT))
                .neg()
                .truncate(k + 2);
            let u = f.reversion().unwrap().with_var("q");
            u.add(&Series::constant("q", shift.clone()))
        };
        let big_h1 = cubic(&Rat::zero());
        let big_h2 = cubic(&(&w1 - &w2));
        let cq = |r: Rat| Series::constant("q", r);
        let num = cq(&one + &w1)
            .sub(&big_h1)
            .pow_int(2)
            .unwrap()
            .mul(&cq(&one + &w1).sub(&big_h2).pow_int(2).unwrap())
            .mul(&big_h1.sub(&big_h2).pow_int(2).unwrap());
        let den_i = |h: &Series<Rat>| {
            h.mul(h)
                .scale(&Rat::int(3))
                .sub(&h.scale(&(Rat::int(2) * (&one + &(Rat::int(2) * &w1) - &w2))))
                .add(&cq((&one + &w1) * (&w1 - &w2)))
        };
        let closed = num
            .div(&den_i(&big_h1).mul(&den_i(&big_h2)))
            .unwrap()
            .scale(&pref)
            .neg()
            .truncate(k + 1);
        assert_eq!(b_num, closed);
        // and it is not the weight-free series
        assert_ne!(b_num, b_binomial_sum(2, k as usize).truncate(k + 1));
    }

    #[test]
    fn rank_two_closed_form_matches_oracle() {
        let closed = crate::curve_quot::b22_closed_form(6).unwrap();
        let oracle = oracle_segre(2, &[0, 0], 6, &WeightVector::standard(2)).unwrap();
        assert_eq!(closed, oracle);
    }

    #[test]
    fn higher_rank_curve_series_match_oracle() {
        use crate::curve_quot::{z_curve_numeric, CurveSpec, KClass};
        for n in 2..=3u32 {
            for d in -1..=2 {
                let spec = CurveSpec { genus: 0, n, classes: vec![KClass::plain(1, d)] };
                let z = z_curve_numeric(&spec, 4).unwrap();
                let w = WeightVector::standard(n as usize);
                assert_eq!(z, oracle_segre(n as usize, &[d], 4, &w).unwrap(), "N={n} d={d}");
            }
        }
    }
}
