//! Generating series for Quot schemes of surfaces, built from the curve series.

use crate::curve_quot::{a_universal, ab_closed_rank1, curve_series_generic, Twist};
use crate::error::{Error, Result};
use crate::exact_algebra::{MPoly, Rat, Ring};
use crate::kawai_yoshioka::ky_table;
use crate::power_series::{Series, EXACT};
use crate::root_calculus::{general_type_series, u_series};

/// A class on the surface, recorded only through its rank and `c_1(α)·K`.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceClass {
    pub rank: i64,
    pub pairing: i64,
    pub twist: Twist,
}

impl SurfaceClass {
    pub fn plain(rank: i64, pairing: i64) -> SurfaceClass {
        SurfaceClass { rank, pairing, twist: Twist::Value(Rat::one()) }
    }

    fn twist_poly(&self) -> MPoly {
        match &self.twist {
            Twist::Value(r) => MPoly::constant(r.clone()),
            Twist::Formal(i) => MPoly::var(*i),
        }
    }
}

/// Numerical data of a surface: `K²`, `χ(O_X)` and the classes.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceSpec {
    pub ksq: i64,
    pub chi: i64,
    pub classes: Vec<SurfaceClass>,
}

/// `Z_X = Π A_i(-q)^{c_1(α_i)·K} · B(-q)^{-K²}` through `q^K`.
///
/// For `N > 1` only a single class is supported, and `B` only for rank 1.
/// A twist `x` enters through `q -> x^N q`.
pub fn z_surface(spec: &SurfaceSpec, n: u32, k: usize) -> Result<Series<MPoly>> {
    let p = k as i64 + 1;
    let minus = MPoly::from_i64(-1);
    if spec.classes.is_empty() {
        return Ok(Series::one("q").truncate(p));
    }
    if n == 1 {
        let classes: Vec<(i64, i64, MPoly)> = spec
            .classes
            .iter()
            .map(|c| (c.rank, c.pairing, c.twist_poly()))
            .collect();
        let t1 = curve_series_generic(1 + spec.ksq, &classes, k)?;
        return t1.z.subs_scale(&minus);
    }
    let [class] = spec.classes.as_slice() else {
        return Err(Error::Unsupported(format!(
            "{} classes with N = {n}: no curve series known",
            spec.classes.len()
        )));
    };
    let (a, b) = if class.rank == 1 {
        let (a, b) = ab_closed_rank1(n, k)?;
        (a, Some(b))
    } else {
        (a_universal(class.rank, n as i64, k)?, None)
    };
    let mut z = a.pow_int(class.pairing)?;
    if spec.ksq != 0 {
        let b = b.ok_or_else(|| {
            Error::Unsupported(format!("B is unknown for rank {} and N = {n}", class.rank))
        })?;
        z = z.mul(&b.pow_int(-spec.ksq)?);
    }
    let z = z.map_coeffs(|c| MPoly::constant(c.clone())).truncate(p);
    let scale = class.twist_poly().pow_u(n as u64).mul(&minus);
    z.subs_scale(&scale)
}

/// Virtual Euler characteristics in dimension 0: `U_N^{K²}`.
pub fn euler_dim0(n: u32, ksq: i64, k: usize) -> Result<Series<Rat>> {
    u_series(n, k)?.pow_int(ksq)
}

/// `((1-q)(1-yq)/(1-q-qy))^{K²}`; coefficients are polynomials in `y = x_1`.
pub fn chi_y_virtual(ksq: i64, k: usize) -> Result<Series<MPoly>> {
    let p = k as i64 + 1;
    let y = MPoly::var(0);
    let one = MPoly::one();
    let num = Series::poly("q", vec![one.clone(), one.add(&y).neg(), y.clone()]).truncate(p);
    let den = Series::poly("q", vec![one.clone(), one.add(&y).neg()]);
    num.div(&den)?.pow_int(ksq)
}

/// `(1-q)^{M²} ((1-q)/(1-2q))^{M·K}`.
pub fn z_xm(msq: i64, mk: i64, k: usize) -> Result<Series<Rat>> {
    let p = k as i64 + 1;
    let u = Series::from_ints("q", 0, &[1, -1], EXACT).truncate(p);
    let v = u.div(&Series::from_ints("q", 0, &[1, -2], EXACT))?;
    Ok(u.pow_int(msq)?.mul(&v.pow_int(mk)?))
}

/// `q · ((1-q)²/(1-2q))^{K²+1}`, through `q^K`.
pub fn blowup_series(ksq: i64, k: usize) -> Result<Series<Rat>> {
    let inner = euler_dim0(1, ksq + 1, k.saturating_sub(1))?;
    Ok(inner.shift(1).truncate(k as i64 + 1))
}

/// The Seiberg–Witten point value `(-1)^{χ(O_X)}`.
pub fn sw_value(chi: i64) -> Rat {
    Rat::sign_pow(chi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EulerKind {
    Curve { n: u32, genus: i64 },
    Surface { n: u32, chi_top: i64 },
}

/// Topological Euler characteristics of the Quot schemes.
pub fn topological_euler(kind: EulerKind, k: usize) -> Result<Series<Rat>> {
    let p = k as i64 + 1;
    match kind {
        EulerKind::Curve { n, genus } => Series::from_ints("q", 0, &[1, -1], EXACT)
            .truncate(p)
            .pow_int(n as i64 * (2 * genus - 2)),
        EulerKind::Surface { n, chi_top } => {
            let mut prod = Series::<Rat>::one("q").truncate(p);
            for m in 1..=k as i64 {
                let f = Series::from_coeffs("q", 0, {
                    let mut c = vec![Rat::zero(); m as usize + 1];
                    c[0] = Rat::one();
                    c[m as usize] = Rat::int(-1);
                    c
                }, EXACT);
                prod = prod.mul(&f);
            }
            prod.pow_int(-(n as i64) * chi_top)
        }
    }
}

/// Reduced Euler characteristics of `Hilb^n(K3)`: `24q/(1-q)²`.
pub fn k3_reduced_hilb(k: usize) -> Result<Series<Rat>> {
    let p = k as i64 + 1;
    let den = Series::from_ints("q", 0, &[1, -2, 1], EXACT);
    Series::from_ints("q", 1, &[24], EXACT).truncate(p).div(&den)
}

/// Reduced Euler characteristic of the rank-one Quot scheme of a K3 with a
/// primitive class of genus `g`: the number `N_{g,n}`.
pub fn k3_reduced_quot(g: i64, n: i64) -> Result<Rat> {
    if g < 0 {
        return Err(Error::OutOfTableRange { g, n });
    }
    if n < 1 - g {
        return Ok(Rat::zero());
    }
    let table = ky_table(g as usize, n as usize)?;
    Ok(Rat::from_bigints(table.get(g, n)?, 1.into()))
}

/// The general type series; see [`general_type_series`].
pub fn general_type_z(n: u32, l: u32, g: i64, chi: i64, k: i64) -> Result<Series<Rat>> {
    general_type_series(n, l, g, chi, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve_quot::{z_curve_formal, CurveSpec, KClass};
    use proptest::prelude::*;

    fn ints(val: i64, c: &[i64], prec: i64) -> Series<Rat> {
        Series::from_ints("q", val, c, prec)
    }

    fn numeric(s: &Series<MPoly>) -> Series<Rat> {
        s.map_coeffs(|c| c.as_constant().expect("numeric twists"))
    }

    #[test]
    fn k3_has_trivial_series() {
        let spec = SurfaceSpec {
            ksq: 0,
            chi: 2,
            classes: vec![SurfaceClass::plain(1, 0), SurfaceClass::plain(-2, 0)],
        };
        assert_eq!(numeric(&z_surface(&spec, 1, 6).unwrap()), ints(0, &[1], 7));
        let one = SurfaceSpec { classes: vec![SurfaceClass::plain(1, 0)], ..spec };
        assert_eq!(numeric(&z_surface(&one, 2, 6).unwrap()), ints(0, &[1], 7));
    }

    #[test]
    fn rank_one_higher_n_uses_closed_forms() {
        let spec = SurfaceSpec { ksq: 2, chi: 1, classes: vec![SurfaceClass::plain(1, 3)] };
        let z = numeric(&z_surface(&spec, 2, 6).unwrap());
        let (a, b) = ab_closed_rank1(2, 6).unwrap();
        let expect = a
            .pow_int(3)
            .unwrap()
            .mul(&b.pow_int(-2).unwrap())
            .subs_scale(&Rat::int(-1))
            .unwrap();
        assert_eq!(z, expect);
        let bad = SurfaceSpec { ksq: 1, chi: 1, classes: vec![SurfaceClass::plain(2, 1)] };
        assert!(matches!(z_surface(&bad, 3, 4), Err(Error::Unsupported(_))));
        let two = SurfaceSpec {
            ksq: 0,
            chi: 1,
            classes: vec![SurfaceClass::plain(1, 1), SurfaceClass::plain(1, 1)],
        };
        assert!(matches!(z_surface(&two, 2, 4), Err(Error::Unsupported(_))));
        // rank 2 with K² = 0 only needs A
        let ok = SurfaceSpec { ksq: 0, chi: 1, classes: vec![SurfaceClass::plain(2, 1)] };
        let z = numeric(&z_surface(&ok, 3, 5).unwrap());
        assert_eq!(z, a_universal(2, 3, 5).unwrap().subs_scale(&Rat::int(-1)).unwrap());
    }

    #[test]
    fn twist_rescales_q() {
        // N = 1: the twist x enters as q -> x q, also checked against the curve product
        let x = Rat::new(3, 2);
        let spec = SurfaceSpec {
            ksq: 1,
            chi: 1,
            classes: vec![SurfaceClass { rank: 2, pairing: -1, twist: Twist::Value(x.clone()) }],
        };
        let z = numeric(&z_surface(&spec, 1, 6).unwrap());
        let plain = SurfaceSpec { classes: vec![SurfaceClass::plain(2, -1)], ..spec.clone() };
        let z1 = numeric(&z_surface(&plain, 1, 6).unwrap());
        assert_eq!(z, z1.subs_scale(&x).unwrap());
        // N = 2 with a formal twist
        let formal = SurfaceSpec {
            ksq: 1,
            chi: 1,
            classes: vec![SurfaceClass { rank: 1, pairing: 2, twist: Twist::Formal(0) }],
        };
        let zf = z_surface(&formal, 2, 5).unwrap();
        let at2 = zf.map_coeffs(|c| c.eval(&[Rat::int(2)]));
        let base = numeric(&z_surface(&SurfaceSpec { classes: vec![SurfaceClass::plain(1, 2)], ..formal }, 2, 5).unwrap());
        assert_eq!(at2, base.subs_scale(&Rat::int(4)).unwrap());
    }

    #[test]
    fn euler_dim0_examples() {
        assert_eq!(euler_dim0(3, 0, 4).unwrap(), ints(0, &[1], 5));
        assert_eq!(euler_dim0(1, 1, 4).unwrap(), ints(0, &[1, 0, 1, 2, 4], 5));
        assert_eq!(euler_dim0(1, 2, 4).unwrap(), ints(0, &[1, 0, 2, 4, 9], 5));
        for n in 1..=3 {
            for ksq in 1..=3 {
                let a = euler_dim0(n, ksq, 6).unwrap();
                let b = euler_dim0(n, -ksq, 6).unwrap();
                assert_eq!(a.mul(&b), ints(0, &[1], 7));
                assert_eq!(b, a.inv().unwrap());
            }
        }
    }

    #[test]
    fn chi_y_examples_and_limit() {
        let s = chi_y_virtual(1, 4).unwrap();
        let y = MPoly::var(0);
        assert_eq!(s.coeff(0).unwrap(), MPoly::one());
        assert_eq!(s.coeff(1).unwrap(), MPoly::zero());
        assert_eq!(s.coeff(2).unwrap(), y);
        assert_eq!(s.coeff(3).unwrap(), y.add(&y.mul(&y)));
        assert_eq!(chi_y_virtual(0, 4).unwrap(), Series::one("q").truncate(5));
        for ksq in -2..=3 {
            let at1 = chi_y_virtual(ksq, 8).unwrap().map_coeffs(|c| c.eval(&[Rat::one()]));
            assert_eq!(at1, euler_dim0(1, ksq, 8).unwrap(), "K² = {ksq}");
        }
    }

    #[test]
    fn small_closed_forms() {
        assert_eq!(z_xm(0, 0, 3).unwrap(), ints(0, &[1], 4));
        assert_eq!(z_xm(1, 0, 3).unwrap(), ints(0, &[1, -1], 4));
        assert_eq!(z_xm(0, 1, 3).unwrap(), ints(0, &[1, 1, 2, 4], 4));
        assert_eq!(blowup_series(-1, 4).unwrap(), ints(1, &[1], 5));
        assert_eq!(blowup_series(0, 4).unwrap(), ints(1, &[1, 0, 1, 2], 5));
        for ksq in -3..=3 {
            let b = blowup_series(ksq, 8).unwrap();
            assert_eq!(b.coeff(0).unwrap(), Rat::zero());
            assert_eq!(b, euler_dim0(1, ksq + 1, 7).unwrap().shift(1));
        }
        assert_eq!(sw_value(1), Rat::int(-1));
        assert_eq!(sw_value(2), Rat::one());
        assert_eq!(sw_value(0), Rat::one());
    }

    #[test]
    fn topological_examples() {
        let c = topological_euler(EulerKind::Curve { n: 1, genus: 0 }, 5).unwrap();
        assert_eq!(c, ints(0, &[1, 2, 3, 4, 5, 6], 6));
        let c1 = topological_euler(EulerKind::Curve { n: 3, genus: 1 }, 5).unwrap();
        assert_eq!(c1, ints(0, &[1], 6));
        let s = topological_euler(EulerKind::Surface { n: 1, chi_top: 24 }, 3).unwrap();
        assert_eq!(s, ints(0, &[1, 24, 324, 3200], 4));
    }

    #[test]
    fn k3_examples() {
        let h = k3_reduced_hilb(12).unwrap();
        let table = ky_table(1, 12).unwrap();
        for n in 1..=12 {
            assert_eq!(h.coeff(n).unwrap(), Rat::int(24 * n));
            assert_eq!(Rat::from_bigints(table.get(1, n).unwrap(), 1.into()), Rat::int(24 * n));
        }
        assert_eq!(k3_reduced_quot(1, 5).unwrap(), Rat::int(120));
        assert_eq!(k3_reduced_quot(3, -3).unwrap(), Rat::zero());
        assert!(matches!(k3_reduced_quot(-1, 2), Err(Error::OutOfTableRange { .. })));
    }

    #[test]
    fn general_type_wrapper() {
        assert_eq!(general_type_z(2, 2, 2, 1, 3).unwrap(), general_type_series(2, 2, 2, 1, 3).unwrap());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]
        // the N = 1 surface series is the curve series of genus 1 + K² at -q
        #[test]
        fn sign_law_matches_curve_series(
            ksq in -3i64..4,
            data in proptest::collection::vec((-2i64..4, -3i64..4, 1i64..4), 1..3),
        ) {
            let classes: Vec<SurfaceClass> = data
                .iter()
                .map(|&(r, p, x)| SurfaceClass { rank: r, pairing: p, twist: Twist::Value(Rat::int(x)) })
                .collect();
            let spec = SurfaceSpec { ksq, chi: 1, classes };
            let z = numeric(&z_surface(&spec, 1, 8).unwrap());
            let curve = CurveSpec {
                genus: 1 + ksq,
                n: 1,
                classes: data
                    .iter()
                    .map(|&(r, p, x)| KClass::new(r, p, Twist::Value(Rat::int(x))))
                    .collect(),
            };
            let t1 = z_curve_formal(&curve, 8).unwrap();
            let mut expect = t1.b.subs_scale(&MPoly::from_i64(-1)).unwrap().pow_int(-ksq).unwrap();
            for (a, &(_, p, _)) in t1.a.iter().zip(&data) {
                expect = expect.mul(&a.subs_scale(&MPoly::from_i64(-1)).unwrap().pow_int(p).unwrap());
            }
            prop_assert_eq!(z, numeric(&expect));
        }
    }
}
