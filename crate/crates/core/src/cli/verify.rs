//! The verification corpus behind `verify --suite fast|all`.

use serde::Serialize;

use crate::curve_quot::{
    ab_closed_rank1, b22_closed_form, b_binomial_sum, segre_p1_closed, segre_p1_symmetric, z_curve_n1, CurveSpec,
    KClass, Twist,
};
use crate::error::Result;
use crate::exact_algebra::Rat;
use crate::kawai_yoshioka::ky_table;
use crate::localization_oracle::{oracle_euler, oracle_general_type, oracle_segre, WeightVector};
use crate::power_series::identities::{
    alternating_sum, binomial_sums_check, free_term_closed, free_term_expansion, mv_lagrange_spot_checks,
};
use crate::power_series::{Series, EXACT};
use crate::root_calculus::{general_type_series, identity_ee_check, u_factored, u_palindromic, u_series};
use crate::surface_quot::{chi_y_virtual, euler_dim0, k3_reduced_hilb};
use crate::tree_combinatorics::{cubic_solve, signed_binomial_count, fuss_catalan, t_series, weighted_count, wick_bridge, RecursionTable, TreeType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub expected: String,
    pub actual: String,
    pub location: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub overall: Status,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.overall == Status::Pass
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("suite {}\n", self.suite);
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            out.push_str(&format!("{tag} {} [{}]\n", c.name, c.location));
            if c.status == Status::Fail {
                out.push_str(&format!("  expected: {}\n  actual:   {}\n", c.expected, c.actual));
            }
        }
        let n_pass = self.checks.iter().filter(|c| c.status == Status::Pass).count();
        out.push_str(&format!("{n_pass}/{} checks passed\n", self.checks.len()));
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("name,status,location\n");
        for c in &self.checks {
            out.push_str(&format!("{},{:?},{}\n", c.name, c.status, c.location).to_lowercase());
        }
        out
    }
}

/// A named comparison; errors count as failures.
pub struct Case {
    pub name: &'static str,
    pub location: &'static str,
    pub run: fn() -> Result<(String, String)>,
}

impl Case {
    pub fn check(&self) -> Check {
        let (status, expected, actual) = match (self.run)() {
            Ok((e, a)) => (if e == a { Status::Pass } else { Status::Fail }, e, a),
            Err(err) => (Status::Fail, "no error".into(), err.to_string()),
        };
        Check { name: self.name.into(), status, expected, actual, location: self.location.into() }
    }
}

fn both<T: std::fmt::Debug>(e: T, a: T) -> Result<(String, String)> {
    Ok((format!("{e:?}"), format!("{a:?}")))
}

/// Collects mismatches; an empty list means agreement.
fn mismatches(items: impl IntoIterator<Item = Result<Option<String>>>) -> Result<(String, String)> {
    let mut bad = vec![];
    for it in items {
        if let Some(m) = it? {
            bad.push(m);
        }
    }
    Ok(("[]".into(), format!("{bad:?}")))
}

fn cmp<T: PartialEq + std::fmt::Debug>(label: String, e: T, a: T) -> Option<String> {
    (e != a).then(|| format!("{label}: expected {e:?}, got {a:?}"))
}

/// `\frac{A}{B}` as `A/B` without blanks.
pub fn normalize_fraction(s: &str) -> String {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some(rest) = s.strip_prefix("\\frac{") {
        let mut depth = 1;
        for (i, ch) in rest.char_indices() {
            match ch {
                '{' => depth += 1,
                '}' => depth -= 1,
                _ => {}
            }
            if depth == 0 {
                let num = &rest[..i];
                let den = rest[i + 1..].trim_start_matches('{').trim_end_matches('}');
                return format!("{num}/{den}");
            }
        }
    }
    s
}

pub const KNOWN_U: [&str; 4] = [
    r"\frac{(1-q)^2}{1-2q}",
    r"\frac{(1-q)^2(1-6q+q^2)}{(1-4q)^2}",
    r"\frac{(1-q)^2(1 - 22 q + 150 q^2 - 22 q^3 + q^4)}{(1-8q)^3}",
    r"\frac{(1-q)^2(1 - 62 q + 1407 q^2 - 15492 q^3 + 1407 q^4 - 62 q^5 + q^6)}{(1-16q)^4}",
];

fn u_forms() -> Result<(String, String)> {
    let mut e = vec![];
    let mut a = vec![];
    for (i, known) in KNOWN_U.iter().enumerate() {
        let n = i as u32 + 1;
        e.push(normalize_fraction(known).replace("/1-2q", "/(1-2q)"));
        a.push(normalize_fraction(&u_factored(n, &u_palindromic(n)?)));
    }
    both(e, a)
}

fn palindromic() -> Result<(String, String)> {
    mismatches((1..=5u32).map(|n| {
        let p = u_palindromic(n)?;
        Ok(cmp(format!("N={n}"), (Some(2 * n as usize - 2), true), (p.degree(), p.is_palindromic())))
    }))
}

fn trees() -> Result<(String, String)> {
    let mut out = vec![];
    for k in 1..=3 {
        for t in TreeType::all(k, 6) {
            let w = weighted_count(&t)?;
            out.push(Ok(cmp(format!("{:?}", t.counts), (fuss_catalan(&t), signed_binomial_count(&t)), (w.clone(), w))));
        }
    }
    mismatches(out)
}

fn tree_series_chain() -> Result<(String, String)> {
    let w = RecursionTable::new(7).series();
    let z = cubic_solve(2, 7)?;
    let t = t_series(7);
    both((t.clone(), t), (w, z))
}

fn wick() -> Result<(String, String)> {
    let mut out = vec![];
    for k in 1..=3 {
        for t in TreeType::all(k, 5) {
            for j in 0..k {
                let (l, r) = wick_bridge(&t, j)?;
                out.push(Ok(cmp(format!("{:?} color {j}", t.counts), r, l)));
            }
        }
    }
    mismatches(out)
}

fn kawai_yoshioka() -> Result<(String, String)> {
    let t = ky_table(4, 12)?;
    let h = k3_reduced_hilb(12)?;
    let mut out = vec![];
    for n in 1..=12i64 {
        out.push(Ok(cmp(format!("N_0,{n}"), n.into(), t.get(0, n)?)));
        out.push(Ok(cmp(format!("N_1,{n}"), (24 * n).into(), t.get(1, n)?)));
        out.push(Ok(cmp(format!("hilb q^{n}"), Rat::int(24 * n), h.coeff(n)?)));
    }
    for g in 0..=4i64 {
        for n in (1 - g - 3)..(1 - g) {
            out.push(Ok(cmp(format!("N_{g},{n}"), 0.into(), t.get(g, n)?)));
        }
        let low = t.get(g, 1 - g)?;
        out.push(Ok((low == 0.into()).then(|| format!("N_{g},{} vanishes", 1 - g))));
    }
    mismatches(out)
}

fn free_terms() -> Result<(String, String)> {
    let mut out = vec![];
    for n in 1..=3usize {
        let mut x = vec![1i64; n];
        loop {
            out.push(Ok(cmp(format!("{x:?}"), free_term_closed(&x), free_term_expansion(&x))));
            let Some(i) = x.iter().position(|&v| v < 3) else { break };
            x[i] += 1;
            x[..i].iter_mut().for_each(|v| *v = 1);
        }
    }
    mismatches(out)
}

fn binomial_sums() -> Result<(String, String)> {
    mismatches((0..=4).flat_map(|r| {
        (-3..=3).map(move |d| Ok(cmp(format!("r={r} d={d}"), (true, true), binomial_sums_check(r, d, 12)?)))
    }))
}

fn alternating() -> Result<(String, String)> {
    mismatches((1..=12).flat_map(|x| {
        (1..=12).map(move |n| {
            let (l, r) = alternating_sum(x, n);
            Ok(cmp(format!("x={x} n={n}"), r, l))
        })
    }))
}

fn identity_ee() -> Result<(String, String)> {
    mismatches((1..=3u32).map(|n| Ok(cmp(format!("N={n}"), true, identity_ee_check(n, 8)?))))
}

fn lagrange_two_var() -> Result<(String, String)> {
    both(true, mv_lagrange_spot_checks(5)?)
}

/// The series `((1-q)²/(1-2q))^{g-1}`.
fn canonical_target(g: i64, k: usize) -> Result<Series<Rat>> {
    euler_dim0(1, g - 1, k)
}

fn canonical_curve() -> Result<(String, String)> {
    let k = 10;
    let mut out = vec![];
    for g in 0..=5i64 {
        // -Θ, -K_C and Θ with twists 1, -1, -1, read at -q
        let cls = |r: i64, d: i64, x: i64| KClass::new(r, d, Twist::Value(Rat::int(x)));
        let spec = CurveSpec {
            genus: g,
            n: 1,
            classes: vec![cls(-1, 1 - g, 1), cls(-1, 2 - 2 * g, -1), cls(1, g - 1, -1)],
        };
        let z = z_curve_n1(&spec, k)?.z.subs_scale(&Rat::int(-1))?;
        let target = canonical_target(g, k)?;
        let y1 = chi_y_virtual(g - 1, k)?.map_coeffs(|c| c.eval(&[Rat::one()]));
        out.push(Ok(cmp(format!("g={g}"), (target.clone(), target), (z, y1))));
    }
    mismatches(out)
}

fn rank_one_b() -> Result<(String, String)> {
    mismatches((1..=4u32).map(|n| {
        let (_, b) = ab_closed_rank1(n, 8)?;
        Ok(cmp(format!("N={n}"), b_binomial_sum(n, 8), b))
    }))
}

fn general_type_known() -> Result<(String, String)> {
    let k = 10;
    let den = |e| Series::from_ints("q", 0, &[1, -4], EXACT).truncate(k + 2).pow_int(e);
    let g2 = Series::from_ints("q", 0, &[-8, 16], EXACT).div(&den(2)?)?.truncate(k + 1);
    let g3 = Series::from_ints("q", -1, &[8, -16, 8, -64, 128], EXACT)
        .div(&den(4)?)?
        .neg()
        .truncate(k + 1);
    both((g2, g3), (general_type_series(2, 1, 2, 0, k)?, general_type_series(2, 1, 3, 1, k)?))
}

fn general_type_structure() -> Result<(String, String)> {
    let mut out = vec![];
    for n in 1..=3u32 {
        for g in 2..=4i64 {
            let u = u_series(n, 5)?.pow_int(g - 1)?;
            out.push(Ok(cmp(format!("ℓ=0 N={n} g={g}"), u, general_type_series(n, 0, g, 1, 5)?)));
            for chi in 0..=1 {
                let low = n as i64 * (1 - g);
                let sign = Rat::sign_pow(n as i64 * chi);
                let mono = Series::from_coeffs("q", low, vec![sign], 6);
                out.push(Ok(cmp(format!("ℓ=N N={n} g={g} χ={chi}"), mono, general_type_series(n, n, g, chi, 5)?)));
            }
        }
    }
    mismatches(out)
}

fn segre_symmetry() -> Result<(String, String)> {
    let mut out = vec![];
    for n in 1..=3u32 {
        for d in -3..=3 {
            for m in 0..=5 {
                out.push(Ok(cmp(
                    format!("N={n} d={d} n={m}"),
                    segre_p1_closed(n, d, m),
                    segre_p1_symmetric(n, d, m),
                )));
            }
        }
    }
    mismatches(out)
}

fn euler_inverse() -> Result<(String, String)> {
    let mut out = vec![];
    for n in 1..=3u32 {
        for ksq in 1..=3 {
            let p = euler_dim0(n, ksq, 8)?.mul(&euler_dim0(n, -ksq, 8)?);
            out.push(Ok(cmp(format!("N={n} K²={ksq}"), Series::one("q").truncate(9), p)));
        }
    }
    mismatches(out)
}

fn oracle_inverse_u() -> Result<(String, String)> {
    let one = Series::<Rat>::one("q").truncate(7);
    mismatches((1..=3usize).map(|n| {
        let w = WeightVector::standard(n);
        let e = oracle_euler(n, 6, &w)?;
        Ok(cmp(format!("N={n}"), one.clone(), e.mul(&u_series(n as u32, 6)?)))
    }))
}

fn oracle_weights() -> Result<(String, String)> {
    let mut out = vec![];
    for n in 1..=3usize {
        let (a, b) = (WeightVector::standard(n), WeightVector::secondary(n));
        let e = (oracle_euler(n, 4, &a)?, oracle_euler(n, 4, &b)?);
        out.push(Ok(cmp(format!("euler N={n}"), e.0, e.1)));
        for d in -1..=1 {
            let degs = vec![d; n];
            let s = (oracle_segre(n, &degs, 4, &a)?, oracle_segre(n, &degs, 4, &b)?);
            out.push(Ok(cmp(format!("segre N={n} d={d}"), s.0, s.1)));
        }
    }
    let (a, b) = (WeightVector::standard(2), WeightVector::secondary(2));
    for l in 0..=2 {
        let s = (oracle_general_type(2, l, 2, 1, 3, &a)?, oracle_general_type(2, l, 2, 1, 3, &b)?);
        out.push(Ok(cmp(format!("general type ℓ={l}"), s.0, s.1)));
    }
    mismatches(out)
}

fn oracle_segre_symmetry() -> Result<(String, String)> {
    let mut out = vec![];
    for n in 1..=3usize {
        let w = WeightVector::standard(n);
        for d in -3..=3 {
            let s = oracle_segre(n, &[d], 5, &w)?;
            for m in 0..=5 {
                let c = s.coeff(m as i64)?;
                out.push(Ok(cmp(
                    format!("N={n} d={d} n={m}"),
                    (segre_p1_closed(n as u32, d, m), segre_p1_symmetric(n as u32, d, m)),
                    (c.clone(), c),
                )));
            }
        }
    }
    mismatches(out)
}

fn oracle_rank_one_b() -> Result<(String, String)> {
    mismatches((1..=4usize).map(|n| {
        let s = oracle_segre(n, &[0], 8, &WeightVector::standard(n))?;
        Ok(cmp(format!("N={n}"), b_binomial_sum(n as u32, 8), s))
    }))
}

fn oracle_rank_two() -> Result<(String, String)> {
    both(b22_closed_form(6)?, oracle_segre(2, &[0, 0], 6, &WeightVector::standard(2))?)
}

fn oracle_general() -> Result<(String, String)> {
    let w = WeightVector::standard(2);
    let mut out = vec![];
    for l in 0..=2u32 {
        for g in 2..=3 {
            for chi in 0..=1 {
                let k = 5;
                let e = general_type_series(2, l, g, chi, k)?;
                let a = oracle_general_type(2, l as usize, g, chi, k, &w)?;
                out.push(Ok(cmp(format!("ℓ={l} g={g} χ={chi}"), e, a)));
            }
        }
    }
    mismatches(out)
}

pub const FAST: &[Case] = &[
    Case { name: "u-rational-forms", location: "root_calculus::u_ratfunc", run: u_forms },
    Case { name: "u-palindromic", location: "root_calculus::u_palindromic", run: palindromic },
    Case { name: "tree-counts", location: "tree_combinatorics::weighted_count", run: trees },
    Case { name: "tree-series-chain", location: "tree_combinatorics::RecursionTable", run: tree_series_chain },
    Case { name: "wick-bridge", location: "tree_combinatorics::wick_bridge", run: wick },
    Case { name: "kawai-yoshioka", location: "kawai_yoshioka::ky_table", run: kawai_yoshioka },
    Case { name: "free-term", location: "power_series::identities", run: free_terms },
    Case { name: "binomial-sums", location: "power_series::identities", run: binomial_sums },
    Case { name: "alternating-sum", location: "power_series::identities", run: alternating },
    Case { name: "root-identity", location: "root_calculus::identity_ee_check", run: identity_ee },
    Case { name: "lagrange-two-variables", location: "power_series::identities", run: lagrange_two_var },
    Case { name: "canonical-curve", location: "curve_quot::z_curve_formal", run: canonical_curve },
    Case { name: "rank-one-b", location: "curve_quot::ab_closed_rank1", run: rank_one_b },
    Case { name: "general-type-known", location: "root_calculus::general_type_series", run: general_type_known },
    Case { name: "general-type-structure", location: "root_calculus::general_type_series", run: general_type_structure },
    Case { name: "segre-symmetry", location: "curve_quot::segre_p1_closed", run: segre_symmetry },
    Case { name: "euler-inverse", location: "surface_quot::euler_dim0", run: euler_inverse },
];

pub const ORACLE: &[Case] = &[
    Case { name: "oracle-euler-inverse", location: "localization_oracle::oracle_euler", run: oracle_inverse_u },
    Case { name: "oracle-weights", location: "localization_oracle", run: oracle_weights },
    Case { name: "oracle-segre-symmetry", location: "localization_oracle::oracle_segre", run: oracle_segre_symmetry },
    Case { name: "oracle-rank-one-b", location: "localization_oracle::oracle_segre", run: oracle_rank_one_b },
    Case { name: "oracle-rank-two-b", location: "curve_quot::b22_closed_form", run: oracle_rank_two },
    Case { name: "oracle-general-type", location: "localization_oracle::oracle_general_type", run: oracle_general },
];

pub fn run_suite(name: &str) -> Option<VerifyReport> {
    let cases: Vec<&Case> = match name {
        "fast" => FAST.iter().collect(),
        "all" => FAST.iter().chain(ORACLE).collect(),
        _ => return None,
    };
    let checks: Vec<Check> = cases.iter().map(|c| c.check()).collect();
    let overall = if checks.iter().all(|c| c.status == Status::Pass) { Status::Pass } else { Status::Fail };
    Some(VerifyReport { suite: name.into(), checks, overall })
}
