//! Labelled trees with colored edges, weighted by out-degrees.
//!
//! Edges point towards the smaller label. A tree `T` on `n` vertices weighs
//! `wt(T) = (1/(n-1)!) Π_v Π_j d_v^j!`, with `d_v^j` the number of color `j`
//! edges leaving `v`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact_algebra::{binom_general, factorial, MPoly, Rat, Ring};
use crate::power_series::Series;

pub const DEFAULT_BOUND: usize = 8;

/// Edge counts per color.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TreeType {
    pub counts: Vec<usize>,
}

impl TreeType {
    pub fn new(counts: Vec<usize>) -> TreeType {
        TreeType { counts }
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.counts.iter().sum::<usize>() + 1
    }

    pub fn colors(&self) -> usize {
        self.counts.len()
    }

    /// Every type with `k` colors and at most `nmax` vertices.
    pub fn all(k: usize, nmax: usize) -> Vec<TreeType> {
        let mut out = vec![];
        for m in 0..nmax {
            for c in crate::power_series::compositions(m, k) {
                out.push(TreeType::new(c));
            }
        }
        out
    }

    fn label(&self) -> String {
        let parts: Vec<String> = self.counts.iter().map(|c| c.to_string()).collect();
        format!("({})", parts.join(" "))
    }
}

/// A tree on labels `1..=n`; edges are `(u, v, color)` with `u < v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredTree {
    pub n: usize,
    pub edges: Vec<(usize, usize, usize)>,
}

impl ColoredTree {
    /// `d_v^j` for every vertex and color.
    pub fn out_degrees(&self, colors: usize) -> Vec<Vec<usize>> {
        let mut d = vec![vec![0; colors]; self.n + 1];
        for &(_, v, c) in &self.edges {
            d[v][c] += 1;
        }
        d
    }

    pub fn weight(&self, colors: usize) -> Rat {
        let num = weight_numerator(&self.out_degrees(colors));
        Rat::from_bigints(BigInt::from(num), factorial(self.n as u64 - 1))
    }
}

fn weight_numerator(d: &[Vec<usize>]) -> u128 {
    d.iter()
        .flatten()
        .map(|&k| (1..=k as u128).product::<u128>())
        .product()
}

fn check_bound(t: &TreeType, bound: usize) -> Result<()> {
    if t.n() > bound {
        return Err(Error::SizeBound { n: t.n(), bound });
    }
    Ok(())
}

/// Undirected edges of the tree with Prüfer code `seq` (labels from 1).
fn prufer_decode(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    if n == 1 {
        return vec![];
    }
    let mut degree = vec![1usize; n + 1];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (1..=n).find(|&v| degree[v] == 1).expect("a leaf exists");
        edges.push((leaf.min(s), leaf.max(s)));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (1..=n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges.sort_unstable();
    edges
}

fn prufer_seq(mut idx: u64, n: usize) -> Vec<usize> {
    let len = n.saturating_sub(2);
    let mut seq = vec![0; len];
    for slot in seq.iter_mut().rev() {
        *slot = (idx % n as u64) as usize + 1;
        idx /= n as u64;
    }
    seq
}

fn prufer_count(n: usize) -> u64 {
    (n as u64).pow(n.saturating_sub(2) as u32)
}

/// Distinct arrangements of the color multiset, in lexicographic order.
fn colorings(t: &TreeType) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = t
        .counts
        .iter()
        .enumerate()
        .flat_map(|(j, &c)| std::iter::repeat_n(j, c))
        .collect();
    let mut out = vec![cur.clone()];
    while next_permutation(&mut cur) {
        out.push(cur.clone());
    }
    out
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).expect("successor exists");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// All colored labelled trees of the given type, with the default size bound.
pub fn enumerate_trees(t: &TreeType) -> Result<Vec<ColoredTree>> {
    enumerate_trees_bounded(t, DEFAULT_BOUND)
}

pub fn enumerate_trees_bounded(t: &TreeType, bound: usize) -> Result<Vec<ColoredTree>> {
    check_bound(t, bound)?;
    let n = t.n();
    let cols = colorings(t);
    let mut out = vec![];
    for idx in 0..prufer_count(n) {
        let edges = prufer_decode(&prufer_seq(idx, n), n);
        for c in &cols {
            let edges = edges.iter().zip(c).map(|(&(u, v), &j)| (u, v, j)).collect();
            out.push(ColoredTree { n, edges });
        }
    }
    Ok(out)
}

/// `Σ_T wt(T)` over all trees of the type.
pub fn weighted_count(t: &TreeType) -> Result<Rat> {
    weighted_count_bounded(t, DEFAULT_BOUND)
}

pub fn weighted_count_bounded(t: &TreeType, bound: usize) -> Result<Rat> {
    check_bound(t, bound)?;
    let n = t.n();
    let k = t.colors();
    let cols = colorings(t);
    let total: u128 = (0..prufer_count(n))
        .into_par_iter()
        .map(|idx| {
            let edges = prufer_decode(&prufer_seq(idx, n), n);
            let mut sum = 0u128;
            let mut d = vec![vec![0usize; k]; n + 1];
            for c in &cols {
                d.iter_mut().for_each(|row| row.iter_mut().for_each(|x| *x = 0));
                for (&(_, v), &j) in edges.iter().zip(c) {
                    d[v][j] += 1;
                }
                sum += weight_numerator(&d);
            }
            sum
        })
        .sum();
    Ok(Rat::from_bigints(BigInt::from(total), factorial(n as u64 - 1)))
}

/// `C(p) = (1/(|p|+1)) Π_j binom(2p_j + Σ_{i≠j} p_i, p_j)`.
pub fn fuss_catalan(t: &TreeType) -> Rat {
    let s: usize = t.counts.iter().sum();
    let mut acc = Rat::new(1, s as i64 + 1);
    for &p in &t.counts {
        acc *= binom_general((p + s) as i64, p as u64);
    }
    acc
}

/// `((-1)^{n-1}/n) Π_j binom(-n, p_j)`.
pub fn signed_binomial_count(t: &TreeType) -> Rat {
    let n = t.n() as i64;
    let mut acc = Rat::sign_pow(n - 1) * Rat::new(1, n);
    for &p in &t.counts {
        acc *= binom_general(-n, p as u64);
    }
    acc
}

/// The series `Z` with `Z Π_j (1 - x_j Z) = q`, `Z(0) = 0`, by fixed-point
/// iteration `Z <- q / Π_j (1 - x_j Z)`.
pub fn cubic_solve(k: usize, order: usize) -> Result<Series<MPoly>> {
    let p = order as i64 + 1;
    let mut z = Series::<MPoly>::zero("q", p);
    for _ in 0..order {
        let mut den = Series::<MPoly>::one("q").truncate(p);
        for j in 0..k {
            den = den.mul(&Series::one("q").sub(&z.mul_scalar(&MPoly::var(j))));
        }
        z = den.inv()?.shift(1).truncate(p);
    }
    Ok(z)
}

/// Two-color counts `W_n(x, y) = Σ_{a+b=n-1} w_n(a, b) x^a y^b`, built by
/// removing the vertex with the highest label.
#[derive(Clone, Debug)]
pub struct RecursionTable {
    w: Vec<MPoly>,
}

impl RecursionTable {
    pub fn new(nmax: usize) -> RecursionTable {
        let mut table = RecursionTable { w: vec![MPoly::zero(), MPoly::one()] };
        for n in 2..=nmax {
            let a_side: Vec<MPoly> = (0..n).map(|m| table.branch(m, 0)).collect();
            let b_side: Vec<MPoly> = (0..n).map(|m| table.branch(m, 1)).collect();
            let mut wn = MPoly::zero();
            for m in 0..n {
                wn = wn.add(&a_side[m].mul(&b_side[n - 1 - m]));
            }
            table.w.push(wn);
        }
        table
    }

    pub fn nmax(&self) -> usize {
        self.w.len() - 1
    }

    /// `W_n`; zero for `n = 0`.
    pub fn poly(&self, n: usize) -> &MPoly {
        &self.w[n]
    }

    pub fn get(&self, a: usize, b: usize) -> Rat {
        let n = a + b + 1;
        assert!(n <= self.nmax(), "w_{n} lies outside the table");
        self.w[n].coeff(&[a as u32, b as u32])
    }

    /// `Σ_{n ≤ K} W_n q^n`.
    pub fn series(&self) -> Series<MPoly> {
        Series::from_coeffs("q", 0, self.w.clone(), self.w.len() as i64)
    }

    /// Subtrees of `m` vertices in total hanging off the top vertex by edges of
    /// one color: `Σ_{parts} r!/Aut(parts) · c^r · Π W_{part}`.
    fn branch(&self, m: usize, color: usize) -> MPoly {
        let mut acc = MPoly::zero();
        for parts in partitions(m, m) {
            let r = parts.len();
            let mut term = MPoly::constant(Rat::from_bigints(factorial(r as u64), automorphisms(&parts)));
            term = term.mul(&MPoly::var(color).pow_u(r as u64));
            for &s in &parts {
                term = term.mul(&self.w[s]);
            }
            acc = acc.add(&term);
        }
        acc
    }
}

/// Partitions of `m` into parts of size at most `max`, non-increasing.
fn partitions(m: usize, max: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = vec![];
    for first in (1..=max.min(m)).rev() {
        for mut rest in partitions(m - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn automorphisms(parts: &[usize]) -> BigInt {
    let mut acc = BigInt::from(1);
    let mut i = 0;
    while i < parts.len() {
        let j = parts[i..].iter().take_while(|&&p| p == parts[i]).count();
        acc *= factorial(j as u64);
        i += j;
    }
    acc
}

/// `w_n(a, b)` with `n = a + b + 1`, from the recursion.
pub fn recursion_w(a: usize, b: usize) -> Rat {
    RecursionTable::new(a + b + 1).get(a, b)
}

/// `t_n(a, b) = (1/n) binom(2a+b, a) binom(a+2b, b)`.
pub fn t_closed(a: usize, b: usize) -> Rat {
    let n = (a + b + 1) as i64;
    let (a, b) = (a as i64, b as i64);
    binom_general(2 * a + b, a as u64) * binom_general(a + 2 * b, b as u64) * Rat::new(1, n)
}

/// `Σ_n Σ_{a+b=n-1} t_n(a, b) x^a y^b q^n` through `q^K`.
pub fn t_series(order: usize) -> Series<MPoly> {
    Series::from_fn("q", 0, order as i64 + 1, |n| {
        let mut acc = MPoly::zero();
        for a in 0..n.max(0) as usize {
            let b = n as usize - 1 - a;
            acc = acc.add(&MPoly::monomial(vec![a as u32, b as u32], t_closed(a, b)));
        }
        acc
    })
}

/// Both sides of `(n + p_j) w_n(p) = (-1)^{n-1} [x^p x_j] a_n^{(j)}` with all
/// ranks 1, for color `j`.
pub fn wick_bridge(t: &TreeType, j: usize) -> Result<(Rat, Rat)> {
    let n = t.n();
    let lhs = weighted_count(t)? * Rat::int((n + t.counts[j]) as i64);
    let ranks = vec![1; t.colors()];
    let mut e: Vec<u32> = t.counts.iter().map(|&c| c as u32).collect();
    e[j] += 1;
    let rhs = crate::curve_quot::a_n(&ranks, j, n).coeff(&e) * Rat::sign_pow(n as i64 - 1);
    Ok((lhs, rhs))
}

/// CSV rows `type,weighted_count,closed_form`.
pub fn catalan_csv(types: &[TreeType]) -> Result<String> {
    let mut out = String::from("type,weighted_count,closed_form\n");
    for t in types {
        let _ = writeln!(out, "{},{},{}", t.label(), weighted_count(t)?, fuss_catalan(t));
    }
    Ok(out)
}

/// One color: `Z(1 - Z) = q` has Catalan coefficients.
pub fn catalan_numbers(order: usize) -> Series<Rat> {
    Series::from_fn("q", 0, order as i64 + 1, |n| {
        if n == 0 {
            Rat::zero()
        } else {
            binom_general(2 * n - 2, n as u64 - 1) * Rat::new(1, n)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn tt(c: &[usize]) -> TreeType {
        TreeType::new(c.to_vec())
    }

    #[test]
    fn enumeration_examples() {
        let paths = enumerate_trees(&tt(&[2])).unwrap();
        assert_eq!(paths.len(), 3);
        let mut ws: Vec<Rat> = paths.iter().map(|t| t.weight(1)).collect();
        ws.sort();
        assert_eq!(ws, vec![Rat::new(1, 2), Rat::new(1, 2), Rat::one()]);
        assert_eq!(enumerate_trees(&tt(&[1, 1])).unwrap().len(), 6);
        let single = enumerate_trees(&tt(&[])).unwrap();
        assert_eq!(single, vec![ColoredTree { n: 1, edges: vec![] }]);
        assert!(matches!(
            enumerate_trees(&tt(&[4, 4])),
            Err(Error::SizeBound { n: 9, bound: 8 })
        ));
    }

    #[test]
    fn enumeration_is_complete_and_distinct() {
        for t in TreeType::all(2, 6).into_iter().chain(TreeType::all(3, 5)) {
            let trees = enumerate_trees(&t).unwrap();
            let n = t.n() as u64;
            let mut expect = BigInt::from(n.pow(n.saturating_sub(2) as u32)) * factorial(n - 1);
            for &p in &t.counts {
                expect /= factorial(p as u64);
            }
            assert_eq!(BigInt::from(trees.len()), expect, "{t:?}");
            let keys: HashSet<_> = trees.iter().map(|tr| tr.edges.clone()).collect();
            assert_eq!(keys.len(), trees.len());
            for tr in &trees {
                assert_eq!(tr.edges.len() + 1, tr.n);
                for (j, &p) in t.counts.iter().enumerate() {
                    assert_eq!(tr.edges.iter().filter(|e| e.2 == j).count(), p);
                }
            }
        }
    }

    #[test]
    fn weighted_count_examples() {
        assert_eq!(weighted_count(&tt(&[2])).unwrap(), Rat::int(2));
        assert_eq!(weighted_count(&tt(&[1, 1])).unwrap(), Rat::int(3));
        assert_eq!(weighted_count(&tt(&[])).unwrap(), Rat::one());
        assert_eq!(fuss_catalan(&tt(&[2])), Rat::int(2));
        assert_eq!(fuss_catalan(&tt(&[1, 1])), Rat::int(3));
        assert_eq!(fuss_catalan(&tt(&[0, 0, 0])), Rat::one());
        // summed enumeration agrees with the parallel count
        let t = tt(&[2, 1, 1]);
        let direct: Rat = enumerate_trees(&t).unwrap().iter().map(|tr| tr.weight(3)).sum();
        assert_eq!(direct, weighted_count(&t).unwrap());
    }

    #[test]
    fn closed_forms_agree_with_counts() {
        for k in 1..=3 {
            for t in TreeType::all(k, 6) {
                let w = weighted_count(&t).unwrap();
                assert_eq!(w, fuss_catalan(&t), "{t:?}");
                assert_eq!(w, signed_binomial_count(&t), "{t:?}");
            }
        }
    }

    #[test]
    fn cubic_examples() {
        let z = cubic_solve(2, 4).unwrap();
        let (x, y) = (MPoly::var(0), MPoly::var(1));
        assert_eq!(z.coeff(1).unwrap(), MPoly::one());
        assert_eq!(z.coeff(2).unwrap(), x.add(&y));
        let c3 = x.mul(&x).scale(&Rat::int(2)).add(&x.mul(&y).scale(&Rat::int(3))).add(&y.mul(&y).scale(&Rat::int(2)));
        assert_eq!(z.coeff(3).unwrap(), c3);
        let one = cubic_solve(1, 8).unwrap().map_coeffs(|c| c.eval(&[Rat::one()]));
        assert_eq!(one, catalan_numbers(8));
        let zero = cubic_solve(2, 5).unwrap().map_coeffs(|c| c.eval(&[Rat::zero(), Rat::zero()]));
        assert_eq!(zero, Series::from_ints("q", 1, &[1], 6));
    }

    #[test]
    fn recursion_examples_and_chain() {
        assert_eq!(recursion_w(1, 0), Rat::one());
        assert_eq!(recursion_w(1, 1), Rat::int(3));
        assert_eq!(recursion_w(3, 0), Rat::int(5));
        let table = RecursionTable::new(7);
        let w = table.series();
        assert_eq!(w, cubic_solve(2, 7).unwrap());
        assert_eq!(w, t_series(7));
        for a in 0..=3 {
            for b in 0..=(4 - a) {
                assert_eq!(table.get(a, b), weighted_count(&tt(&[a, b])).unwrap());
            }
        }
    }

    #[test]
    fn k_color_cubic_matches_counts() {
        let z = cubic_solve(3, 6).unwrap();
        for t in TreeType::all(3, 6) {
            let e: Vec<u32> = t.counts.iter().map(|&c| c as u32).collect();
            let c = z.coeff(t.n() as i64).unwrap().coeff(&e);
            assert_eq!(c, weighted_count(&t).unwrap(), "{t:?}");
        }
    }

    #[test]
    fn wick_bridge_small() {
        for k in 1..=3 {
            for t in TreeType::all(k, 5) {
                for j in 0..k {
                    let (l, r) = wick_bridge(&t, j).unwrap();
                    assert_eq!(l, r, "{t:?} color {j}");
                }
            }
        }
    }

    #[test]
    fn csv_rows() {
        let csv = catalan_csv(&[tt(&[2]), tt(&[1, 1])]).unwrap();
        assert_eq!(csv, "type,weighted_count,closed_form\n(2),2,2\n(1 1),3,3\n");
    }
}
