//! Brute-force cohomology of `Ω^p(m)` on `P^n`.
//!
//! `Ω^p(m)` is resolved by the Koszul strand of the Euler sequence,
//!
//! ```text
//! 0 -> Ω^p(m) -> Λ^p E(m) -> Λ^{p-1} E(m) -> ... -> O(m) -> 0,   E = O(-1)^{n+1},
//! ```
//!
//! with maps given by contraction against the Euler field. Every term is a
//! sum of line bundles, so its Čech complex on the standard affine cover
//! splits by `Z^{n+1}`-multidegree. A basis element `e_S ⊗ x^u` has
//! multidegree `v = u + ε_S` (with `|v| = m`); both the contraction
//! `e_S ⊗ x^u -> Σ ± e_{S∖i} ⊗ x_i x^u` and Čech restriction preserve it.
//! For each multidegree the double complex is finite and its total
//! cohomology is read off by exact rank computations.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::rational::{binomial, rational_from_i64};

/// Limits on the brute-force enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_n: usize,
    pub max_abs_m: i64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_n: 3,
            max_abs_m: 12,
        }
    }
}

/// Integer vectors of length `len` with entries in `[lo, hi]` summing to `total`.
fn vectors_with_sum(len: usize, lo: i64, hi: i64, total: i64) -> Vec<Vec<i64>> {
    fn go(len: usize, lo: i64, hi: i64, total: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if len == 0 {
            if total == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        let rest = (len - 1) as i64;
        // keep the remainder reachable
        let min = lo.max(total - rest * hi);
        let max = hi.min(total - rest * lo);
        for x in min..=max {
            prefix.push(x);
            go(len - 1, lo, hi, total - x, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if lo <= hi {
        go(len, lo, hi, total, &mut Vec::new(), &mut out);
    }
    out
}

/// `h^0, ..., h^n` of `O(k)` on `P^n`, counted by classifying monomials
/// `x^u` with `|u| = k`: all exponents `>= 0` contribute to `H^0`, all
/// `<= -1` to `H^n`, and no other multidegree carries cohomology.
pub fn line_bundle_cohomology(n: usize, k: i64) -> Vec<u64> {
    let len = n + 1;
    let mut h = vec![0u64; len];
    if k >= 0 {
        h[0] += vectors_with_sum(len, 0, k, k).len() as u64;
    }
    if k <= -(len as i64) {
        h[n] += vectors_with_sum(len, k, -1, k).len() as u64;
    }
    if n == 0 {
        debug_assert_eq!(h[0], 1);
    } else {
        let n_i = n as i64;
        debug_assert_eq!(h[0], if k >= 0 { binomial(n_i + k, n_i) } else { 0 });
        debug_assert_eq!(h[n], if k <= -n_i - 1 { binomial(-k - 1, n_i) } else { 0 });
    }
    h
}

/// Subsets of `{0..len}` as sorted index lists, by bitmask.
fn subsets(len: usize) -> impl Iterator<Item = u32> {
    0..(1u32 << len)
}

fn members(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| mask & (1 << i) != 0)
}

/// `(-1)^{#{s in set : s < i}}`.
fn position_sign(set: u32, i: usize) -> i64 {
    if (set & ((1u32 << i) - 1)).count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// One Čech cochain basis element of `Λ^j E(m)` in a fixed multidegree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct CochainBasis {
    /// Exterior index set `S`, `|S| = j`.
    pub wedge: u32,
    /// Čech index set `I`, nonempty.
    pub chart: u32,
}

/// The finite double complex of one multidegree.
#[derive(Debug, Clone)]
pub struct OracleComplex {
    pub n: usize,
    pub p: usize,
    pub m: i64,
    pub multidegree: Vec<i64>,
    /// Basis per total degree `(p - j) + (|I| - 1)`.
    pub basis: Vec<Vec<CochainBasis>>,
    /// Contraction part, `D_h: C^t -> C^{t+1}`.
    pub horizontal: Vec<QMatrix>,
    /// Čech part with the column sign `(-1)^{p-j}` applied, `D_v: C^t -> C^{t+1}`.
    pub vertical: Vec<QMatrix>,
}

impl OracleComplex {
    /// Exponent vector `u = v - ε_S`.
    fn exponents(&self, wedge: u32) -> Vec<i64> {
        let mut u = self.multidegree.clone();
        for i in members(wedge) {
            u[i] -= 1;
        }
        u
    }

    fn admissible(&self, wedge: u32, chart: u32) -> bool {
        self.exponents(wedge)
            .iter()
            .enumerate()
            .all(|(t, &e)| e >= 0 || chart & (1 << t) != 0)
    }

    pub fn assemble(n: usize, p: usize, m: i64, multidegree: Vec<i64>) -> Self {
        assert_eq!(multidegree.len(), n + 1);
        assert_eq!(multidegree.iter().sum::<i64>(), m);
        let len = n + 1;
        let top = p + n + 1;
        let mut cx = OracleComplex {
            n,
            p,
            m,
            multidegree,
            basis: vec![Vec::new(); top + 1],
            horizontal: Vec::new(),
            vertical: Vec::new(),
        };
        for wedge in subsets(len).filter(|s| s.count_ones() as usize <= p) {
            for chart in subsets(len).filter(|&c| c != 0) {
                if cx.admissible(wedge, chart) {
                    let j = wedge.count_ones() as usize;
                    let degree = (p - j) + chart.count_ones() as usize - 1;
                    cx.basis[degree].push(CochainBasis { wedge, chart });
                }
            }
        }
        for b in cx.basis.iter_mut() {
            b.sort();
        }
        let index: Vec<BTreeMap<CochainBasis, usize>> = cx
            .basis
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, e)| (*e, i)).collect())
            .collect();
        for t in 0..top {
            let (src, tgt) = (&cx.basis[t], &cx.basis[t + 1]);
            let mut h = QMatrix::zeros(tgt.len(), src.len());
            let mut v = QMatrix::zeros(tgt.len(), src.len());
            for (col, e) in src.iter().enumerate() {
                // contraction: e_S x^u -> sum_i sign(i, S) e_{S \ i} x_i x^u
                for i in members(e.wedge) {
                    let target = CochainBasis {
                        wedge: e.wedge & !(1 << i),
                        chart: e.chart,
                    };
                    let row = index[t + 1][&target];
                    h.add_to(row, col, &rational_from_i64(position_sign(e.wedge, i)));
                }
                // Čech: restrict to U_{I ∪ {s}} with the alternating sign
                let column_sign = if (p - e.wedge.count_ones() as usize) % 2 == 0 { 1 } else { -1 };
                for s in (0..len).filter(|&s| e.chart & (1 << s) == 0) {
                    let target = CochainBasis {
                        wedge: e.wedge,
                        chart: e.chart | (1 << s),
                    };
                    let row = index[t + 1][&target];
                    let sign = position_sign(e.chart, s) * column_sign;
                    v.add_to(row, col, &rational_from_i64(sign));
                }
            }
            cx.horizontal.push(h);
            cx.vertical.push(v);
        }
        cx
    }

    pub fn total_differential(&self, t: usize) -> QMatrix {
        self.horizontal[t].add(&self.vertical[t]).expect("same shape")
    }

    /// Checks `D_h^2 = 0`, `D_v^2 = 0` and `D_h D_v + D_v D_h = 0` exactly.
    pub fn check_square_zero(&self) -> Result<()> {
        for t in 0..self.horizontal.len().saturating_sub(1) {
            let hh = self.horizontal[t + 1].mul(&self.horizontal[t]).expect("chain");
            let vv = self.vertical[t + 1].mul(&self.vertical[t]).expect("chain");
            let hv = self.horizontal[t + 1].mul(&self.vertical[t]).expect("chain");
            let vh = self.vertical[t + 1].mul(&self.horizontal[t]).expect("chain");
            let anti = hv.add(&vh).expect("shape");
            for (what, mat) in [("horizontal", hh), ("vertical", vv), ("anticommutator", anti)] {
                if !mat.is_zero() {
                    return Err(Error::Inconsistent(format!(
                        "{what} square nonzero at degree {t} in multidegree {:?} (n={}, p={}, m={})",
                        self.multidegree, self.n, self.p, self.m
                    )));
                }
            }
        }
        Ok(())
    }

    /// Total cohomology dimensions in degrees `0..=p+n+1`.
    pub fn cohomology(&self) -> Vec<u64> {
        let ranks: Vec<usize> = (0..self.horizontal.len())
            .map(|t| self.total_differential(t).rank())
            .collect();
        (0..self.basis.len())
            .map(|t| {
                let out = ranks.get(t).copied().unwrap_or(0);
                let inc = if t == 0 { 0 } else { ranks[t - 1] };
                (self.basis[t].len() - out - inc) as u64
            })
            .collect()
    }
}

/// Multidegrees that can carry cohomology: some column has `u = v - ε_S`
/// with all exponents `>= 0` or all `<= -1`. Candidates are drawn from the
/// box `[lo, hi]^{n+1}`.
pub fn relevant_multidegrees(n: usize, p: usize, m: i64, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let len = n + 1;
    vectors_with_sum(len, lo, hi, m)
        .into_iter()
        .filter(|v| {
            subsets(len)
                .filter(|s| s.count_ones() as usize <= p)
                .any(|s| {
                    let u: Vec<i64> = (0..len).map(|t| v[t] - i64::from(s & (1 << t) != 0)).collect();
                    u.iter().all(|&e| e >= 0) || u.iter().all(|&e| e <= -1)
                })
        })
        .collect()
}

/// Natural box: relevant multidegrees satisfy `v >= 0` or `v <= 0` coordinatewise.
fn natural_box(m: i64) -> (i64, i64) {
    (m.min(0), m.max(0))
}

/// `h^0, ..., h^n` of `Ω^p(m)` on `P^n`, enumerating multidegrees in `[lo, hi]^{n+1}`.
pub fn oracle_hodge_dimension_in_box(
    n: usize,
    p: usize,
    m: i64,
    lo: i64,
    hi: i64,
    budget: OracleBudget,
) -> Result<Vec<u64>> {
    if p > n {
        return Err(Error::OutOfRange {
            what: "p",
            detail: format!("p = {p} exceeds n = {n}"),
        });
    }
    if n > budget.max_n || m.abs() > budget.max_abs_m {
        return Err(Error::Budget(format!(
            "n = {n}, |m| = {} exceeds n <= {}, |m| <= {}",
            m.abs(),
            budget.max_n,
            budget.max_abs_m
        )));
    }
    let mut total = vec![0u64; p + n + 2];
    for v in relevant_multidegrees(n, p, m, lo, hi) {
        let cx = OracleComplex::assemble(n, p, m, v);
        cx.check_square_zero()?;
        for (t, h) in cx.cohomology().into_iter().enumerate() {
            total[t] += h;
        }
    }
    if let Some(t) = (n + 1..total.len()).find(|&t| total[t] != 0) {
        return Err(Error::Inconsistent(format!(
            "cohomology in degree {t} > n = {n} for Ω^{p}({m})"
        )));
    }
    total.truncate(n + 1);
    Ok(total)
}

/// `h^0, ..., h^n` of `Ω^p(m)` on `P^n` by brute force.
pub fn oracle_hodge_dimension(n: usize, p: usize, m: i64, budget: OracleBudget) -> Result<Vec<u64>> {
    let (lo, hi) = natural_box(m);
    oracle_hodge_dimension_in_box(n, p, m, lo, hi, budget)
}

/// `χ(Ω^p(m)) = Σ_j (-1)^{p-j} C(n+1, j) χ(O(m - j))`, from line bundles only.
pub fn euler_characteristic_from_resolution(n: usize, p: usize, m: i64) -> i64 {
    (0..=p)
        .map(|j| {
            let chi: i64 = line_bundle_cohomology(n, m - j as i64)
                .iter()
                .enumerate()
                .map(|(q, &h)| if q % 2 == 0 { h as i64 } else { -(h as i64) })
                .sum();
            let sign = if (p - j) % 2 == 0 { 1 } else { -1 };
            sign * binomial(n as i64 + 1, j as i64) as i64 * chi
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_bundles() {
        assert_eq!(line_bundle_cohomology(2, 1), vec![3, 0, 0]);
        assert_eq!(line_bundle_cohomology(1, -2), vec![0, 1]);
        assert_eq!(line_bundle_cohomology(2, -2), vec![0, 0, 0]);
        assert_eq!(line_bundle_cohomology(0, -3), vec![1]);
        for n in 1..=3usize {
            for k in -10..=10i64 {
                let h = line_bundle_cohomology(n, k);
                let n_i = n as i64;
                assert_eq!(h[0], if k >= 0 { binomial(n_i + k, n_i) } else { 0 });
                assert_eq!(h[n], if k <= -n_i - 1 { binomial(-k - 1, n_i) } else { 0 });
                assert!(h[1..n].iter().all(|&x| x == 0));
            }
        }
    }

    #[test]
    fn oracle_examples() {
        let b = OracleBudget::default();
        assert_eq!(oracle_hodge_dimension(1, 1, 0, b).unwrap(), vec![0, 1]);
        assert_eq!(oracle_hodge_dimension(2, 1, 0, b).unwrap(), vec![0, 1, 0]);
        assert_eq!(oracle_hodge_dimension(1, 0, -1, b).unwrap(), vec![0, 0]);
        assert_eq!(oracle_hodge_dimension(2, 1, 2, b).unwrap(), vec![3, 0, 0]);
        assert_eq!(oracle_hodge_dimension(2, 2, -4, b).unwrap(), vec![0, 0, 15]);
    }

    #[test]
    fn no_admissible_multidegree_for_o_minus_one_on_p1() {
        assert!(relevant_multidegrees(1, 0, -1, -1, 0).is_empty());
    }

    #[test]
    fn budget_enforced() {
        let b = OracleBudget::default();
        assert!(matches!(oracle_hodge_dimension(4, 0, 0, b), Err(Error::Budget(_))));
        assert!(matches!(oracle_hodge_dimension(1, 0, 13, b), Err(Error::Budget(_))));
        assert!(oracle_hodge_dimension(1, 2, 0, b).is_err());
    }

    #[test]
    fn widening_the_box_changes_nothing() {
        let b = OracleBudget::default();
        for n in 1..=2 {
            for p in 0..=n {
                for m in -4..=4 {
                    let natural = oracle_hodge_dimension(n, p, m, b).unwrap();
                    let wide = oracle_hodge_dimension_in_box(n, p, m, -6, 6, b).unwrap();
                    assert_eq!(natural, wide, "n={n} p={p} m={m}");
                }
            }
        }
    }

    #[test]
    fn differentials_square_to_zero_in_every_multidegree() {
        // including multidegrees that carry no cohomology
        for n in 1..=2 {
            for p in 0..=n {
                for v in vectors_with_sum(n + 1, -3, 3, 1) {
                    let cx = OracleComplex::assemble(n, p, 1, v);
                    cx.check_square_zero().unwrap();
                }
            }
        }
    }

    #[test]
    fn euler_characteristic_cross_check() {
        let b = OracleBudget::default();
        for n in 1..=2 {
            for p in 0..=n {
                for m in -6..=6 {
                    let h = oracle_hodge_dimension(n, p, m, b).unwrap();
                    let chi: i64 = h
                        .iter()
                        .enumerate()
                        .map(|(q, &x)| if q % 2 == 0 { x as i64 } else { -(x as i64) })
                        .sum();
                    assert_eq!(chi, euler_characteristic_from_resolution(n, p, m));
                }
            }
        }
    }
}
