//! Closed-form tables for projective spaces and their products.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graded::{GradedDimension, Tail};
use crate::matrix::QMatrix;
use crate::rational::{binomial, rational_from_i64};
use crate::table::{HodgeDuBoisTable, LefschetzOperator};

/// `P^{n_1} x ... x P^{n_r}` polarized by `O(a_1, ..., a_r)`, tabulated on `[-window, window]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogSpec {
    pub factors: Vec<usize>,
    pub polarization: Vec<u64>,
    pub window: i64,
}

impl CatalogSpec {
    pub fn new(factors: Vec<usize>, polarization: Vec<u64>, window: Option<i64>) -> Result<Self> {
        let n: usize = factors.iter().sum();
        let spec = CatalogSpec {
            window: window.unwrap_or_else(|| default_window(n)),
            factors,
            polarization,
        };
        spec.check()?;
        Ok(spec)
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().sum()
    }

    pub fn check(&self) -> Result<()> {
        if self.factors.is_empty() {
            return Err(Error::InvalidSpec("no factors".into()));
        }
        if self.factors.len() != self.polarization.len() {
            return Err(Error::InvalidSpec(format!(
                "{} factors but {} polarization degrees",
                self.factors.len(),
                self.polarization.len()
            )));
        }
        if self.factors.len() > 1 && self.factors.contains(&0) {
            return Err(Error::InvalidSpec("product factors must be positive-dimensional".into()));
        }
        if self.polarization.contains(&0) {
            return Err(Error::InvalidSpec("polarization degrees must be >= 1 (L ample)".into()));
        }
        if self.window < 1 {
            return Err(Error::InvalidSpec("window must be positive".into()));
        }
        Ok(())
    }

    /// `P2@1`, `P1xP2@1,1`.
    pub fn name(&self) -> String {
        let factors: Vec<String> = self.factors.iter().map(|n| format!("P{n}")).collect();
        let pol: Vec<String> = self.polarization.iter().map(u64::to_string).collect();
        format!("{}@{}", factors.join("x"), pol.join(","))
    }
}

/// `max(2(n + 1), 8)`.
pub fn default_window(n: usize) -> i64 {
    (2 * (n as i64 + 1)).max(8)
}

/// `dim H^q(P^n, Ω^p(k))` by Bott's formula.
pub fn bott_dimension(n: usize, p: usize, q: usize, k: i64) -> Result<u64> {
    if p > n || q > n {
        return Err(Error::IndexOutOfRange {
            p: p as i64,
            q: q as i64,
            n,
        });
    }
    let (n, p, q) = (n as i64, p as i64, q as i64);
    let value = if q == 0 && k > p {
        binomial(k + n - p, k) * binomial(k - 1, p)
    } else if q == p && k == 0 {
        1
    } else if q == n && k < p - n {
        binomial(-k + p, -k) * binomial(-k - 1, n - p)
    } else {
        0
    };
    Ok(value)
}

fn tail_for(f: impl Fn(i64) -> u64, window: i64, n: usize) -> Result<(Tail, Tail)> {
    let pos = Tail::fit(&f, window + 1, 1, n);
    let neg = Tail::fit(&f, -window - 1, -1, n);
    match (pos, neg) {
        (Some(pos), Some(neg)) => Ok((pos, neg)),
        _ => Err(Error::Inconsistent(
            "closed form is not polynomial beyond the window".into(),
        )),
    }
}

/// Table and Lefschetz operator of `P^n` with `L = O(d)`.
pub fn projective_space_table(n: usize, d: u64, window: i64) -> Result<(HodgeDuBoisTable, LefschetzOperator)> {
    if d == 0 {
        return Err(Error::InvalidSpec("L = O(0) is not ample".into()));
    }
    if window < 1 {
        return Err(Error::InvalidSpec("window must be positive".into()));
    }
    let d = d as i64;
    let mut entries = BTreeMap::new();
    for p in 0..=n {
        for q in 0..=n {
            let f = |m: i64| bott_dimension(n, p, q, d * m).expect("indices in range");
            let (pos, neg) = tail_for(f, window, n)?;
            entries.insert((p, q), GradedDimension::from_fn(-window, window, f, pos, neg));
        }
    }
    let betti = (0..=2 * n).map(|j| u64::from(j % 2 == 0)).collect();
    let table = HodgeDuBoisTable {
        name: format!("P{n}@{d}"),
        n,
        smooth: true,
        seminormal: true,
        lcdef_x: 0,
        entries,
        betti: Some(betti),
        coordinate_ring: None,
    };
    let blocks = (0..n)
        .map(|p| ((p, p), QMatrix::from_i64(&[&[d]])))
        .collect();
    Ok((table, LefschetzOperator { blocks }))
}

/// Künneth: sum over splittings of `(p, q)` across the factors.
fn kunneth_dim(factors: &[usize], twists: &[i64], p: usize, q: usize) -> u64 {
    match factors.split_first() {
        None => u64::from(p == 0 && q == 0),
        Some((&n0, rest)) => {
            let mut total = 0;
            for p0 in 0..=n0.min(p) {
                for q0 in 0..=n0.min(q) {
                    let here = bott_dimension(n0, p0, q0, twists[0]).expect("in range");
                    if here == 0 {
                        continue;
                    }
                    total += here * kunneth_dim(rest, &twists[1..], p - p0, q - q0);
                }
            }
            total
        }
    }
}

/// Exponent vectors `e` with `sum e = degree`, `e_i <= n_i`, in
/// lexicographically decreasing order (so `h_1` precedes `h_2`).
pub fn monomial_basis(factors: &[usize], degree: usize) -> Vec<Vec<usize>> {
    fn go(factors: &[usize], degree: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        match factors.split_first() {
            None => {
                if degree == 0 {
                    out.push(prefix.clone());
                }
            }
            Some((&n0, rest)) => {
                for e in (0..=n0.min(degree)).rev() {
                    prefix.push(e);
                    go(rest, degree - e, prefix, out);
                    prefix.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    go(factors, degree, &mut Vec::new(), &mut out);
    out
}

/// Multiplication by `sum a_i h_i` from degree `p` to `p + 1` in
/// `⊗ Q[h_i]/(h_i^{n_i + 1})`, columns indexed by the degree-`p` basis.
pub fn hyperplane_multiplication(factors: &[usize], polarization: &[u64], p: usize) -> QMatrix {
    let source = monomial_basis(factors, p);
    let target = monomial_basis(factors, p + 1);
    let index: BTreeMap<&Vec<usize>, usize> = target.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut m = QMatrix::zeros(target.len(), source.len());
    for (col, e) in source.iter().enumerate() {
        for (i, &a) in polarization.iter().enumerate() {
            if e[i] < factors[i] {
                let mut shifted = e.clone();
                shifted[i] += 1;
                let row = index[&shifted];
                m.add_to(row, col, &rational_from_i64(a as i64));
            }
        }
    }
    m
}

pub fn kunneth_betti(factors: &[usize]) -> Vec<u64> {
    factors.iter().fold(vec![1u64], |acc, &n| {
        let factor: Vec<u64> = (0..=2 * n).map(|j| u64::from(j % 2 == 0)).collect();
        let mut out = vec![0; acc.len() + factor.len() - 1];
        for (i, a) in acc.iter().enumerate() {
            for (j, b) in factor.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        out
    })
}

/// Table and Lefschetz operator of a product of projective spaces.
pub fn product_table(spec: &CatalogSpec) -> Result<(HodgeDuBoisTable, LefschetzOperator)> {
    spec.check()?;
    let n = spec.dim();
    let window = spec.window;
    let mut entries = BTreeMap::new();
    for p in 0..=n {
        for q in 0..=n {
            let f = |m: i64| {
                let twists: Vec<i64> = spec.polarization.iter().map(|&a| a as i64 * m).collect();
                kunneth_dim(&spec.factors, &twists, p, q)
            };
            let (pos, neg) = tail_for(f, window, n)?;
            entries.insert((p, q), GradedDimension::from_fn(-window, window, f, pos, neg));
        }
    }
    let table = HodgeDuBoisTable {
        name: spec.name(),
        n,
        smooth: true,
        seminormal: true,
        lcdef_x: 0,
        entries,
        betti: Some(kunneth_betti(&spec.factors)),
        coordinate_ring: None,
    };
    let blocks = (0..n)
        .map(|p| ((p, p), hyperplane_multiplication(&spec.factors, &spec.polarization, p)))
        .collect();
    Ok((table, LefschetzOperator { blocks }))
}

/// Table for any catalog spec; a single factor goes through the direct route.
pub fn catalog_table(spec: &CatalogSpec) -> Result<(HodgeDuBoisTable, LefschetzOperator)> {
    spec.check()?;
    if spec.factors.len() == 1 {
        projective_space_table(spec.factors[0], spec.polarization[0], spec.window)
    } else {
        product_table(spec)
    }
}

/// Nondecreasing tuples of length `len` with entries in `1..=max`.
fn sorted_tuples(len: usize, max: u64) -> Vec<Vec<u64>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in sorted_tuples(len - 1, max) {
        let lo = rest.last().copied().unwrap_or(1);
        for a in lo..=max {
            let mut t = rest.clone();
            t.push(a);
            out.push(t);
        }
    }
    out
}

/// Partitions of `n` into positive parts, nondecreasing.
fn partitions(n: usize, min: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in min..=n {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Built-in catalog: the point, and every product of projective spaces of
/// total dimension 1..=4 with polarization degrees in 1..=3, up to
/// reordering of isomorphic factors.
pub fn manifest() -> BTreeMap<String, CatalogSpec> {
    let mut out = BTreeMap::new();
    let point = CatalogSpec::new(vec![0], vec![1], None).expect("valid");
    out.insert(point.name(), point);
    for n in 1..=4 {
        for factors in partitions(n, 1) {
            // polarization tuples, nondecreasing within each run of equal factors
            let mut pols: Vec<Vec<u64>> = vec![Vec::new()];
            let mut i = 0;
            while i < factors.len() {
                let run = factors[i..].iter().take_while(|&&f| f == factors[i]).count();
                pols = pols
                    .into_iter()
                    .flat_map(|prefix| {
                        sorted_tuples(run, 3).into_iter().map(move |t| {
                            let mut p = prefix.clone();
                            p.extend(t);
                            p
                        })
                    })
                    .collect();
                i += run;
            }
            for pol in pols {
                let spec = CatalogSpec::new(factors.clone(), pol, None).expect("valid");
                out.insert(spec.name(), spec);
            }
        }
    }
    out
}
