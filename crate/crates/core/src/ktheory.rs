//! Graded dimension data of `K_0(Z)`, `K_{-l}(Z)` and the higher pieces
//! `K_l^{(i)}(Z)` of the cone, read off the Hodge-Du Bois table.
//!
//! The formulas are stated for Du Bois complexes relative to `Q`; the table
//! holds `C`-relative dimensions. Every series carries the filtration bounds
//! from `Ω^1_{C/Q} ⊗ DB^{p-1}_{X/Q} -> DB^p_{X/Q} -> DB^p_{X/C}`: when all the
//! `(p - j, q)` cells vanish in positive twist, the two answers agree.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graded::{GradedDimension, Tail, TailSide, TwistRange, Unresolved};
use crate::table::{resolve_dim, unresolved, ConeDescriptor, HodgeDuBoisTable};

pub const RELATIVE_BASE: &str = "C-relative";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KContribution {
    /// Du Bois index `p` of the source cell.
    pub i: usize,
    pub q: usize,
    pub m: i64,
    pub dim: u64,
}

/// Law of a source cell for `m > from_m - 1`, beyond the explicit window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KTail {
    pub i: usize,
    pub q: usize,
    pub from_m: i64,
    pub law: String,
}

/// A nonzero `(p - j, q)` cell bounding the `Q`/`C` discrepancy at `(p, q)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiltrationBound {
    pub j: usize,
    pub p: usize,
    pub q: usize,
    pub m: i64,
    pub dim: u64,
    pub symbol: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelativeBase {
    pub marker: &'static str,
    pub bounds: Vec<FiltrationBound>,
    /// No bound is nonzero, so `Q`- and `C`-relative dimensions agree.
    pub coincides: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PicSummand {
    /// Nonzero `dim(R^+_m) - dim(R_m)`, `m >= 1`, up to `through_m`.
    pub dims: Vec<(i64, u64)>,
    pub through_m: i64,
    pub tail: String,
}

impl PicSummand {
    pub fn is_zero(&self) -> bool {
        self.dims.is_empty() && self.tail == Tail::Zero.describe()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KGradedSeries {
    pub label: String,
    pub free_rank: u64,
    /// Nonzero window terms; zero terms are omitted.
    pub contributions: Vec<KContribution>,
    /// Nonzero polynomial tails of the source cells.
    pub tails: Vec<KTail>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pic: Option<PicSummand>,
    pub relative_base: RelativeBase,
}

impl KGradedSeries {
    /// Everything except the free summand vanishes.
    pub fn non_free_is_zero(&self) -> bool {
        self.contributions.is_empty()
            && self.tails.is_empty()
            && self.pic.as_ref().map_or(true, PicSummand::is_zero)
    }
}

fn entry(table: &HodgeDuBoisTable, p: usize, q: usize) -> Result<&GradedDimension> {
    table.entry(p, q).ok_or_else(|| {
        Error::schema(format!("entries[({p}, {q})]"), "missing Hodge entry")
    })
}

/// Collects the series over `m >= 1` for the listed source cells.
fn series(table: &HodgeDuBoisTable, label: String, free_rank: u64, cells: &[(usize, usize)]) -> Result<KGradedSeries> {
    let mut contributions = Vec::new();
    let mut tails = Vec::new();
    let mut bounds = Vec::new();
    for &(p, q) in cells {
        let g = entry(table, p, q)?;
        let hi = g.window_hi().max(0);
        for m in 1..=hi {
            let dim = resolve_dim(table, p as i64, q as i64, m)?;
            if dim != 0 {
                contributions.push(KContribution { i: p, q, m, dim });
            }
        }
        match g.pos_tail() {
            Tail::Zero => {}
            Tail::Undeclared => {
                return Err(unresolved(
                    p,
                    q,
                    Unresolved::Undeclared {
                        side: TailSide::Positive,
                        m: hi + 1,
                    },
                ))
            }
            tail @ Tail::Polynomial(_) => {
                // validates the law before echoing it
                resolve_dim(table, p as i64, q as i64, hi + 1)?;
                tails.push(KTail {
                    i: p,
                    q,
                    from_m: hi + 1,
                    law: tail.describe(),
                });
            }
        }
        for j in 1..=p {
            if let Some((m, dim)) = table.first_nonzero((p - j) as i64, q as i64, TwistRange::AtLeast(1))? {
                bounds.push(FiltrationBound {
                    j,
                    p,
                    q,
                    m,
                    dim,
                    symbol: format!("Omega^{j}_(C/Q) (x) H^{q}(DB^{} (x) L^{m})", p - j),
                });
            }
        }
    }
    let coincides = bounds.is_empty();
    Ok(KGradedSeries {
        label,
        free_rank,
        contributions,
        tails,
        pic: None,
        relative_base: RelativeBase {
            marker: RELATIVE_BASE,
            bounds,
            coincides,
        },
    })
}

/// `K_0(Z) = Z ⊕ ⊕_{1<=i<=n} ⊕_{m>=1} H^i(X, DB^i ⊗ L^m)`.
pub fn k_zero(desc: &ConeDescriptor) -> Result<KGradedSeries> {
    let n = desc.base.n;
    let cells: Vec<_> = (1..=n).map(|i| (i, i)).collect();
    series(&desc.base, "K_0".into(), 1, &cells)
}

/// `K_{-l}(Z) = ⊕_{0<=i<=n-l} ⊕_{m>=1} H^{l+i}(X, DB^i ⊗ L^m)`; empty for `l > n`.
pub fn k_negative(desc: &ConeDescriptor, l: usize) -> Result<KGradedSeries> {
    if l == 0 {
        return Err(Error::OutOfRange {
            what: "K-theory degree",
            detail: "negative K-groups need l >= 1".into(),
        });
    }
    let n = desc.base.n;
    let cells: Vec<_> = if l <= n { (0..=n - l).map(|i| (i, l + i)).collect() } else { Vec::new() };
    series(&desc.base, format!("K_-{l}"), 0, &cells)
}

/// `K_0` of the classical cone: adds `Pic(C(X)) = R^+ / R`.
pub fn k_zero_classical(desc: &ConeDescriptor) -> Result<KGradedSeries> {
    if !desc.classical {
        return Err(Error::Classical("descriptor is not a classical cone".into()));
    }
    let table = &desc.base;
    let mut out = k_zero(desc)?;
    let r_plus = entry(table, 0, 0)?;
    let pic = match (&table.coordinate_ring, desc.projectively_normal) {
        (Some(ring), _) => pic_summand(table, r_plus, ring)?,
        (None, true) => PicSummand {
            dims: Vec::new(),
            through_m: r_plus.window_hi().max(1),
            tail: Tail::Zero.describe(),
        },
        (None, false) => {
            return Err(Error::Classical(
                "coordinate ring missing and embedding not declared projectively normal".into(),
            ))
        }
    };
    out.pic = Some(pic);
    Ok(out)
}

fn pic_summand(table: &HodgeDuBoisTable, r_plus: &GradedDimension, ring: &GradedDimension) -> Result<PicSummand> {
    let through = r_plus.window_hi().max(ring.window_hi()).max(1);
    let ring_at = |m: i64| {
        ring.resolve(m).map_err(|u| match u {
            Unresolved::Undeclared { side, m } => {
                Error::schema("coordinate_ring", format!("{side} tail undeclared at m = {m}"))
            }
            Unresolved::Corrupt { m, value } => Error::schema(
                "coordinate_ring",
                format!("tail value {} at m = {m}", crate::rational::format_rational(&value)),
            ),
        })
    };
    let diff = |m: i64| -> Result<u64> {
        let plus = resolve_dim(table, 0, 0, m)?;
        let r = ring_at(m)?;
        plus.checked_sub(r).ok_or_else(|| {
            Error::Inconsistent(format!("R_{m} = {r} exceeds dim H^0(X, L^{m}) = {plus}"))
        })
    };
    let mut dims = Vec::new();
    for m in 1..=through {
        let d = diff(m)?;
        if d != 0 {
            dims.push((m, d));
        }
    }
    // both tails govern beyond `through`; probe their difference past it
    for m in through + 1..=through + 10 {
        diff(m)?;
    }
    let tail = match (r_plus.pos_tail(), ring.pos_tail()) {
        (Tail::Zero, Tail::Zero) => Tail::Zero,
        (Tail::Polynomial(a), Tail::Zero) => Tail::polynomial(a.clone()),
        (Tail::Polynomial(a), Tail::Polynomial(b)) => Tail::polynomial(a.sub(b)),
        (Tail::Zero, Tail::Polynomial(b)) => Tail::polynomial(crate::rational::Polynomial::zero().sub(b)),
        _ => Tail::Undeclared,
    };
    Ok(PicSummand {
        dims,
        through_m: through,
        tail: tail.describe(),
    })
}

/// `K_l^{(i)}(Z) = ⊕_{m>=1} H^{i-l-1}(X, DB^{i-1} ⊗ L^m)` for `i >= l + 2`.
pub fn higher_k_piece(desc: &ConeDescriptor, l: usize, i: usize) -> Result<KGradedSeries> {
    if l == 0 || i < l + 2 {
        return Err(Error::OutOfRange {
            what: "Adams weight",
            detail: format!("need l >= 1 and i >= l + 2, got l = {l}, i = {i}"),
        });
    }
    if i - 1 > desc.base.n {
        return Err(Error::OutOfRange {
            what: "Adams weight",
            detail: format!("i - 1 = {} exceeds dim X = {}", i - 1, desc.base.n),
        });
    }
    series(&desc.base, format!("K_{l}^({i})"), 0, &[(i - 1, i - l - 1)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{catalog_table, manifest, projective_space_table};
    use crate::vanishing::{pre_p_dubois_level, PreDuBoisLevel};

    fn proj(n: usize, d: u64) -> ConeDescriptor {
        let (t, op) = projective_space_table(n, d, 10).unwrap();
        ConeDescriptor::abstract_cone(t, op)
    }

    #[test]
    fn k_zero_of_projective_cones() {
        for d in 1..=5 {
            let k = k_zero(&proj(1, d)).unwrap();
            assert_eq!(k.free_rank, 1);
            assert!(k.non_free_is_zero());
            assert!(k.relative_base.coincides);
        }
        assert!(k_zero(&proj(2, 1)).unwrap().non_free_is_zero());
    }

    #[test]
    fn synthetic_k_zero_term() {
        let mut desc = proj(2, 1);
        desc.base.entry_mut(1, 1).unwrap().set_value(1, 2);
        let k = k_zero(&desc).unwrap();
        assert_eq!(k.contributions, vec![KContribution { i: 1, q: 1, m: 1, dim: 2 }]);
    }

    #[test]
    fn negative_k_groups() {
        assert!(k_negative(&proj(1, 2), 1).unwrap().non_free_is_zero());
        let k = k_negative(&proj(2, 1), 3).unwrap();
        assert!(k.contributions.is_empty() && k.tails.is_empty());
        assert!(k_negative(&proj(2, 1), 0).is_err());
        // K_{-n} of the quadric cone reads h^1(O(2m)) = 0
        assert!(k_negative(&proj(1, 2), 1).unwrap().contributions.is_empty());
    }

    #[test]
    fn higher_pieces() {
        assert!(higher_k_piece(&proj(2, 1), 1, 3).unwrap().non_free_is_zero());
        assert!(higher_k_piece(&proj(2, 1), 1, 4).is_err());
        assert!(higher_k_piece(&proj(2, 1), 1, 2).is_err());
        let mut desc = proj(2, 1);
        desc.base.entry_mut(2, 1).unwrap().set_value(1, 4);
        let k = higher_k_piece(&desc, 1, 3).unwrap();
        assert_eq!(k.contributions, vec![KContribution { i: 2, q: 1, m: 1, dim: 4 }]);
    }

    #[test]
    fn classical_pic() {
        let mut desc = proj(1, 3);
        desc.classical = true;
        assert!(k_zero_classical(&desc).is_err());
        desc.projectively_normal = true;
        let k = k_zero_classical(&desc).unwrap();
        assert!(k.non_free_is_zero());
        let mut plain = k.clone();
        plain.pic = None;
        assert_eq!(plain, k_zero(&desc).unwrap());

        // R_1 one short of h^0(O(3)) = 4
        let r_plus = desc.base.entry(0, 0).unwrap().clone();
        let mut ring = r_plus.clone();
        ring.set_value(1, 3);
        desc.base.coordinate_ring = Some(ring.clone());
        let k = k_zero_classical(&desc).unwrap();
        let pic = k.pic.unwrap();
        assert_eq!(pic.dims, vec![(1, 1)]);
        assert_eq!(pic.tail, "zero");

        ring.set_value(1, 5);
        desc.base.coordinate_ring = Some(ring);
        assert!(matches!(k_zero_classical(&desc), Err(Error::Inconsistent(_))));

        desc.base.coordinate_ring = Some(r_plus);
        assert!(k_zero_classical(&desc).unwrap().pic.unwrap().is_zero());
    }

    #[test]
    fn structural_vanishing_on_manifest() {
        for (name, spec) in manifest() {
            let (t, op) = catalog_table(&spec).unwrap();
            let n = t.n;
            let desc = ConeDescriptor::abstract_cone(t, op);
            for l in n + 1..=n + 3 {
                let k = k_negative(&desc, l).unwrap();
                assert!(k.contributions.is_empty() && k.tails.is_empty(), "{name} l={l}");
            }
            if pre_p_dubois_level(&desc).unwrap() == PreDuBoisLevel::All {
                assert!(k_zero(&desc).unwrap().non_free_is_zero(), "{name}");
            }
        }
    }
}
