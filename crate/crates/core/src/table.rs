//! Graded Hodge-Du Bois data of a polarized projective variety.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graded::{GradedDimension, TwistRange, Unresolved};
use crate::matrix::QMatrix;

/// The `(p, q, m)` grid `m -> dim H^q(X, DB^p ⊗ L^m)` for one polarized variety.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HodgeDuBoisTable {
    pub name: String,
    pub n: usize,
    pub smooth: bool,
    pub seminormal: bool,
    pub lcdef_x: usize,
    pub entries: BTreeMap<(usize, usize), GradedDimension>,
    pub betti: Option<Vec<u64>>,
    pub coordinate_ring: Option<GradedDimension>,
}

/// Cup product with `c1(L)` on untwisted pieces, block `(p, q)` mapping
/// `H^q(DB^p)` to `H^{q+1}(DB^{p+1})`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LefschetzOperator {
    pub blocks: BTreeMap<(usize, usize), QMatrix>,
}

/// A polarized variety together with the cone flavour requested.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeDescriptor {
    pub base: HodgeDuBoisTable,
    pub lefschetz: LefschetzOperator,
    /// Classical cone `C(X)` over the embedding given by a very ample `L`.
    pub classical: bool,
    /// The embedding is projectively normal, so `R_m = dim(0, 0, m)`.
    pub projectively_normal: bool,
    pub ambient_dim: Option<usize>,
}

impl ConeDescriptor {
    /// Abstract cone `C(X, L)`.
    pub fn abstract_cone(base: HodgeDuBoisTable, lefschetz: LefschetzOperator) -> Self {
        ConeDescriptor {
            base,
            lefschetz,
            classical: false,
            projectively_normal: false,
            ambient_dim: None,
        }
    }

    /// Classical cone over `X ⊂ P^N`; needs either the coordinate ring or a
    /// projective-normality assertion.
    pub fn classical_cone(
        base: HodgeDuBoisTable,
        lefschetz: LefschetzOperator,
        projectively_normal: bool,
        ambient_dim: Option<usize>,
    ) -> Result<Self> {
        if base.coordinate_ring.is_none() && !projectively_normal {
            return Err(Error::Classical(
                "neither a coordinate ring nor projective normality was supplied".into(),
            ));
        }
        Ok(ConeDescriptor {
            base,
            lefschetz,
            classical: true,
            projectively_normal,
            ambient_dim,
        })
    }

    /// `dim Z = n + 1`.
    pub fn cone_dim(&self) -> usize {
        self.base.n + 1
    }
}

impl HodgeDuBoisTable {
    pub fn entry(&self, p: usize, q: usize) -> Option<&GradedDimension> {
        self.entries.get(&(p, q))
    }

    pub fn entry_mut(&mut self, p: usize, q: usize) -> Option<&mut GradedDimension> {
        self.entries.get_mut(&(p, q))
    }

    fn in_range(&self, p: i64, q: i64) -> bool {
        let n = self.n as i64;
        (0..=n).contains(&p) && (0..=n).contains(&q)
    }

    /// Widest window over all entries.
    pub fn window_span(&self) -> (i64, i64) {
        let lo = self.entries.values().map(GradedDimension::window_lo).min().unwrap_or(0);
        let hi = self.entries.values().map(GradedDimension::window_hi).max().unwrap_or(0);
        (lo, hi)
    }

    /// Like [`resolve_dim`], but indices outside `[0, n]` give 0 (the sheaf is zero).
    pub fn dim_or_zero(&self, p: i64, q: i64, m: i64) -> Result<u64> {
        if self.in_range(p, q) {
            resolve_dim(self, p, q, m)
        } else {
            Ok(0)
        }
    }

    /// First nonzero twist of cell `(p, q)` in `range`; cells out of range are zero.
    pub fn first_nonzero(&self, p: i64, q: i64, range: TwistRange) -> Result<Option<(i64, u64)>> {
        if !self.in_range(p, q) {
            return Ok(None);
        }
        let (pu, qu) = (p as usize, q as usize);
        let entry = self.entry(pu, qu).ok_or_else(|| missing_entry(pu, qu))?;
        entry.first_nonzero(range).map_err(|u| unresolved(pu, qu, u))
    }
}

fn missing_entry(p: usize, q: usize) -> Error {
    Error::schema(format!("entries[({p}, {q})]"), "missing Hodge entry")
}

pub(crate) fn unresolved(p: usize, q: usize, u: Unresolved) -> Error {
    match u {
        Unresolved::Undeclared { side, m } => Error::UndeclaredTail { p, q, side, m },
        Unresolved::Corrupt { m, value } => Error::CorruptTail {
            p,
            q,
            m,
            value: crate::rational::format_rational(&value),
        },
    }
}

/// `dim H^q(X, DB^p ⊗ L^m)` from the window or the governing tail.
pub fn resolve_dim(table: &HodgeDuBoisTable, p: i64, q: i64, m: i64) -> Result<u64> {
    if !table.in_range(p, q) {
        return Err(Error::IndexOutOfRange { p, q, n: table.n });
    }
    let (pu, qu) = (p as usize, q as usize);
    let entry = table.entry(pu, qu).ok_or_else(|| missing_entry(pu, qu))?;
    entry.resolve(m).map_err(|u| unresolved(pu, qu, u))
}

/// One failed identity and where it failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: String,
    pub at: String,
    pub detail: String,
}

impl Violation {
    fn new(rule: &str, at: impl Into<String>, detail: impl Into<String>) -> Self {
        Violation {
            rule: rule.to_string(),
            at: at.into(),
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every structural invariant of the table. Violations are data.
pub fn validate_table(table: &HodgeDuBoisTable) -> ValidationReport {
    let mut out = Vec::new();
    let n = table.n;

    if table.lcdef_x > n {
        out.push(Violation::new(
            "lcdef-bound",
            "lcdef",
            format!("lcdef {} exceeds dim {}", table.lcdef_x, n),
        ));
    }
    if table.smooth && table.lcdef_x != 0 {
        out.push(Violation::new("smooth-lcdef", "lcdef", "smooth table must have lcdef 0"));
    }
    if table.smooth && !table.seminormal {
        out.push(Violation::new("smooth-seminormal", "seminormal", "smooth table must be seminormal"));
    }

    for p in 0..=n {
        for q in 0..=n {
            match table.entry(p, q) {
                None => out.push(Violation::new("entry-present", format!("({p},{q})"), "missing entry")),
                Some(g) => out.extend(
                    g.violations()
                        .into_iter()
                        .map(|msg| Violation::new("tail-law", format!("({p},{q})"), msg)),
                ),
            }
        }
    }
    if table.entries.keys().any(|&(p, q)| p > n || q > n) {
        out.push(Violation::new("entry-range", "entries", "entry index exceeds dim"));
    }

    if table.smooth {
        let (lo, hi) = table.window_span();
        let reach = lo.abs().max(hi.abs()) + 10;
        for p in 0..=n {
            for q in 0..=n {
                for m in -reach..=reach {
                    let dual = (n - p, n - q, -m);
                    // report each asymmetric pair once
                    if (p, q, m) > dual {
                        continue;
                    }
                    let here = resolve_dim(table, p as i64, q as i64, m);
                    let there = resolve_dim(table, dual.0 as i64, dual.1 as i64, dual.2);
                    if let (Ok(a), Ok(b)) = (here, there) {
                        if a != b {
                            out.push(Violation::new(
                                "serre-duality",
                                format!("({p},{q},{m})"),
                                format!(
                                    "dim {a} but dual cell ({},{},{}) has dim {b}",
                                    dual.0, dual.1, dual.2
                                ),
                            ));
                        }
                    }
                }
            }
        }
    }

    if let Some(betti) = &table.betti {
        if betti.len() != 2 * n + 1 {
            out.push(Violation::new(
                "betti-length",
                "betti",
                format!("expected {} Betti numbers, got {}", 2 * n + 1, betti.len()),
            ));
        } else {
            for (j, &b) in betti.iter().enumerate() {
                let sum: Result<u64> = (0..=j.min(n))
                    .filter(|&p| j - p <= n)
                    .map(|p| resolve_dim(table, p as i64, (j - p) as i64, 0))
                    .sum();
                match sum {
                    Ok(s) if s != b => out.push(Violation::new(
                        "betti-sum",
                        format!("j={j}"),
                        format!("sum of h^(p,q) over p+q={j} is {s}, b_{j} = {b}"),
                    )),
                    Ok(_) => {}
                    Err(e) => out.push(Violation::new("betti-sum", format!("j={j}"), e.to_string())),
                }
            }
        }
    }

    if let Some(ring) = &table.coordinate_ring {
        out.extend(
            ring.violations()
                .into_iter()
                .map(|msg| Violation::new("tail-law", "coordinate_ring", msg)),
        );
        let (_, hi) = table.window_span();
        let top = hi.max(ring.window_hi()) + 10;
        for m in 0..=top {
            let (Ok(r), Ok(d)) = (ring.resolve(m), resolve_dim(table, 0, 0, m)) else {
                continue;
            };
            if r > d {
                out.push(Violation::new(
                    "ring-embeds",
                    format!("m={m}"),
                    format!("R_{m} = {r} exceeds h^0 part {d}"),
                ));
            }
        }
    }

    ValidationReport { violations: out }
}

/// Shape checks for every block, plus graded hard Lefschetz when requested.
pub fn validate_operator(
    table: &HodgeDuBoisTable,
    op: &LefschetzOperator,
    hard_lefschetz: bool,
) -> ValidationReport {
    let mut out = Vec::new();
    for &(p, q) in op.blocks.keys() {
        if p >= table.n || q >= table.n {
            out.push(Violation::new(
                "lefschetz-index",
                format!("({p},{q})"),
                format!("block index must be below dim {}", table.n),
            ));
            continue;
        }
        if let Err(e) = block_shape_check(table, op, p, q) {
            out.push(Violation::new("lefschetz-shape", format!("({p},{q})"), e.to_string()));
        }
    }
    if hard_lefschetz && out.is_empty() {
        out.extend(hard_lefschetz_violations(table, op));
    }
    ValidationReport { violations: out }
}

fn block_shape_check(table: &HodgeDuBoisTable, op: &LefschetzOperator, p: usize, q: usize) -> Result<()> {
    let Some(m) = op.blocks.get(&(p, q)) else {
        return Ok(());
    };
    let src = table.dim_or_zero(p as i64, q as i64, 0)? as usize;
    let tgt = table.dim_or_zero(p as i64 + 1, q as i64 + 1, 0)? as usize;
    if m.rows() != tgt || m.cols() != src {
        return Err(Error::ShapeMismatch {
            p,
            q,
            rows: m.rows(),
            cols: m.cols(),
            exp_rows: tgt,
            exp_cols: src,
        });
    }
    Ok(())
}

/// Matrix of block `(p, q)`, zero-filled when absent or out of range.
fn block_matrix(table: &HodgeDuBoisTable, op: &LefschetzOperator, p: i64, q: i64) -> Result<QMatrix> {
    let src = table.dim_or_zero(p, q, 0)? as usize;
    let tgt = table.dim_or_zero(p + 1, q + 1, 0)? as usize;
    if p >= 0 && q >= 0 {
        if let Some(m) = op.blocks.get(&(p as usize, q as usize)) {
            block_shape_check(table, op, p as usize, q as usize)?;
            return Ok(m.clone());
        }
    }
    Ok(QMatrix::zeros(tgt, src))
}

fn hard_lefschetz_violations(table: &HodgeDuBoisTable, op: &LefschetzOperator) -> Vec<Violation> {
    let n = table.n as i64;
    let mut out = Vec::new();
    for j in 0..n {
        for p in 0..=j {
            let q = j - p;
            let result = (|| -> Result<(usize, usize, usize)> {
                let mut acc = QMatrix::identity(table.dim_or_zero(p, q, 0)? as usize);
                for t in 0..(n - j) {
                    let block = block_matrix(table, op, p + t, q + t)?;
                    acc = block.mul(&acc).expect("consecutive block shapes agree");
                }
                let src = table.dim_or_zero(p, q, 0)? as usize;
                let tgt = table.dim_or_zero(p + n - j, q + n - j, 0)? as usize;
                Ok((acc.rank(), src, tgt))
            })();
            match result {
                Ok((rank, src, tgt)) if rank != src.min(tgt) => out.push(Violation::new(
                    "hard-lefschetz",
                    format!("({p},{q})"),
                    format!("composite of {} blocks has rank {rank}, expected {}", n - j, src.min(tgt)),
                )),
                Ok(_) => {}
                Err(e) => out.push(Violation::new("hard-lefschetz", format!("({p},{q})"), e.to_string())),
            }
        }
    }
    out
}

/// Rank data of one Lefschetz block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BlockRank {
    pub p: i64,
    pub q: i64,
    pub rank: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub injective: bool,
    pub surjective: bool,
    /// Block missing between nonzero spaces and treated as the zero map.
    pub defaulted: bool,
}

impl BlockRank {
    pub fn iso(&self) -> bool {
        self.injective && self.surjective
    }
}

/// Block rank for any integer `(p, q)`; spaces outside the table are zero.
pub fn block_rank(table: &HodgeDuBoisTable, op: &LefschetzOperator, p: i64, q: i64) -> Result<BlockRank> {
    let source_dim = table.dim_or_zero(p, q, 0)? as usize;
    let target_dim = table.dim_or_zero(p + 1, q + 1, 0)? as usize;
    let present = p >= 0 && q >= 0 && op.blocks.contains_key(&(p as usize, q as usize));
    let rank = if present {
        block_matrix(table, op, p, q)?.rank()
    } else {
        0
    };
    Ok(BlockRank {
        p,
        q,
        rank,
        source_dim,
        target_dim,
        injective: rank == source_dim,
        surjective: rank == target_dim,
        defaulted: !present && source_dim > 0 && target_dim > 0,
    })
}

/// Exact rank of the Lefschetz block `(p, q)`, `0 <= p, q <= n - 1`.
pub fn lefschetz_rank(
    table: &HodgeDuBoisTable,
    op: &LefschetzOperator,
    p: usize,
    q: usize,
) -> Result<BlockRank> {
    if table.n == 0 || p >= table.n || q >= table.n {
        return Err(Error::IndexOutOfRange {
            p: p as i64,
            q: q as i64,
            n: table.n,
        });
    }
    block_rank(table, op, p as i64, q as i64)
}
