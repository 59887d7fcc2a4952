//! Du Bois data of the cone `Z = C(X, L)`: graded pieces, restriction maps
//! to the punctured cone, and depth at the vertex.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graded::{GradedDimension, Tail, TwistRange};
use crate::table::{block_rank, BlockRank, ConeDescriptor, HodgeDuBoisTable};

/// One cohomological degree `i` of `Γ(Z, H^i DB_Z^k)`, graded by `m >= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeRow {
    /// The constant `C` in degree `(k, i) = (0, 0)`.
    pub constant_summand: u8,
    /// `m -> dim H^i(X, DB^k ⊗ L^m)`.
    pub top_part: GradedDimension,
    /// `m -> dim H^i(X, DB^{k-1} ⊗ L^m)`; absent for `k = 0`.
    pub lower_part: Option<GradedDimension>,
}

impl ConeRow {
    /// Total dimension in degree `m >= 1`.
    pub fn total(&self, m: i64) -> Option<u64> {
        let top = self.top_part.resolve(m).ok()?;
        let lower = match &self.lower_part {
            Some(g) => g.resolve(m).ok()?,
            None => 0,
        };
        Some(top + lower)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeDuBoisTable {
    pub k: usize,
    pub rows: BTreeMap<usize, ConeRow>,
}

fn check_k(desc: &ConeDescriptor, k: usize) -> Result<()> {
    if k > desc.cone_dim() {
        return Err(Error::OutOfRange {
            what: "k",
            detail: format!("k = {k} exceeds dim Z = {}", desc.cone_dim()),
        });
    }
    Ok(())
}

/// `m >= 1` restriction of cell `(p, q)`; zero when `p` is out of range.
fn positive_part(table: &HodgeDuBoisTable, p: usize, q: usize) -> Result<GradedDimension> {
    let Some(entry) = (p <= table.n).then(|| table.entry(p, q)).flatten() else {
        let (_, hi) = table.window_span();
        return Ok(GradedDimension::zero(1, hi.max(1)));
    };
    let hi = entry.window_hi().max(1);
    let mut values = BTreeMap::new();
    for m in 1..=hi {
        values.insert(m, table.dim_or_zero(p as i64, q as i64, m)?);
    }
    Ok(GradedDimension::new(1, hi, values, entry.pos_tail().clone(), Tail::Zero)
        .expect("window covered"))
}

/// Graded pieces of `DB_Z^k`.
pub fn cone_dubois(desc: &ConeDescriptor, k: usize) -> Result<ConeDuBoisTable> {
    check_k(desc, k)?;
    let table = &desc.base;
    let mut rows = BTreeMap::new();
    for i in 0..=table.n {
        let top_part = positive_part(table, k, i)?;
        let lower_part = if k == 0 {
            None
        } else {
            Some(positive_part(table, k - 1, i)?)
        };
        rows.insert(
            i,
            ConeRow {
                constant_summand: u8::from(k == 0 && i == 0),
                top_part,
                lower_part,
            },
        );
    }
    Ok(ConeDuBoisTable { k, rows })
}

/// Why a vanishing or rank condition failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `dim H^q(X, DB^p ⊗ L^m) != 0` where vanishing was required.
    NonzeroTwist { p: i64, q: i64, m: i64, dim: u64 },
    /// `dim H^q(X, DB^p) != 0` where vanishing was required.
    NonzeroUntwisted { p: i64, q: i64, dim: u64 },
    NotIso { block: BlockRank },
    NotInjective { block: BlockRank },
    NotSurjective { block: BlockRank },
}

impl Witness {
    pub fn describe(&self) -> String {
        match self {
            Witness::NonzeroTwist { p, q, m, dim } => format!("dim({p},{q},{m}) = {dim} != 0"),
            Witness::NonzeroUntwisted { p, q, dim } => format!("dim({p},{q},0) = {dim} != 0"),
            Witness::NotIso { block } => format!(
                "Lefschetz block ({},{}) not iso (rank {}, {} -> {})",
                block.p, block.q, block.rank, block.source_dim, block.target_dim
            ),
            Witness::NotInjective { block } => format!(
                "Lefschetz block ({},{}) not injective (rank {}, {} -> {})",
                block.p, block.q, block.rank, block.source_dim, block.target_dim
            ),
            Witness::NotSurjective { block } => format!(
                "Lefschetz block ({},{}) not surjective (rank {}, {} -> {})",
                block.p, block.q, block.rank, block.source_dim, block.target_dim
            ),
        }
    }
}

/// Verdict of a condition set with every failure recorded.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ConditionOutcome {
    pub holds: bool,
    pub failures: Vec<Witness>,
    /// Lefschetz blocks consulted that were absent between nonzero spaces.
    pub defaulted_blocks: Vec<(i64, i64)>,
}

#[derive(Default)]
struct Collector {
    failures: Vec<Witness>,
    defaulted: Vec<(i64, i64)>,
}

impl Collector {
    fn vanish(&mut self, table: &HodgeDuBoisTable, p: i64, q: i64, range: TwistRange) -> Result<()> {
        if let Some((m, dim)) = table.first_nonzero(p, q, range)? {
            self.failures.push(Witness::NonzeroTwist { p, q, m, dim });
        }
        Ok(())
    }

    fn untwisted_zero(&mut self, table: &HodgeDuBoisTable, p: i64, q: i64) -> Result<()> {
        let dim = table.dim_or_zero(p, q, 0)?;
        if dim != 0 {
            self.failures.push(Witness::NonzeroUntwisted { p, q, dim });
        }
        Ok(())
    }

    fn block(&mut self, desc: &ConeDescriptor, p: i64, q: i64) -> Result<BlockRank> {
        let b = block_rank(&desc.base, &desc.lefschetz, p, q)?;
        if b.defaulted && !self.defaulted.contains(&(p, q)) {
            self.defaulted.push((p, q));
        }
        Ok(b)
    }

    fn iso(&mut self, desc: &ConeDescriptor, p: i64, q: i64) -> Result<()> {
        let block = self.block(desc, p, q)?;
        if !block.iso() {
            self.failures.push(Witness::NotIso { block });
        }
        Ok(())
    }

    fn injective(&mut self, desc: &ConeDescriptor, p: i64, q: i64) -> Result<()> {
        let block = self.block(desc, p, q)?;
        if !block.injective {
            self.failures.push(Witness::NotInjective { block });
        }
        Ok(())
    }

    fn surjective(&mut self, desc: &ConeDescriptor, p: i64, q: i64) -> Result<()> {
        let block = self.block(desc, p, q)?;
        if !block.surjective {
            self.failures.push(Witness::NotSurjective { block });
        }
        Ok(())
    }

    fn finish(self) -> ConditionOutcome {
        ConditionOutcome {
            holds: self.failures.is_empty(),
            failures: self.failures,
            defaulted_blocks: self.defaulted,
        }
    }
}

/// Whether `H^i(Z, DB_Z^k) -> H^i(U, DB_U^k)` is an isomorphism, `U = Z ∖ {x}`.
/// The map is always injective.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RestrictionTest {
    pub k: usize,
    pub i: usize,
    pub injective: bool,
    pub iso: bool,
    pub witnesses: Vec<Witness>,
    pub defaulted_blocks: Vec<(i64, i64)>,
}

pub fn restriction_iso_test(desc: &ConeDescriptor, k: usize, i: usize) -> Result<RestrictionTest> {
    check_k(desc, k)?;
    let table = &desc.base;
    let (k_i, i_i) = (k as i64, i as i64);
    let mut c = Collector::default();
    if k == 0 {
        let range = if i == 0 {
            TwistRange::AtMost(-1)
        } else {
            TwistRange::AtMost(0)
        };
        c.vanish(table, 0, i_i, range)?;
    } else {
        c.vanish(table, k_i, i_i, TwistRange::AtMost(-1))?;
        c.vanish(table, k_i - 1, i_i, TwistRange::AtMost(-1))?;
        c.surjective(desc, k_i - 1, i_i - 1)?;
        c.injective(desc, k_i - 1, i_i)?;
    }
    let outcome = c.finish();
    Ok(RestrictionTest {
        k,
        i,
        injective: true,
        iso: outcome.holds,
        witnesses: outcome.failures,
        defaulted_blocks: outcome.defaulted_blocks,
    })
}

/// Evaluates the condition set for `depth_x DB_Z^k > d`, `d >= 1`.
pub fn depth_exceeds(desc: &ConeDescriptor, k: usize, d: usize) -> Result<ConditionOutcome> {
    check_k(desc, k)?;
    if d == 0 {
        return Err(Error::OutOfRange {
            what: "d",
            detail: "depth conditions start at d = 1".into(),
        });
    }
    let table = &desc.base;
    let (k_i, d_i) = (k as i64, d as i64);
    let mut c = Collector::default();
    if k == 0 {
        c.vanish(table, 0, 0, TwistRange::AtMost(-1))?;
        for i in 1..d_i {
            c.vanish(table, 0, i, TwistRange::AtMost(0))?;
        }
    } else {
        for i in 0..d_i {
            c.vanish(table, k_i - 1, i, TwistRange::AtMost(-1))?;
            c.vanish(table, k_i, i, TwistRange::AtMost(-1))?;
        }
        c.untwisted_zero(table, k_i, 0)?;
        for i in 0..=d_i - 2 {
            c.iso(desc, k_i - 1, i)?;
        }
        c.injective(desc, k_i - 1, d_i - 1)?;
    }
    Ok(c.finish())
}

/// Depth value, capped at `dim Z + 1`. Serializes as `"2"` or `">=4"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DepthValue {
    Exact(usize),
    AtLeast(usize),
}

impl DepthValue {
    /// Numeric value, with the cap standing in for itself.
    pub fn as_number(&self) -> usize {
        match *self {
            DepthValue::Exact(d) | DepthValue::AtLeast(d) => d,
        }
    }
}

impl Serialize for DepthValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl std::fmt::Display for DepthValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DepthValue::Exact(d) => write!(f, "{d}"),
            DepthValue::AtLeast(d) => write!(f, ">={d}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DepthResult {
    pub k: usize,
    pub depth: DepthValue,
    /// Failures of the `depth > d` conditions at `d = depth`; empty when capped.
    pub witnesses: Vec<Witness>,
    pub defaulted_blocks: Vec<(i64, i64)>,
}

/// `depth_x DB_Z^k`: the least `d >= 1` whose `depth > d` condition fails.
pub fn depth_at_vertex(desc: &ConeDescriptor, k: usize) -> Result<DepthResult> {
    check_k(desc, k)?;
    let cap = desc.cone_dim();
    let mut defaulted = Vec::new();
    for d in 1..=cap {
        let outcome = depth_exceeds(desc, k, d)?;
        for b in &outcome.defaulted_blocks {
            if !defaulted.contains(b) {
                defaulted.push(*b);
            }
        }
        if !outcome.holds {
            return Ok(DepthResult {
                k,
                depth: DepthValue::Exact(d),
                witnesses: outcome.failures,
                defaulted_blocks: defaulted,
            });
        }
    }
    Ok(DepthResult {
        k,
        depth: DepthValue::AtLeast(cap + 1),
        witnesses: Vec::new(),
        defaulted_blocks: defaulted,
    })
}

/// Depths of `DB_Z^k` for `k = 0..=dim Z`.
pub fn depth_vector(desc: &ConeDescriptor) -> Result<Vec<DepthResult>> {
    (0..=desc.cone_dim()).map(|k| depth_at_vertex(desc, k)).collect()
}

/// `Z` is seminormal exactly when `X` is.
pub fn cone_seminormal(desc: &ConeDescriptor) -> bool {
    desc.base.seminormal
}
