//! Local cohomological defect of the cone, by two independent routes.
//!
//! The depth route reads `lcdef(Z) = dim Z - min_k (depth_x DB_Z^k + k)`
//! off the depth vector. The Lefschetz route searches for the least `c`
//! satisfying the graded conditions on `X` directly:
//!
//! - (a) `H^i(X, DB^0) = 0` for `1 <= i <= n-c-1`,
//! - (b) `H^0(X, DB^k) = 0` for `1 <= k <= n-c-1`,
//! - (c) `H^i(X, DB^k ⊗ L^m) = 0` for `m <= -1`, `i + k <= n-c-1` (strict mode only;
//!   otherwise taken from `lcdef(X) <= c`),
//! - (d) for `1 <= k <= n-c-2`, the block `(k-1, i)` is an isomorphism for
//!   `0 <= i <= n-c-k-2` and injective at `i = n-c-k-1`.

use serde::Serialize;

use crate::cone::{depth_vector, DepthResult, Witness};
use crate::error::{Error, Result};
use crate::graded::TwistRange;
use crate::table::{block_rank, ConeDescriptor, HodgeDuBoisTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LcdefPath {
    Depth,
    Lefschetz,
    Classical,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedCondition {
    pub name: &'static str,
    pub holds: bool,
    pub failures: Vec<Witness>,
}

/// Verdicts for one candidate value of `c`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidateVerdict {
    pub c: usize,
    pub holds: bool,
    pub conditions: Vec<NamedCondition>,
}

/// Total Betti number check in the isomorphism range: 1 for even `j`, 0 for odd.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiCheck {
    pub j: usize,
    pub total: u64,
    pub expected: u64,
    pub holds: bool,
}

/// Restriction `H^i(P^N) -> H^i(X)` verdict, evaluated on dimensions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RestrictionVerdict {
    pub i: usize,
    pub betti_x: u64,
    pub betti_ambient: u64,
    /// For even `i`: `c1(L)^{i/2}` restricted to `H^{i/2, i/2}` is nonzero.
    pub lefschetz_chain_nonzero: bool,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    Depth {
        depths: Vec<DepthResult>,
        /// The `k` attaining the maximum of `n + 1 - k - depth_k`; `None`
        /// when `lcdef(X)` is the binding term.
        binding_k: Option<usize>,
    },
    Lefschetz {
        strict: bool,
        candidates: Vec<CandidateVerdict>,
        footnote: Vec<BettiCheck>,
    },
    Classical {
        lefschetz_c: usize,
        restriction_c: usize,
        agrees: bool,
        restrictions: Vec<RestrictionVerdict>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LcdefCertificate {
    pub c: usize,
    pub path: LcdefPath,
    pub lcdef_x: usize,
    pub evidence: Evidence,
    /// `lcd(Z, A^{N+1}) = c + (N - n)` when the ambient dimension is known.
    pub embedded_lcd: Option<usize>,
    pub defaulted_blocks: Vec<(i64, i64)>,
}

fn embedded_lcd(desc: &ConeDescriptor, c: usize) -> Result<Option<usize>> {
    match desc.ambient_dim {
        None => Ok(None),
        Some(big_n) if big_n < desc.base.n => Err(Error::OutOfRange {
            what: "ambient dimension",
            detail: format!("N = {big_n} is below dim X = {}", desc.base.n),
        }),
        Some(big_n) => Ok(Some(c + big_n - desc.base.n)),
    }
}

/// `lcdef(Z)` from the depths of the Du Bois complexes at the vertex.
pub fn lcdef_cone_depth(desc: &ConeDescriptor) -> Result<LcdefCertificate> {
    let depths = depth_vector(desc)?;
    let n1 = desc.cone_dim() as i64;
    let mut c = desc.base.lcdef_x as i64;
    let mut binding_k = None;
    for d in &depths {
        let candidate = n1 - d.k as i64 - d.depth.as_number() as i64;
        if candidate > c {
            c = candidate;
            binding_k = Some(d.k);
        }
    }
    let c = c.max(0) as usize;
    let mut defaulted = Vec::new();
    for d in &depths {
        for b in &d.defaulted_blocks {
            if !defaulted.contains(b) {
                defaulted.push(*b);
            }
        }
    }
    Ok(LcdefCertificate {
        c,
        path: LcdefPath::Depth,
        lcdef_x: desc.base.lcdef_x,
        evidence: Evidence::Depth { depths, binding_k },
        embedded_lcd: embedded_lcd(desc, c)?,
        defaulted_blocks: defaulted,
    })
}

fn named(name: &'static str, failures: Vec<Witness>) -> NamedCondition {
    NamedCondition {
        name,
        holds: failures.is_empty(),
        failures,
    }
}

/// Evaluates (a), (b), (d), and (c) when `strict`, for one candidate `c`.
pub fn lefschetz_conditions(desc: &ConeDescriptor, c: usize, strict: bool) -> Result<CandidateVerdict> {
    let table = &desc.base;
    let r = table.n as i64 - c as i64;
    let mut conditions = Vec::new();

    let mut a = Vec::new();
    for i in 1..r {
        let dim = table.dim_or_zero(0, i, 0)?;
        if dim != 0 {
            a.push(Witness::NonzeroUntwisted { p: 0, q: i, dim });
        }
    }
    conditions.push(named("(a)", a));

    let mut b = Vec::new();
    for k in 1..r {
        let dim = table.dim_or_zero(k, 0, 0)?;
        if dim != 0 {
            b.push(Witness::NonzeroUntwisted { p: k, q: 0, dim });
        }
    }
    conditions.push(named("(b)", b));

    if strict {
        let mut cc = Vec::new();
        for k in 0..r {
            for i in 0..r - k {
                if let Some((m, dim)) = table.first_nonzero(k, i, TwistRange::AtMost(-1))? {
                    cc.push(Witness::NonzeroTwist { p: k, q: i, m, dim });
                }
            }
        }
        conditions.push(named("(c)", cc));
    }

    let mut iso = Vec::new();
    let mut inj = Vec::new();
    for k in 1..=r - 2 {
        for i in 0..=r - k - 1 {
            let block = block_rank(table, &desc.lefschetz, k - 1, i)?;
            if block.defaulted {
                return Err(Error::IndeterminateLefschetz {
                    p: (k - 1) as usize,
                    q: i as usize,
                });
            }
            if i <= r - k - 2 {
                if !block.iso() {
                    iso.push(Witness::NotIso { block });
                }
            } else if !block.injective {
                inj.push(Witness::NotInjective { block });
            }
        }
    }
    conditions.push(named("(d)-iso", iso));
    conditions.push(named("(d)-injective", inj));

    Ok(CandidateVerdict {
        c,
        holds: conditions.iter().all(|x| x.holds),
        conditions,
    })
}

fn total_betti(table: &HodgeDuBoisTable, j: usize) -> Result<u64> {
    (0..=j.min(table.n))
        .filter(|&p| j - p <= table.n)
        .map(|p| table.dim_or_zero(p as i64, (j - p) as i64, 0))
        .sum()
}

/// `lcdef(Z)` as the least `c >= lcdef(X)` meeting the graded Lefschetz conditions.
pub fn lcdef_cone_lefschetz(desc: &ConeDescriptor) -> Result<LcdefCertificate> {
    lcdef_cone_lefschetz_with(desc, false)
}

/// As [`lcdef_cone_lefschetz`]; `strict` re-checks the negative-twist
/// vanishing (c) from the table instead of trusting `lcdef(X)`.
pub fn lcdef_cone_lefschetz_with(desc: &ConeDescriptor, strict: bool) -> Result<LcdefCertificate> {
    let table = &desc.base;
    let mut candidates = Vec::new();
    let mut found = None;
    for c in table.lcdef_x..=desc.cone_dim() {
        let verdict = lefschetz_conditions(desc, c, strict)?;
        let holds = verdict.holds;
        candidates.push(verdict);
        if holds {
            found = Some(c);
            break;
        }
    }
    // c = n - 1 makes every range empty, so the search always ends
    let c = found.ok_or_else(|| Error::Inconsistent("no feasible c up to dim Z".into()))?;
    let mut footnote = Vec::new();
    if c < table.n {
        for j in 0..table.n - c {
            let total = total_betti(table, j)?;
            let expected = u64::from(j % 2 == 0);
            footnote.push(BettiCheck {
                j,
                total,
                expected,
                holds: total == expected,
            });
        }
    }
    Ok(LcdefCertificate {
        c,
        path: LcdefPath::Lefschetz,
        lcdef_x: table.lcdef_x,
        evidence: Evidence::Lefschetz {
            strict,
            candidates,
            footnote,
        },
        embedded_lcd: embedded_lcd(desc, c)?,
        defaulted_blocks: Vec::new(),
    })
}

/// Whether `c1(L)^e` is nonzero on `H^{0,0}`, i.e. the composite of blocks
/// `(0,0), ..., (e-1, e-1)` applied to `H^{0,0}` is nonzero.
fn lefschetz_power_nonzero(desc: &ConeDescriptor, e: usize) -> Result<bool> {
    use crate::matrix::QMatrix;
    let table = &desc.base;
    let mut acc = QMatrix::identity(table.dim_or_zero(0, 0, 0)? as usize);
    for t in 0..e {
        let (p, q) = (t as i64, t as i64);
        let src = table.dim_or_zero(p, q, 0)? as usize;
        let tgt = table.dim_or_zero(p + 1, q + 1, 0)? as usize;
        let block = match desc.lefschetz.blocks.get(&(t, t)) {
            Some(b) => b.clone(),
            None if src > 0 && tgt > 0 => {
                return Err(Error::IndeterminateLefschetz { p: t, q: t });
            }
            None => QMatrix::zeros(tgt, src),
        };
        acc = block.mul(&acc).ok_or_else(|| Error::ShapeMismatch {
            p: t,
            q: t,
            rows: block.rows(),
            cols: block.cols(),
            exp_rows: tgt,
            exp_cols: src,
        })?;
    }
    Ok(!acc.is_zero())
}

/// Classical cone over `X ⊂ P^N`: the Lefschetz-route `c`, restated as the
/// restriction criterion `H^i(P^N) ≅ H^i(X)` for `i <= n - 1 - c`.
pub fn lcdef_classical(desc: &ConeDescriptor) -> Result<LcdefCertificate> {
    if !desc.classical {
        return Err(Error::Classical("descriptor is not a classical cone".into()));
    }
    let big_n = desc
        .ambient_dim
        .ok_or_else(|| Error::Classical("ambient dimension N is missing".into()))?;
    let table = &desc.base;
    let lefschetz = lcdef_cone_lefschetz(desc)?;

    let verdict = |i: usize| -> Result<RestrictionVerdict> {
        let betti_x = total_betti(table, i)?;
        let betti_ambient = u64::from(i % 2 == 0 && i <= 2 * big_n);
        let chain = if i % 2 == 0 {
            lefschetz_power_nonzero(desc, i / 2)?
        } else {
            true
        };
        Ok(RestrictionVerdict {
            i,
            betti_x,
            betti_ambient,
            lefschetz_chain_nonzero: chain,
            holds: betti_x == betti_ambient && chain,
        })
    };

    // least c >= lcdef(X) with the restriction criterion in degrees i <= n - 1 - c
    let mut restriction_c = table.n.max(table.lcdef_x);
    for c in table.lcdef_x..table.n {
        let mut ok = true;
        for i in 0..table.n - c {
            if !verdict(i)?.holds {
                ok = false;
                break;
            }
        }
        if ok {
            restriction_c = c;
            break;
        }
    }
    let c = lefschetz.c;
    let restrictions = (0..table.n.saturating_sub(c))
        .map(verdict)
        .collect::<Result<Vec<_>>>()?;
    Ok(LcdefCertificate {
        c,
        path: LcdefPath::Classical,
        lcdef_x: table.lcdef_x,
        evidence: Evidence::Classical {
            lefschetz_c: c,
            restriction_c,
            agrees: restriction_c == c,
            restrictions,
        },
        embedded_lcd: Some(c + big_n - table.n.min(big_n)),
        defaulted_blocks: Vec::new(),
    })
}

/// Verdicts of both routes, for reporting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualPath {
    pub depth: LcdefCertificate,
    pub lefschetz: LcdefCertificate,
    pub agree: bool,
}

pub fn lcdef_both(desc: &ConeDescriptor, strict: bool) -> Result<DualPath> {
    let depth = lcdef_cone_depth(desc)?;
    let lefschetz = lcdef_cone_lefschetz_with(desc, strict)?;
    Ok(DualPath {
        agree: depth.c == lefschetz.c,
        depth,
        lefschetz,
    })
}
