//! Vanishing audits on a Hodge-Du Bois table: the dual Nakano range, the
//! Kodaira-Akizuki-Nakano range, and pre-p-Du Bois levels of the cone.

use serde::Serialize;

use crate::error::Result;
use crate::graded::TwistRange;
use crate::table::{ConeDescriptor, HodgeDuBoisTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub p: usize,
    pub q: usize,
    pub m: i64,
    pub dim: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Audit {
    /// Cells contradicting the expected vanishing.
    pub violations: Vec<Cell>,
    /// Nonzero cells outside the guaranteed range, reported for context.
    pub informational: Vec<Cell>,
}

impl Audit {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `H^q(X, DB^p ⊗ L^m) = 0` for `p + q < n - lcdef(X)` and `m <= -1`.
///
/// Only `m = -1` is guaranteed; nonzero cells further down are informational.
pub fn dual_nakano_audit(table: &HodgeDuBoisTable) -> Result<Audit> {
    let mut audit = Audit::default();
    let bound = table.n as i64 - table.lcdef_x as i64;
    for p in 0..=table.n {
        for q in 0..=table.n {
            if (p + q) as i64 >= bound {
                continue;
            }
            let dim = table.dim_or_zero(p as i64, q as i64, -1)?;
            if dim != 0 {
                audit.violations.push(Cell { p, q, m: -1, dim });
            }
            if let Some((m, dim)) = table.first_nonzero(p as i64, q as i64, TwistRange::AtMost(-2))? {
                audit.informational.push(Cell { p, q, m, dim });
            }
        }
    }
    Ok(audit)
}

/// `H^q(X, DB^p ⊗ L^m) = 0` for `p + q > n` and `m >= 1`.
pub fn kan_audit(table: &HodgeDuBoisTable) -> Result<Audit> {
    let mut audit = Audit::default();
    for p in 0..=table.n {
        for q in 0..=table.n {
            if p + q <= table.n {
                continue;
            }
            if let Some((m, dim)) = table.first_nonzero(p as i64, q as i64, TwistRange::AtLeast(1))? {
                audit.violations.push(Cell { p, q, m, dim });
            }
        }
    }
    Ok(audit)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PreDuBoisLevel {
    /// Fails already for `p = 0`.
    None { witness: Cell },
    /// Pre-p-Du Bois for this `p`, failing at `p + 1`.
    Level { p: usize, witness: Cell },
    /// Pre-p-Du Bois for every `p`.
    All,
}

/// Largest `p` with `H^i(X, DB^j ⊗ L^m) = 0` for all `i, m >= 1` and `j <= p`.
pub fn pre_p_dubois_level(desc: &ConeDescriptor) -> Result<PreDuBoisLevel> {
    let table = &desc.base;
    for j in 0..=table.n {
        for i in 1..=table.n {
            if let Some((m, dim)) = table.first_nonzero(j as i64, i as i64, TwistRange::AtLeast(1))? {
                let witness = Cell { p: j, q: i, m, dim };
                return Ok(match j {
                    0 => PreDuBoisLevel::None { witness },
                    _ => PreDuBoisLevel::Level { p: j - 1, witness },
                });
            }
        }
    }
    Ok(PreDuBoisLevel::All)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{catalog_table, manifest, product_table, projective_space_table, CatalogSpec};

    #[test]
    fn manifest_audits_are_clean() {
        for (name, spec) in manifest() {
            let (t, _) = catalog_table(&spec).unwrap();
            assert!(dual_nakano_audit(&t).unwrap().is_clean(), "{name}");
            assert!(kan_audit(&t).unwrap().is_clean(), "{name}");
        }
    }

    #[test]
    fn nakano_informational_below_minus_one() {
        // P^1: only (0,0) is in range and h^0(O(m)) = 0 for m < 0
        let (t, _) = projective_space_table(1, 1, 8).unwrap();
        let audit = dual_nakano_audit(&t).unwrap();
        assert!(audit.violations.is_empty() && audit.informational.is_empty());
        let (t, _) = projective_space_table(2, 1, 8).unwrap();
        let audit = dual_nakano_audit(&t).unwrap();
        // p + q < 2: cells (0,0), (0,1), (1,0); all vanish for every m < 0
        assert!(audit.informational.is_empty());
    }

    #[test]
    fn planted_violation_is_reported() {
        let (mut t, _) = projective_space_table(2, 1, 8).unwrap();
        t.entry_mut(0, 1).unwrap().set_value(-1, 2);
        t.entry_mut(0, 1).unwrap().set_value(-3, 5);
        t.entry_mut(2, 1).unwrap().set_value(3, 4);
        let nak = dual_nakano_audit(&t).unwrap();
        assert_eq!(nak.violations, vec![Cell { p: 0, q: 1, m: -1, dim: 2 }]);
        assert_eq!(nak.informational, vec![Cell { p: 0, q: 1, m: -3, dim: 5 }]);
        let kan = kan_audit(&t).unwrap();
        assert_eq!(kan.violations, vec![Cell { p: 2, q: 1, m: 3, dim: 4 }]);
    }

    #[test]
    fn pre_dubois_levels() {
        let (t, op) = projective_space_table(2, 1, 8).unwrap();
        let desc = ConeDescriptor::abstract_cone(t, op);
        assert_eq!(pre_p_dubois_level(&desc).unwrap(), PreDuBoisLevel::All);

        // toric bases satisfy Bott vanishing, so plant a class at (1,1,m=2)
        let (mut t, op) = product_table(&CatalogSpec::new(vec![1, 1], vec![1, 1], None).unwrap()).unwrap();
        assert_eq!(
            pre_p_dubois_level(&ConeDescriptor::abstract_cone(t.clone(), op.clone())).unwrap(),
            PreDuBoisLevel::All
        );
        t.entry_mut(1, 1).unwrap().set_value(2, 2);
        let desc = ConeDescriptor::abstract_cone(t, op);
        assert_eq!(
            pre_p_dubois_level(&desc).unwrap(),
            PreDuBoisLevel::Level {
                p: 0,
                witness: Cell { p: 1, q: 1, m: 2, dim: 2 }
            }
        );
    }
}
