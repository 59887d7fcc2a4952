//! Invariant suites run by `cone-hodge selftest`.

use serde::Serialize;

use crate::catalog::{bott_dimension, catalog_table, kunneth_betti, manifest, CatalogSpec};
use crate::cone::depth_exceeds;
use crate::error::Result;
use crate::json::{load_table, save_table};
use crate::ktheory::{k_negative, k_zero, k_zero_classical};
use crate::lcdef::{lcdef_cone_depth, lcdef_cone_lefschetz, Evidence};
use crate::oracle::{
    euler_characteristic_from_resolution, oracle_hodge_dimension, relevant_multidegrees, OracleBudget, OracleComplex,
};
use crate::table::{validate_operator, validate_table, ConeDescriptor, HodgeDuBoisTable, LefschetzOperator};
use crate::vanishing::{dual_nakano_audit, kan_audit};

const MAX_REPORTED: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub checked: usize,
    pub passed: bool,
    pub failures: Vec<String>,
}

#[derive(Default)]
struct Suite {
    checked: usize,
    failures: Vec<String>,
}

impl Suite {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failures.len() < MAX_REPORTED {
            self.failures.push(what());
        }
    }

    fn record<T>(&mut self, r: Result<T>, at: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.check(false, || format!("{}: {e}", at()));
                None
            }
        }
    }

    fn finish(self, name: &'static str) -> SuiteResult {
        SuiteResult {
            name,
            checked: self.checked,
            passed: self.failures.is_empty() && self.checked > 0,
            failures: self.failures,
        }
    }
}

fn catalog() -> Vec<(String, CatalogSpec, HodgeDuBoisTable, LefschetzOperator)> {
    manifest()
        .into_iter()
        .map(|(name, spec)| {
            let (t, op) = catalog_table(&spec).expect("manifest entries build");
            (name, spec, t, op)
        })
        .collect()
}

fn bott_identities() -> SuiteResult {
    let mut s = Suite::default();
    for n in 0..=4 {
        for p in 0..=n {
            for q in 0..=n {
                for k in -12..=12 {
                    let a = bott_dimension(n, p, q, k);
                    let b = bott_dimension(n, n - p, n - q, -k);
                    s.check(a.is_ok() && a == b, || format!("Serre duality at n={n} ({p},{q},{k})"));
                }
            }
        }
        for j in 0..=2 * n {
            let total: u64 = (0..=j.min(n))
                .filter(|&p| j - p <= n)
                .map(|p| bott_dimension(n, p, j - p, 0).unwrap_or(u64::MAX / 8))
                .sum();
            s.check(total == u64::from(j % 2 == 0), || format!("Betti sum n={n} j={j} is {total}"));
        }
    }
    s.finish("bott-identities")
}

fn bott_vs_oracle() -> SuiteResult {
    let mut s = Suite::default();
    for n in 1..=2 {
        for p in 0..=n {
            for m in -8..=8 {
                let Some(oracle) = s.record(oracle_hodge_dimension(n, p, m, OracleBudget::default()), || {
                    format!("oracle n={n} p={p} m={m}")
                }) else {
                    continue;
                };
                for (q, &h) in oracle.iter().enumerate() {
                    let b = bott_dimension(n, p, q, m);
                    s.check(b == Ok(h), || format!("n={n} ({p},{q},{m}): oracle {h}, closed form {b:?}"));
                }
            }
        }
    }
    s.finish("bott-vs-oracle")
}

fn oracle_complexes() -> SuiteResult {
    let mut s = Suite::default();
    for n in 1..=2 {
        for p in 0..=n {
            for m in -4..=4 {
                // the box [-2, 2] also covers multidegrees with no cohomology
                for v in relevant_multidegrees(n, p, m, -2, 2) {
                    let cx = OracleComplex::assemble(n, p, m, v.clone());
                    s.check(cx.check_square_zero().is_ok(), || format!("d^2 != 0 at n={n} p={p} m={m} {v:?}"));
                }
                if let Ok(h) = oracle_hodge_dimension(n, p, m, OracleBudget::default()) {
                    let chi: i64 = h
                        .iter()
                        .enumerate()
                        .map(|(q, &x)| if q % 2 == 0 { x as i64 } else { -(x as i64) })
                        .sum();
                    let expected = euler_characteristic_from_resolution(n, p, m);
                    s.check(chi == expected, || format!("Euler characteristic n={n} p={p} m={m}: {chi} vs {expected}"));
                    let dual = oracle_hodge_dimension(n, n - p, -m, OracleBudget::default());
                    let serre = dual.map(|d| (0..=n).all(|q| d[n - q] == h[q])).unwrap_or(false);
                    s.check(serre, || format!("oracle Serre duality n={n} p={p} m={m}"));
                }
            }
        }
    }
    s.finish("oracle-complexes")
}

fn catalog_validation(cat: &[(String, CatalogSpec, HodgeDuBoisTable, LefschetzOperator)]) -> SuiteResult {
    let mut s = Suite::default();
    for (name, spec, t, op) in cat {
        let report = validate_table(t);
        s.check(report.is_valid(), || format!("{name}: {:?}", report.violations));
        let report = validate_operator(t, op, true);
        s.check(report.is_valid(), || format!("{name}: {:?}", report.violations));
        let betti = kunneth_betti(&spec.factors);
        s.check(t.betti.as_ref() == Some(&betti), || format!("{name}: Betti numbers differ from Künneth"));
    }
    s.finish("catalog-validation")
}

fn depth_nestedness(cat: &[(String, CatalogSpec, HodgeDuBoisTable, LefschetzOperator)]) -> SuiteResult {
    let mut s = Suite::default();
    for (name, _, t, op) in cat {
        let desc = ConeDescriptor::abstract_cone(t.clone(), op.clone());
        for k in 0..=desc.cone_dim() {
            let mut previous = true;
            for d in 1..=desc.cone_dim() + 1 {
                let Some(outcome) = s.record(depth_exceeds(&desc, k, d), || format!("{name} k={k} d={d}")) else {
                    break;
                };
                s.check(previous || !outcome.holds, || format!("{name}: depth > {d} holds but not depth > {}", d - 1));
                previous = outcome.holds;
            }
        }
    }
    s.finish("depth-nestedness")
}

fn lcdef_agreement(cat: &[(String, CatalogSpec, HodgeDuBoisTable, LefschetzOperator)]) -> SuiteResult {
    let mut s = Suite::default();
    for (name, _, t, op) in cat {
        let desc = ConeDescriptor::abstract_cone(t.clone(), op.clone());
        let depth = s.record(lcdef_cone_depth(&desc), || format!("{name} depth path"));
        let lef = s.record(lcdef_cone_lefschetz(&desc), || format!("{name} Lefschetz path"));
        let (Some(depth), Some(lef)) = (depth, lef) else { continue };
        s.check(depth.c == lef.c, || format!("{name}: depth path {} vs Lefschetz path {}", depth.c, lef.c));
        s.check(lef.c >= t.lcdef_x && lef.c <= desc.cone_dim(), || format!("{name}: c = {} out of range", lef.c));
        if let Evidence::Lefschetz { candidates, footnote, .. } = &lef.evidence {
            let earlier_fail = candidates[..candidates.len() - 1].iter().all(|v| !v.holds);
            s.check(earlier_fail, || format!("{name}: a smaller c also satisfies the conditions"));
            s.check(footnote.iter().all(|f| f.holds), || format!("{name}: Betti corroboration fails"));
        }
    }
    s.finish("lcdef-agreement")
}

fn audits(cat: &[(String, CatalogSpec, HodgeDuBoisTable, LefschetzOperator)]) -> SuiteResult {
    let mut s = Suite::default();
    for (name, _, t, _) in cat {
        if let Some(a) = s.record(dual_nakano_audit(t), || format!("{name} dual Nakano")) {
            s.check(a.is_clean(), || format!("{name}: dual Nakano violations {:?}", a.violations));
        }
        if let Some(a) = s.record(kan_audit(t), || format!("{name} KAN")) {
            s.check(a.is_clean(), || format!("{name}: KAN violations {:?}", a.violations));
        }
    }
    s.finish("vanishing-audits")
}

fn k_theory(cat: &[(String, CatalogSpec, HodgeDuBoisTable, LefschetzOperator)]) -> SuiteResult {
    let mut s = Suite::default();
    for (name, _, t, op) in cat {
        let n = t.n;
        let mut desc = ConeDescriptor::abstract_cone(t.clone(), op.clone());
        for l in n + 1..=n + 3 {
            if let Some(k) = s.record(k_negative(&desc, l), || format!("{name} K_-{l}")) {
                s.check(k.contributions.is_empty() && k.tails.is_empty(), || format!("{name}: K_-{l} not empty"));
            }
        }
        let plain = s.record(k_zero(&desc), || format!("{name} K_0"));
        desc.classical = true;
        desc.projectively_normal = true;
        let classical = s.record(k_zero_classical(&desc), || format!("{name} classical K_0"));
        if let (Some(plain), Some(mut classical)) = (plain, classical) {
            classical.pic = None;
            s.check(plain == classical, || format!("{name}: classical K_0 minus Pic differs"));
        }
    }
    s.finish("k-theory")
}

fn json_round_trip(cat: &[(String, CatalogSpec, HodgeDuBoisTable, LefschetzOperator)]) -> SuiteResult {
    let mut s = Suite::default();
    for (name, _, t, op) in cat {
        let bytes = save_table(t, op);
        if let Some((t2, op2, report)) = s.record(load_table(&bytes), || format!("{name} reload")) {
            s.check(&t2 == t && &op2 == op, || format!("{name}: round trip changed the table"));
            s.check(report.is_valid(), || format!("{name}: reloaded table invalid"));
            s.check(save_table(&t2, &op2) == bytes, || format!("{name}: re-save not byte-identical"));
        }
    }
    s.finish("json-round-trip")
}

/// Runs every suite; the run passes when each result passes.
pub fn run_selftest() -> Vec<SuiteResult> {
    let cat = catalog();
    vec![
        bott_identities(),
        bott_vs_oracle(),
        oracle_complexes(),
        catalog_validation(&cat),
        depth_nestedness(&cat),
        lcdef_agreement(&cat),
        audits(&cat),
        k_theory(&cat),
        json_round_trip(&cat),
    ]
}
