//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.
//!
//! Every check is an exact integer comparison; the tolerance is pinned at 0.

use std::process::Command;
use std::time::Instant;

use cone_hodge::catalog::{bott_dimension, catalog_table, manifest, product_table, projective_space_table, CatalogSpec};
use cone_hodge::cone::{depth_at_vertex, depth_exceeds, DepthValue, Witness};
use cone_hodge::ktheory::{k_negative, k_zero};
use cone_hodge::lcdef::{lcdef_classical, lcdef_cone_depth, lcdef_cone_lefschetz};
use cone_hodge::oracle::{oracle_hodge_dimension, relevant_multidegrees, OracleBudget, OracleComplex};
use cone_hodge::table::{resolve_dim, ConeDescriptor, HodgeDuBoisTable, LefschetzOperator};
use cone_hodge::vanishing::{dual_nakano_audit, kan_audit};

/// Integer equality throughout.
const TOLERANCE: u64 = 0;
const ORACLE_MAX_ABS_M: i64 = 8;
const MAX_CATALOG_DIM: usize = 4;
const MAX_POLARIZATION: u64 = 3;
const MIN_DUAL_PATH_CASES: usize = 30;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

#[allow(clippy::absurd_extreme_comparisons)]
fn exact(a: u64, b: u64) -> bool {
    a.abs_diff(b) <= TOLERANCE
}

fn catalog_sweep() -> Vec<(String, HodgeDuBoisTable, LefschetzOperator)> {
    manifest()
        .into_iter()
        .filter(|(_, s)| s.dim() <= MAX_CATALOG_DIM && s.polarization.iter().all(|&a| a <= MAX_POLARIZATION))
        .map(|(name, spec)| {
            let (t, op) = catalog_table(&spec).expect("catalog table");
            (name, t, op)
        })
        .collect()
}

fn oracle(n: usize, p: usize, m: i64) -> Result<Vec<u64>, String> {
    oracle_hodge_dimension(n, p, m, OracleBudget::default()).map_err(|e| format!("oracle n={n} p={p} m={m}: {e}"))
}

fn c1_oracle_equivalence() -> Outcome {
    let mut cells = 0;
    for n in 1..=2 {
        for p in 0..=n {
            for m in -ORACLE_MAX_ABS_M..=ORACLE_MAX_ABS_M {
                let h = oracle(n, p, m)?;
                for (q, &dim) in h.iter().enumerate() {
                    let closed = bott_dimension(n, p, q, m).map_err(|e| e.to_string())?;
                    ensure(exact(closed, dim), || format!("n={n} ({p},{q},{m}): closed form {closed}, oracle {dim}"))?;
                    cells += 1;
                }
            }
        }
    }
    Ok(format!("{cells} cells agree"))
}

fn c2_oracle_structure() -> Outcome {
    let mut complexes = 0;
    for n in 1..=2 {
        for p in 0..=n {
            for m in -ORACLE_MAX_ABS_M..=ORACLE_MAX_ABS_M {
                for v in relevant_multidegrees(n, p, m, m.min(0), m.max(0)) {
                    let cx = OracleComplex::assemble(n, p, m, v.clone());
                    cx.check_square_zero().map_err(|e| format!("n={n} p={p} m={m} {v:?}: {e}"))?;
                    complexes += 1;
                }
                let h = oracle(n, p, m)?;
                let dual = oracle(n, n - p, -m)?;
                for q in 0..=n {
                    ensure(exact(h[q], dual[n - q]), || format!("Serre duality fails at n={n} ({p},{q},{m})"))?;
                }
            }
        }
        for j in 0..=2 * n {
            let mut total = 0;
            for p in 0..=j.min(n) {
                if j - p <= n {
                    total += oracle(n, p, 0)?[j - p];
                }
            }
            ensure(exact(total, u64::from(j % 2 == 0)), || format!("b_{j}(P^{n}) = {total}"))?;
        }
    }
    Ok(format!("d^2 = 0 on {complexes} complexes; Serre and Betti identities exact"))
}

fn c3_quadric_cone() -> Outcome {
    let (t, op) = projective_space_table(1, 2, 8).map_err(|e| e.to_string())?;
    let desc = ConeDescriptor::abstract_cone(t, op);
    let first_witness = [
        Witness::NonzeroTwist { p: 0, q: 1, m: -1, dim: 1 },
        Witness::NonzeroTwist { p: 0, q: 1, m: -1, dim: 1 },
        Witness::NonzeroTwist { p: 1, q: 1, m: -1, dim: 3 },
    ];
    for (k, expected) in first_witness.iter().enumerate() {
        let d = depth_at_vertex(&desc, k).map_err(|e| e.to_string())?;
        ensure(d.depth == DepthValue::Exact(2), || format!("depth of DB^{k} is {}", d.depth))?;
        ensure(d.witnesses.first() == Some(expected), || format!("k={k} witnesses {:?}", d.witnesses))?;
    }
    let c = lcdef_cone_depth(&desc).map_err(|e| e.to_string())?.c;
    ensure(c == 0, || format!("lcdef = {c}"))?;
    Ok("depths (2, 2, 2), lcdef 0".into())
}

fn c4_segre() -> Outcome {
    let spec = CatalogSpec::new(vec![1, 2], vec![1, 1], None).map_err(|e| e.to_string())?;
    let (t, op) = product_table(&spec).map_err(|e| e.to_string())?;
    let desc = ConeDescriptor::abstract_cone(t.clone(), op.clone());
    let depth = lcdef_cone_depth(&desc).map_err(|e| e.to_string())?.c;
    let lef = lcdef_cone_lefschetz(&desc).map_err(|e| e.to_string())?.c;
    ensure(depth == 1 && lef == 1, || format!("depth path {depth}, Lefschetz path {lef}"))?;
    let classical = ConeDescriptor::classical_cone(t, op, true, Some(5)).map_err(|e| e.to_string())?;
    let cert = lcdef_classical(&classical).map_err(|e| e.to_string())?;
    ensure(cert.c == 1 && cert.embedded_lcd == Some(3), || {
        format!("classical c = {}, embedded lcd {:?}", cert.c, cert.embedded_lcd)
    })?;
    Ok("c = 1 on both paths; embedded lcd in A^6 is 3".into())
}

fn c5_dual_path() -> Outcome {
    let sweep = catalog_sweep();
    ensure(sweep.len() >= MIN_DUAL_PATH_CASES, || format!("only {} catalog cases", sweep.len()))?;
    let mut positive = 0;
    for (name, t, op) in &sweep {
        let desc = ConeDescriptor::abstract_cone(t.clone(), op.clone());
        let a = lcdef_cone_depth(&desc).map_err(|e| format!("{name}: {e}"))?.c;
        let b = lcdef_cone_lefschetz(&desc).map_err(|e| format!("{name}: {e}"))?.c;
        ensure(a == b, || format!("{name}: depth path {a}, Lefschetz path {b}"))?;
        positive += usize::from(a > 0);
    }
    Ok(format!("{} cases agree ({positive} with lcdef > 0)", sweep.len()))
}

fn c6_audits() -> Outcome {
    let sweep = catalog_sweep();
    for (name, t, _) in &sweep {
        let dual = dual_nakano_audit(t).map_err(|e| format!("{name}: {e}"))?;
        let kan = kan_audit(t).map_err(|e| format!("{name}: {e}"))?;
        ensure(dual.violations.is_empty(), || format!("{name}: dual Nakano {:?}", dual.violations))?;
        ensure(kan.violations.is_empty(), || format!("{name}: KAN {:?}", kan.violations))?;
    }
    Ok(format!("{} tables, no violations", sweep.len()))
}

/// `Σ_{m>=1} h^n(X, L^m)` straight from the table; `None` if a tail is nonzero.
fn top_cohomology_of_powers(t: &HodgeDuBoisTable) -> Result<Option<u64>, String> {
    let g = t.entry(0, t.n).ok_or("missing (0, n) entry")?;
    if !g.pos_tail().is_zero() {
        return Ok(None);
    }
    let mut total = 0;
    for m in 1..=g.window_hi() {
        total += resolve_dim(t, 0, t.n as i64, m).map_err(|e| e.to_string())?;
    }
    Ok(Some(total))
}

fn c7_k_theory() -> Outcome {
    let sweep = catalog_sweep();
    for (name, t, op) in &sweep {
        let n = t.n;
        let desc = ConeDescriptor::abstract_cone(t.clone(), op.clone());
        for l in n + 2..=n + 4 {
            let k = k_negative(&desc, l).map_err(|e| format!("{name}: {e}"))?;
            ensure(k.contributions.is_empty() && k.tails.is_empty(), || format!("{name}: K_-{l} nonempty"))?;
        }
        // for n = 0 the sum over m >= 1 of h^0(L^m) is infinite; the comparison needs n >= 1
        if n == 0 {
            continue;
        }
        let k = k_negative(&desc, n + 1).map_err(|e| format!("{name}: {e}"))?;
        let from_k: u64 = k.contributions.iter().map(|c| c.dim).sum();
        let direct = top_cohomology_of_powers(t)?;
        ensure(k.tails.is_empty() && direct == Some(from_k), || {
            format!("{name}: K_-(n+1) total {from_k}, direct sum {direct:?}")
        })?;
    }
    for d in 1..=5 {
        let (t, op) = projective_space_table(1, d, 8).map_err(|e| e.to_string())?;
        let k = k_zero(&ConeDescriptor::abstract_cone(t, op)).map_err(|e| e.to_string())?;
        ensure(k.free_rank == 1 && k.non_free_is_zero(), || format!("K_0 of C(P^1, O({d})): {k:?}"))?;
    }
    Ok(format!("{} tables structurally checked; K_0(C(P^1, O(d))) = Z for d <= 5", sweep.len()))
}

fn cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_cone-hodge"))
        .arg("--no-header")
        .args(args)
        .env_remove("CONE_HODGE_WINDOW")
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(0), || format!("{args:?} exited with {:?}", out.status.code()))?;
    ensure(out.stderr.is_empty(), || format!("{args:?} wrote to stderr"))?;
    Ok(out.stdout)
}

fn c8_nestedness_and_determinism() -> Outcome {
    let sweep = catalog_sweep();
    let mut evaluations = 0;
    for (name, t, op) in &sweep {
        let desc = ConeDescriptor::abstract_cone(t.clone(), op.clone());
        for k in 0..=desc.cone_dim() {
            let mut previous = true;
            for d in 1..=desc.cone_dim() + 1 {
                let holds = depth_exceeds(&desc, k, d).map_err(|e| format!("{name}: {e}"))?.holds;
                ensure(previous || !holds, || format!("{name}: k={k} depth > {d} holds but depth > {} fails", d - 1))?;
                previous = holds;
                evaluations += 1;
            }
        }
    }
    let runs: [&[&str]; 4] = [
        &["cone", "lcdef", "--variety", "P1xP2@1,1", "--method", "both"],
        &["cone", "depth", "--variety", "P2@2", "--k", "1"],
        &["cone", "kgroups", "--variety", "P1xP1@1,2"],
        &["--format", "markdown", "catalog", "table", "--variety", "P1@3"],
    ];
    for args in runs {
        let first = cli(args)?;
        let second = cli(args)?;
        ensure(first == second, || format!("{args:?} output differs between runs"))?;
    }
    Ok(format!("{evaluations} nested evaluations; {} CLI invocations byte-identical", runs.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("oracle equivalence", c1_oracle_equivalence),
        ("oracle structural identities", c2_oracle_structure),
        ("quadric cone depths", c3_quadric_cone),
        ("Segre threefold", c4_segre),
        ("dual-path equivalence", c5_dual_path),
        ("vanishing audits", c6_audits),
        ("K-theory", c7_k_theory),
        ("nestedness and determinism", c8_nestedness_and_determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {}. {name}: {detail} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {}. {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed (tolerance {TOLERANCE})", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
