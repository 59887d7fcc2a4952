//! Command-line front end. Every command builds one report object
//! `{tool_version, command, inputs, results, violations}`; the markdown and
//! CSV formats are renderings of it.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::catalog::{catalog_table, manifest, CatalogSpec};
use crate::cone::{cone_dubois, cone_seminormal, depth_vector, restriction_iso_test};
use crate::error::Error;
use crate::json::{load_table, save_table};
use crate::ktheory::{higher_k_piece, k_negative, k_zero, k_zero_classical};
use crate::lcdef::{lcdef_classical, lcdef_cone_depth, lcdef_cone_lefschetz_with, Evidence};
use crate::oracle::{oracle_hodge_dimension, oracle_hodge_dimension_in_box, OracleBudget};
use crate::render;
use crate::selftest::run_selftest;
use crate::table::{validate_operator, validate_table, ConeDescriptor, HodgeDuBoisTable, LefschetzOperator};
use crate::vanishing::{dual_nakano_audit, kan_audit, pre_p_dubois_level, Cell};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const WINDOW_ENV: &str = "CONE_HODGE_WINDOW";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Markdown,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Depth,
    Lefschetz,
    Both,
    Classical,
}

#[derive(Debug, Parser)]
#[command(name = "cone-hodge", version, about = "Hodge-Du Bois calculus for affine cones")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Suppress the header line on standard error.
    #[arg(long, global = true)]
    pub no_header: bool,
    /// Twist window for catalog tables (also read from CONE_HODGE_WINDOW).
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub window: Option<i64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Built-in tables of projective spaces and their products.
    Catalog {
        #[command(subcommand)]
        cmd: CatalogCmd,
    },
    /// Brute-force cohomology of twisted forms on projective space.
    Oracle {
        #[command(subcommand)]
        cmd: OracleCmd,
    },
    /// Du Bois data, depth, lcdef and K-groups of the cone.
    Cone {
        #[command(subcommand)]
        cmd: ConeCmd,
    },
    /// Vanishing audits and singularity checks.
    Check {
        #[command(subcommand)]
        cmd: CheckCmd,
    },
    /// Runs every invariant suite.
    Selftest,
}

#[derive(Debug, Subcommand)]
pub enum CatalogCmd {
    Table {
        #[command(flatten)]
        variety: VarietyArgs,
        /// Write the table JSON here instead of embedding it in the report.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    List,
}

#[derive(Debug, Subcommand)]
pub enum OracleCmd {
    Hodge {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        #[arg(long, allow_negative_numbers = true)]
        m: i64,
        /// Lower corner of the multidegree box (default: natural box).
        #[arg(long, allow_negative_numbers = true, requires = "hi")]
        lo: Option<i64>,
        #[arg(long, allow_negative_numbers = true, requires = "lo")]
        hi: Option<i64>,
    },
}

#[derive(Debug, Subcommand)]
pub enum ConeCmd {
    Dubois {
        #[command(flatten)]
        variety: VarietyArgs,
        #[arg(long, default_value_t = 0)]
        k: usize,
    },
    Depth {
        #[command(flatten)]
        variety: VarietyArgs,
        /// Also report the restriction maps for this k.
        #[arg(long)]
        k: Option<usize>,
    },
    Lcdef {
        #[command(flatten)]
        variety: VarietyArgs,
        #[arg(long, value_enum, default_value = "both")]
        method: Method,
        /// Re-check the negative-twist vanishing instead of trusting lcdef(X).
        #[arg(long)]
        strict: bool,
    },
    Kgroups {
        #[command(flatten)]
        variety: VarietyArgs,
        #[arg(long, default_value_t = 1)]
        min_l: usize,
        #[arg(long)]
        max_l: Option<usize>,
        /// Classical cone: adds the Picard group summand.
        #[arg(long)]
        classical: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum CheckCmd {
    Vanishing {
        #[command(flatten)]
        variety: VarietyArgs,
        #[arg(long)]
        dual: bool,
        #[arg(long)]
        kan: bool,
    },
    Predubois {
        #[command(flatten)]
        variety: VarietyArgs,
    },
    Seminormal {
        #[command(flatten)]
        variety: VarietyArgs,
    },
}

#[derive(Debug, Clone, Args)]
pub struct VarietyArgs {
    /// `P<n>@<d>`, `P<n1>x...xP<nr>@<a1>,...,<ar>`, or a table JSON file.
    #[arg(long)]
    pub variety: String,
    /// Dimension N of the ambient projective space of the embedding.
    #[arg(long)]
    pub ambient: Option<usize>,
    /// The embedding is projectively normal.
    #[arg(long)]
    pub projectively_normal: bool,
}

enum Fail {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Compute(e)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Selector {
    Catalog { factors: Vec<usize>, polarization: Vec<u64> },
    File(PathBuf),
}

/// Parses the variety selector; anything path-like is a file.
pub fn parse_selector(text: &str) -> Result<Selector, String> {
    if text.contains('/') || text.contains('\\') || text.ends_with(".json") {
        return Ok(Selector::File(PathBuf::from(text)));
    }
    let bad = || format!("cannot parse variety {text:?}; expected P<n>@<d> or P<n1>x...xP<nr>@<a1>,...,<ar>");
    let (spaces, pol) = match text.split_once('@') {
        Some((s, p)) => (s, Some(p)),
        None => (text, None),
    };
    let factors = spaces
        .split('x')
        .map(|f| f.strip_prefix('P').and_then(|d| d.parse::<usize>().ok()).ok_or_else(bad))
        .collect::<Result<Vec<_>, _>>()?;
    let polarization = match pol {
        None => vec![1; factors.len()],
        Some(p) => p
            .split(',')
            .map(|a| a.parse::<u64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?,
    };
    if polarization.len() != factors.len() {
        return Err(format!(
            "{} factors but {} polarization degrees in {text:?}",
            factors.len(),
            polarization.len()
        ));
    }
    Ok(Selector::Catalog { factors, polarization })
}

struct Report {
    command: String,
    inputs: Map<String, Value>,
    results: Value,
    violations: Vec<Value>,
}

impl Report {
    fn input(&mut self, key: &str, v: impl Serialize) {
        self.inputs.insert(key.into(), to_value(v));
    }

    fn violation(&mut self, rule: &str, at: impl Into<String>, detail: impl Into<String>) {
        self.violations.push(json!({"rule": rule, "at": at.into(), "detail": detail.into()}));
    }

    fn to_json(&self) -> Value {
        json!({
            "tool_version": TOOL_VERSION,
            "command": self.command,
            "inputs": Value::Object(self.inputs.clone()),
            "results": self.results,
            "violations": self.violations,
        })
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

fn window_override(cli_window: Option<i64>) -> Result<Option<i64>, Fail> {
    if cli_window.is_some() {
        return Ok(cli_window);
    }
    match std::env::var(WINDOW_ENV) {
        Ok(text) => text
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Fail::Usage(format!("{WINDOW_ENV}={text:?} is not an integer"))),
        Err(_) => Ok(None),
    }
}

fn load_variety(
    args: &VarietyArgs,
    window: Option<i64>,
    report: &mut Report,
) -> Result<(HodgeDuBoisTable, LefschetzOperator), Fail> {
    report.input("variety", &args.variety);
    let selector = parse_selector(&args.variety).map_err(Fail::Usage)?;
    let (table, op) = match selector {
        Selector::File(path) => {
            let bytes = std::fs::read(&path).map_err(|e| Fail::Usage(format!("cannot read {}: {e}", path.display())))?;
            let (t, op, validation) = load_table(&bytes)?;
            for v in validation.violations {
                report.violation(&v.rule, v.at, v.detail);
            }
            (t, op)
        }
        Selector::Catalog { factors, polarization } => {
            let n: usize = factors.iter().sum();
            if let Some(w) = window {
                if w < n as i64 + 2 {
                    return Err(Fail::Usage(format!("window {w} is below the minimum {} for dimension {n}", n + 2)));
                }
            }
            let spec = CatalogSpec::new(factors, polarization, window).map_err(|e| Fail::Usage(e.to_string()))?;
            report.input("window", spec.window);
            let (t, op) = catalog_table(&spec)?;
            let mut validation = validate_table(&t);
            validation.violations.extend(validate_operator(&t, &op, true).violations);
            for v in validation.violations {
                report.violation(&v.rule, v.at, v.detail);
            }
            (t, op)
        }
    };
    if let Some(n) = args.ambient {
        report.input("ambient", n);
    }
    if args.projectively_normal {
        report.input("projectively_normal", true);
    }
    Ok((table, op))
}

fn abstract_desc(args: &VarietyArgs, window: Option<i64>, report: &mut Report) -> Result<ConeDescriptor, Fail> {
    let (t, op) = load_variety(args, window, report)?;
    let mut desc = ConeDescriptor::abstract_cone(t, op);
    desc.ambient_dim = args.ambient;
    Ok(desc)
}

fn classical_desc(args: &VarietyArgs, window: Option<i64>, report: &mut Report) -> Result<ConeDescriptor, Fail> {
    let (t, op) = load_variety(args, window, report)?;
    Ok(ConeDescriptor::classical_cone(t, op, args.projectively_normal, args.ambient)?)
}

fn audit_violations(report: &mut Report, rule: &str, cells: &[Cell]) {
    for c in cells {
        report.violation(rule, format!("({}, {}, {})", c.p, c.q, c.m), format!("dimension {} where vanishing is expected", c.dim));
    }
}

fn execute(cli: &Cli, report: &mut Report) -> Result<(), Fail> {
    let window = window_override(cli.window)?;
    match &cli.command {
        Command::Catalog { cmd: CatalogCmd::List } => {
            let entries: Vec<Value> = manifest()
                .into_iter()
                .map(|(name, spec)| {
                    let factors: Vec<String> = spec.factors.iter().map(|f| format!("P{f}")).collect();
                    let pol: Vec<String> = spec.polarization.iter().map(u64::to_string).collect();
                    json!({
                        "name": name,
                        "dim": spec.dim(),
                        "factors": factors.join("x"),
                        "polarization": pol.join(","),
                        "window": spec.window,
                    })
                })
                .collect();
            report.results = json!({ "entries": entries });
        }
        Command::Catalog { cmd: CatalogCmd::Table { variety, out } } => {
            let (t, op) = load_variety(variety, window, report)?;
            let bytes = save_table(&t, &op);
            match out {
                Some(path) => {
                    std::fs::write(path, &bytes)
                        .map_err(|e| Fail::Usage(format!("cannot write {}: {e}", path.display())))?;
                    report.input("out", path.display().to_string());
                    report.results = json!({ "name": t.name, "written": path.display().to_string() });
                }
                None => {
                    let table: Value = serde_json::from_slice(&bytes).expect("saved tables parse");
                    report.results = json!({ "table": table });
                }
            }
        }
        Command::Oracle { cmd: OracleCmd::Hodge { n, p, m, lo, hi } } => {
            report.input("n", n);
            report.input("p", p);
            report.input("m", m);
            let h = match (lo, hi) {
                (Some(lo), Some(hi)) => {
                    report.input("box", [lo, hi]);
                    oracle_hodge_dimension_in_box(*n, *p, *m, *lo, *hi, OracleBudget::default())?
                }
                _ => oracle_hodge_dimension(*n, *p, *m, OracleBudget::default())?,
            };
            let rows: Vec<Value> = h
                .iter()
                .enumerate()
                .map(|(q, dim)| {
                    let closed = crate::catalog::bott_dimension(*n, *p, q, *m).ok();
                    json!({ "q": q, "oracle": dim, "closed_form": closed })
                })
                .collect();
            for row in &rows {
                if row["oracle"] != row["closed_form"] {
                    report.violation("oracle-vs-closed-form", format!("q = {}", row["q"]), format!("{row}"));
                }
            }
            report.results = json!({ "h": h, "rows": rows });
        }
        Command::Cone { cmd } => cone(cmd, window, report)?,
        Command::Check { cmd } => check(cmd, window, report)?,
        Command::Selftest => {
            let suites = run_selftest();
            for s in &suites {
                for f in &s.failures {
                    report.violation("selftest", s.name, f.clone());
                }
                if !s.passed && s.failures.is_empty() {
                    report.violation("selftest", s.name, "suite checked nothing");
                }
            }
            report.results = json!({ "suites": suites.iter().map(|s| json!({
                "name": s.name,
                "checked": s.checked,
                "passed": s.passed,
                "failures": s.failures.len(),
            })).collect::<Vec<_>>() });
        }
    }
    Ok(())
}

fn cone(cmd: &ConeCmd, window: Option<i64>, report: &mut Report) -> Result<(), Fail> {
    match cmd {
        ConeCmd::Dubois { variety, k } => {
            report.input("k", k);
            let desc = abstract_desc(variety, window, report)?;
            let table = cone_dubois(&desc, *k)?;
            let mut rows = Vec::new();
            let mut tails = Vec::new();
            let mut constants = Vec::new();
            for (&i, row) in &table.rows {
                if row.constant_summand != 0 {
                    constants.push(json!({ "i": i, "m": 0, "dim": row.constant_summand }));
                }
                for m in 1..=row.top_part.window_hi() {
                    let top = row.top_part.resolve(m).ok();
                    let lower = row.lower_part.as_ref().and_then(|g| g.resolve(m).ok());
                    rows.push(json!({ "k": k, "i": i, "m": m, "top": top, "lower": lower, "total": row.total(m) }));
                }
                tails.push(json!({ "i": i, "part": "top", "from_m": row.top_part.window_hi() + 1, "law": row.top_part.pos_tail().describe() }));
                if let Some(g) = &row.lower_part {
                    tails.push(json!({ "i": i, "part": "lower", "from_m": g.window_hi() + 1, "law": g.pos_tail().describe() }));
                }
            }
            report.results = json!({ "k": k, "rows": rows, "constant": constants, "tails": tails });
        }
        ConeCmd::Depth { variety, k } => {
            let desc = abstract_desc(variety, window, report)?;
            let depths = depth_vector(&desc)?;
            let vector: Vec<String> = depths.iter().map(|d| d.depth.to_string()).collect();
            let mut results = json!({ "depths": depths, "vector": vector });
            if let Some(k) = k {
                report.input("k", k);
                let tests = (0..=desc.base.n + 1)
                    .map(|i| restriction_iso_test(&desc, *k, i))
                    .collect::<Result<Vec<_>, _>>()?;
                results["restriction"] = to_value(tests);
            }
            report.results = results;
        }
        ConeCmd::Lcdef { variety, method, strict } => {
            report.input("method", format!("{method:?}").to_lowercase());
            report.input("strict", strict);
            match method {
                Method::Depth => {
                    let desc = abstract_desc(variety, window, report)?;
                    let cert = lcdef_cone_depth(&desc)?;
                    report.results = json!({ "c": cert.c, "certificates": [cert] });
                }
                Method::Lefschetz => {
                    let desc = abstract_desc(variety, window, report)?;
                    let cert = lcdef_cone_lefschetz_with(&desc, *strict)?;
                    report.results = json!({ "c": cert.c, "certificates": [cert] });
                }
                Method::Both => {
                    let desc = abstract_desc(variety, window, report)?;
                    let depth = lcdef_cone_depth(&desc)?;
                    let lef = lcdef_cone_lefschetz_with(&desc, *strict)?;
                    let agree = depth.c == lef.c;
                    let banner = if agree {
                        format!("depth and Lefschetz paths agree: lcdef(Z) = {}", depth.c)
                    } else {
                        format!("paths DISAGREE: depth gives {}, Lefschetz gives {}", depth.c, lef.c)
                    };
                    if !agree {
                        report.violation("path-agreement", "lcdef", banner.clone());
                    }
                    report.results = json!({ "c": depth.c, "agree": agree, "banner": banner, "certificates": [depth, lef] });
                }
                Method::Classical => {
                    let desc = classical_desc(variety, window, report)?;
                    let cert = lcdef_classical(&desc)?;
                    if let Evidence::Classical { agrees: false, restriction_c, .. } = &cert.evidence {
                        report.violation(
                            "classical-agreement",
                            "lcdef",
                            format!("restriction criterion gives {restriction_c}, Lefschetz path gives {}", cert.c),
                        );
                    }
                    report.results = json!({ "c": cert.c, "embedded_lcd": cert.embedded_lcd, "certificates": [cert] });
                }
            }
        }
        ConeCmd::Kgroups { variety, min_l, max_l, classical } => {
            if *min_l == 0 {
                return Err(Fail::Usage("--min-l must be at least 1".into()));
            }
            report.input("classical", classical);
            let desc = if *classical {
                classical_desc(variety, window, report)?
            } else {
                abstract_desc(variety, window, report)?
            };
            let n = desc.base.n;
            let max_l = max_l.unwrap_or(n + 1);
            report.input("min_l", min_l);
            report.input("max_l", max_l);
            let k0 = if *classical { k_zero_classical(&desc)? } else { k_zero(&desc)? };
            let negative = (*min_l..=max_l).map(|l| k_negative(&desc, l)).collect::<Result<Vec<_>, _>>()?;
            let mut higher = Vec::new();
            for l in *min_l..=max_l {
                for i in l + 2..=n + 1 {
                    higher.push(higher_k_piece(&desc, l, i)?);
                }
            }
            report.results = json!({ "k0": k0, "negative": negative, "higher": higher });
        }
    }
    Ok(())
}

fn check(cmd: &CheckCmd, window: Option<i64>, report: &mut Report) -> Result<(), Fail> {
    match cmd {
        CheckCmd::Vanishing { variety, dual, kan } => {
            let (both, dual, kan) = (!dual && !kan, *dual, *kan);
            let (t, _) = load_variety(variety, window, report)?;
            let mut results = Map::new();
            if dual || both {
                let audit = dual_nakano_audit(&t)?;
                audit_violations(report, "dual-nakano", &audit.violations);
                results.insert("dual_nakano".into(), to_value(audit));
            }
            if kan || both {
                let audit = kan_audit(&t)?;
                audit_violations(report, "kan", &audit.violations);
                results.insert("kan".into(), to_value(audit));
            }
            report.results = Value::Object(results);
        }
        CheckCmd::Predubois { variety } => {
            let desc = abstract_desc(variety, window, report)?;
            report.results = json!({ "level": pre_p_dubois_level(&desc)? });
        }
        CheckCmd::Seminormal { variety } => {
            let desc = abstract_desc(variety, window, report)?;
            report.results = json!({
                "base_seminormal": desc.base.seminormal,
                "cone_seminormal": cone_seminormal(&desc),
            });
        }
    }
    Ok(())
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Catalog { cmd: CatalogCmd::Table { .. } } => "catalog table",
        Command::Catalog { cmd: CatalogCmd::List } => "catalog list",
        Command::Oracle { cmd: OracleCmd::Hodge { .. } } => "oracle hodge",
        Command::Cone { cmd: ConeCmd::Dubois { .. } } => "cone dubois",
        Command::Cone { cmd: ConeCmd::Depth { .. } } => "cone depth",
        Command::Cone { cmd: ConeCmd::Lcdef { .. } } => "cone lcdef",
        Command::Cone { cmd: ConeCmd::Kgroups { .. } } => "cone kgroups",
        Command::Check { cmd: CheckCmd::Vanishing { .. } } => "check vanishing",
        Command::Check { cmd: CheckCmd::Predubois { .. } } => "check predubois",
        Command::Check { cmd: CheckCmd::Seminormal { .. } } => "check seminormal",
        Command::Selftest => "selftest",
    }
}

/// Runs one invocation. Exit codes: 0 success, 1 violations or failed
/// analysis (report still written), 2 usage errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = write!(err, "{}", e.render());
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
        }
    };
    if !cli.no_header {
        let secs = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let _ = writeln!(err, "# cone-hodge {TOOL_VERSION}, unix time {secs}");
    }
    let mut report = Report {
        command: command_name(&cli.command).to_string(),
        inputs: Map::new(),
        results: Value::Null,
        violations: Vec::new(),
    };
    report.input("format", format!("{:?}", cli.format).to_lowercase());
    match execute(&cli, &mut report) {
        Ok(()) => {}
        Err(Fail::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            return 2;
        }
        Err(Fail::Compute(e)) => report.violation("error", report.command.clone(), e.to_string()),
    }
    let doc = report.to_json();
    let text = match cli.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&doc).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Markdown => render::markdown(&doc),
        Format::Csv => match render::csv(&doc) {
            Some(s) => s,
            None => {
                let _ = writeln!(err, "error: `{}` has no tabular results for CSV output", report.command);
                return 2;
            }
        },
    };
    if out.write_all(text.as_bytes()).is_err() {
        return 2;
    }
    i32::from(!report.violations.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["cone-hodge"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn selector_grammar() {
        assert_eq!(
            parse_selector("P1xP2@1,1"),
            Ok(Selector::Catalog { factors: vec![1, 2], polarization: vec![1, 1] })
        );
        assert_eq!(parse_selector("P2"), Ok(Selector::Catalog { factors: vec![2], polarization: vec![1] }));
        assert_eq!(parse_selector("P3@2"), Ok(Selector::Catalog { factors: vec![3], polarization: vec![2] }));
        assert_eq!(parse_selector("tables/x.json"), Ok(Selector::File("tables/x.json".into())));
        assert_eq!(parse_selector("x.json"), Ok(Selector::File("x.json".into())));
        assert!(parse_selector("P1xP2@1").is_err());
        assert!(parse_selector("Q2").is_err());
    }

    #[test]
    fn lcdef_both_on_segre() {
        let (code, out, err) = call(&["--no-header", "cone", "lcdef", "--variety", "P1xP2@1,1", "--method", "both"]);
        assert_eq!(code, 0, "{err}");
        assert!(err.is_empty());
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["results"]["c"], 1);
        assert_eq!(v["results"]["agree"], true);
        assert_eq!(v["violations"], json!([]));
    }

    #[test]
    fn oracle_vector() {
        let (code, out, _) = call(&["--no-header", "oracle", "hodge", "--n", "2", "--p", "1", "--m", "0"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["results"]["h"], json!([0, 1, 0]));
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["cone", "depth", "--variety", "Q1"]).0, 2);
        assert_eq!(call(&["--window", "2", "cone", "depth", "--variety", "P2@1"]).0, 2);
        assert_eq!(call(&["--format", "csv", "check", "seminormal", "--variety", "P1@1"]).0, 2);
    }

    #[test]
    fn header_goes_to_stderr() {
        let (code, out, err) = call(&["check", "seminormal", "--variety", "P1@1"]);
        assert_eq!(code, 0);
        assert!(err.starts_with("# cone-hodge"));
        assert!(out.starts_with('{'));
    }
}
