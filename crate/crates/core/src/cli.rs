//! Command-line front end.
//!
//! Exit codes: 0 pass, 1 mathematical failure (with witness), 2 usage or
//! configuration error.

use std::collections::{BTreeMap, HashMap};
use std::ffi::OsString;
use std::fmt::Write as _;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::combinat::{self, Weighting};
use crate::error::{Error, Result};
use crate::exactalg::{parse_poly, MultiPoly, Var};
use crate::tpcheck::{check_hankel_tp_with, check_toeplitz_tp_with, check_tp_with, CheckOptions, TPReport};
use crate::triangle::named::{named_triangle, TRIANGLES};
use crate::triangle::seqs::{names as sequence_names, sequence};
use crate::triangle::{production_matrix, row_generating, PolyMatrix, Shape};

#[derive(Parser, Debug)]
#[command(name = "tpforest", version, about = "Exact production matrices and total-positivity checks for forest polynomials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write the emission here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<String>,
    #[arg(long, default_value_t = 1, global = true)]
    pub jobs: usize,
    #[arg(long = "budget-ms", global = true)]
    pub budget_ms: Option<u64>,
    /// Report all wall times as 0, so repeated runs are byte-identical.
    #[arg(long = "no-timing", global = true)]
    pub no_timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Params {
    /// Specialize a variable, e.g. `--set q=1+r` (repeatable).
    #[arg(long = "set", value_name = "VAR=POLY")]
    pub set: Vec<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Emit rows 0..=n of a named triangle.
    Table {
        name: String,
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[command(flatten)]
        params: Params,
    },
    /// Emit the N x N production-matrix window of a named triangle.
    Prodmat {
        name: String,
        #[arg(long, visible_alias = "window", default_value_t = 8)]
        n: usize,
        #[command(flatten)]
        params: Params,
    },
    /// Total-positivity checks.
    Check {
        #[command(subcommand)]
        kind: CheckKind,
    },
    /// Diff a named triangle against its enumeration oracle, rows 0..=n.
    OracleDiff {
        name: String,
        #[arg(long, default_value_t = 5)]
        n: usize,
        /// Statistic for sgs_ab: propv or ascdes.
        #[arg(long)]
        via: Option<String>,
        #[command(flatten)]
        params: Params,
    },
    /// Run a conjecture check at a stated window; the result is evidence only.
    Conjecture {
        id: String,
        #[arg(long, visible_aliases = ["n", "N"])]
        window: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
    },
    /// List triangle and sequence names.
    List,
}

#[derive(Subcommand, Debug)]
pub enum CheckKind {
    Tp {
        #[arg(long)]
        matrix: String,
        #[arg(long, visible_aliases = ["n", "N"], default_value_t = 8)]
        window: usize,
        #[arg(long, default_value_t = 3)]
        r: usize,
        /// Check the production matrix instead of the triangle.
        #[arg(long)]
        prodmat: bool,
        /// Check the binomial row-generating matrix `A B_x` instead.
        #[arg(long = "binomial-x")]
        binomial_x: bool,
        #[command(flatten)]
        params: Params,
    },
    Hankel {
        #[arg(long)]
        seq: String,
        #[arg(long, visible_aliases = ["n", "N"], default_value_t = 8)]
        window: usize,
        #[arg(long, default_value_t = 3)]
        r: usize,
        #[command(flatten)]
        params: Params,
    },
    Toeplitz {
        #[arg(long)]
        seq: String,
        #[arg(long, visible_aliases = ["n", "N"], default_value_t = 8)]
        window: usize,
        #[arg(long, default_value_t = 3)]
        r: usize,
        #[command(flatten)]
        params: Params,
    },
}

/// Parse `VAR=POLY` specializations; unknown variables are rejected.
pub fn parse_bindings(set: &[String]) -> Result<HashMap<Var, MultiPoly>> {
    let mut out = HashMap::new();
    for s in set {
        let (v, p) = s.split_once('=').ok_or_else(|| Error::Parse(format!("expected VAR=POLY, got {s:?}")))?;
        let var: Var = v.trim().parse()?;
        out.insert(var, parse_poly(p)?);
    }
    Ok(out)
}

fn binding_strings(b: &HashMap<Var, MultiPoly>) -> BTreeMap<String, String> {
    b.iter().map(|(v, p)| (v.to_string(), p.to_string())).collect()
}

/// One conjecture harness: what to check, and at which default size.
pub struct Conjecture {
    pub id: &'static str,
    pub statement: &'static str,
    pub target: Target,
    pub bindings: &'static [(&'static str, &'static str)],
    pub window: usize,
    pub r: usize,
}

pub enum Target {
    Triangle(&'static str),
    Hankel(&'static str),
}

const W1: &[(&str, &str)] = &[("w", "-1 + w'")];

pub const CONJECTURES: &[Conjecture] = &[
    Conjecture { id: "6.1a", statement: "SGS triangle P(a,b) coefficientwise TP", target: Target::Triangle("sgs_ab"), bindings: &[], window: 9, r: 3 },
    Conjecture { id: "6.1b", statement: "SGS row polynomials P_n(x;a,b) coefficientwise Hankel-TP", target: Target::Hankel("sgs_ab_rowgen"), bindings: &[], window: 4, r: 3 },
    Conjecture { id: "6.1c", statement: "P_(n+1,1)(a,b) coefficientwise Hankel-TP", target: Target::Hankel("sgs_ab_col1"), bindings: &[], window: 5, r: 3 },
    Conjecture { id: "6.2a", statement: "P_(n+1,1)(a,b)/n! coefficientwise Hankel-TP", target: Target::Hankel("sgs_ab_col1_over_nfact"), bindings: &[], window: 4, r: 3 },
    Conjecture { id: "6.2b", statement: "P_(n+1,1)(a,b)/(n+1)! coefficientwise Hankel-TP", target: Target::Hankel("sgs_ab_col1_over_n1fact"), bindings: &[], window: 4, r: 3 },
    Conjecture { id: "6.4", statement: "F*_n(x,1+r) coefficientwise Hankel-TP in x,r", target: Target::Hankel("q_forest_star_rowgen"), bindings: &[("q", "1 + r")], window: 4, r: 3 },
    Conjecture { id: "6.5a", statement: "q-SGS triangle P(y,a,b,q) coefficientwise TP", target: Target::Triangle("q_sgs"), bindings: &[], window: 8, r: 3 },
    Conjecture { id: "6.5b", statement: "P_n(x;0,a,b,1+r) coefficientwise Hankel-TP", target: Target::Hankel("q_sgs_rowgen"), bindings: &[("y", "0"), ("q", "1 + r")], window: 4, r: 3 },
    Conjecture { id: "6.6", statement: "F^ord_n(x) coefficientwise Hankel-TP", target: Target::Hankel("ordered_forest_rowgen"), bindings: &[], window: 5, r: 3 },
    Conjecture { id: "6.7", statement: "F^ord_n(x)/n! coefficientwise Hankel-TP", target: Target::Hankel("ordered_forest_rowgen_over_nfact"), bindings: &[], window: 5, r: 3 },
    Conjecture { id: "6.8a", statement: "functional-digraph triangle psi TP", target: Target::Triangle("functional_digraph_psi"), bindings: &[], window: 10, r: 4 },
    Conjecture { id: "6.8b", statement: "Psi_n(y) coefficientwise Hankel-TP", target: Target::Hankel("functional_digraph_psi_rowgen"), bindings: &[], window: 5, r: 3 },
    Conjecture { id: "6.9a", statement: "Psi^Y triangle coefficientwise TP in x", target: Target::Triangle("psi_Y"), bindings: &[], window: 8, r: 3 },
    Conjecture { id: "6.9b", statement: "Psi_n(x,y) coefficientwise Hankel-TP", target: Target::Hankel("psi_X_rowgen"), bindings: &[], window: 4, r: 3 },
    Conjecture { id: "6.9c", statement: "psi^Y_(n+1,1)(x) coefficientwise Hankel-TP", target: Target::Hankel("psi_Y_col1"), bindings: &[], window: 5, r: 3 },
    Conjecture { id: "6.10a", statement: "root-descent triangle F#(w) coefficientwise TP", target: Target::Triangle("root_descent_sharp"), bindings: &[], window: 8, r: 3 },
    Conjecture { id: "6.10b", statement: "F#_n(x,w) coefficientwise Hankel-TP", target: Target::Hankel("root_descent_sharp_rowgen"), bindings: &[], window: 4, r: 3 },
    Conjecture { id: "6.10c", statement: "f#_(n+1,1)(w) coefficientwise Hankel-TP", target: Target::Hankel("root_descent_sharp_col1"), bindings: &[], window: 5, r: 3 },
    Conjecture { id: "6.11b", statement: "F#_n(x,-1+w') coefficientwise Hankel-TP", target: Target::Hankel("root_descent_sharp_rowgen"), bindings: W1, window: 4, r: 3 },
    Conjecture { id: "6.11c", statement: "f#_(n+1,1)(-1+w') coefficientwise Hankel-TP", target: Target::Hankel("root_descent_sharp_col1"), bindings: W1, window: 4, r: 3 },
];

pub fn conjecture(id: &str) -> Option<&'static Conjecture> {
    CONJECTURES.iter().find(|c| c.id == id)
}

/// Run one conjecture check at `(window, r)`.
pub fn run_conjecture(c: &Conjecture, window: usize, r: usize, opts: &CheckOptions) -> Result<TPReport> {
    let bind: Vec<String> = c.bindings.iter().map(|(v, p)| format!("{v}={p}")).collect();
    let bind = parse_bindings(&bind)?;
    match c.target {
        Target::Triangle(name) => check_tp_with(&named_triangle(name, &bind, window)?, r, window, opts),
        Target::Hankel(name) => check_hankel_tp_with(&sequence(name, &bind, 2 * window - 1)?, window, r, opts),
    }
}

#[derive(Serialize)]
struct Table<'a> {
    name: &'a str,
    kind: &'a str,
    window: usize,
    rows: Vec<Vec<String>>,
}

fn table_rows(m: &PolyMatrix) -> Vec<Vec<String>> {
    let tri = m.shape() == Shape::LowerTriangular;
    (0..m.size())
        .map(|i| {
            let r = m.row(i);
            let r = if tri { &r[..=i] } else { r };
            r.iter().map(|p| p.to_string()).collect()
        })
        .collect()
}

/// The emission of one run, before formatting.
pub struct Outcome {
    pub command: &'static str,
    pub config: Value,
    pub result: &'static str,
    pub reports: Vec<Value>,
    pub matrix: Option<PolyMatrix>,
    pub exit: i32,
}

fn tp_outcome(command: &'static str, config: Value, rep: TPReport, opts_no_timing: bool) -> Outcome {
    let mut rep = rep;
    if opts_no_timing {
        rep.wall_time_ms = 0;
    }
    let pass = rep.passed();
    Outcome {
        command,
        config,
        result: if pass { "pass" } else { "fail" },
        reports: vec![serde_json::to_value(&rep).expect("report serializes")],
        matrix: None,
        exit: if pass { 0 } else { 1 },
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let opts = CheckOptions { budget_ms: cli.budget_ms, ..CheckOptions::default() };
    let nt = cli.no_timing;
    Ok(match &cli.command {
        Command::Table { name, n, params } => {
            let bind = parse_bindings(&params.set)?;
            let m = named_triangle(name, &bind, n + 1)?;
            let config = json!({"name": name, "params": binding_strings(&bind), "n": n});
            let t = Table { name, kind: "triangle", window: n + 1, rows: table_rows(&m) };
            Outcome { command: "table", config, result: "ok", reports: vec![serde_json::to_value(t).unwrap()], matrix: Some(m), exit: 0 }
        }
        Command::Prodmat { name, n, params } => {
            let bind = parse_bindings(&params.set)?;
            let name = if name == "identity-triangle" { "identity" } else { name.as_str() };
            if *n < 1 {
                return Err(Error::WindowTooSmall { needed: 1, have: *n });
            }
            let a = named_triangle(name, &HashMap::new(), n + 1)?;
            let pm = production_matrix(&a)?.substitute(&bind);
            let config = json!({"name": name, "params": binding_strings(&bind), "n": n});
            let t = Table { name, kind: "production_matrix", window: *n, rows: table_rows(&pm) };
            Outcome { command: "prodmat", config, result: "ok", reports: vec![serde_json::to_value(t).unwrap()], matrix: Some(pm), exit: 0 }
        }
        Command::Check { kind } => match kind {
            CheckKind::Tp { matrix, window, r, prodmat, binomial_x, params } => {
                let bind = parse_bindings(&params.set)?;
                let m = if *prodmat {
                    production_matrix(&named_triangle(matrix, &HashMap::new(), window + 1)?)?.substitute(&bind)
                } else {
                    named_triangle(matrix, &bind, *window)?
                };
                let m = if *binomial_x { row_generating(&m, Var::X)?.1 } else { m };
                let config = json!({"kind": "tp", "matrix": matrix, "prodmat": prodmat, "binomial_x": binomial_x,
                    "params": binding_strings(&bind), "window": window, "r": r});
                tp_outcome("check", config, check_tp_with(&m, *r, *window, &opts)?, nt)
            }
            CheckKind::Hankel { seq, window, r, params } | CheckKind::Toeplitz { seq, window, r, params } => {
                let hankel = matches!(kind, CheckKind::Hankel { .. });
                let bind = parse_bindings(&params.set)?;
                let len = if hankel { (2 * window).saturating_sub(1) } else { *window };
                let s = sequence(seq, &bind, len)?;
                let rep = if hankel { check_hankel_tp_with(&s, *window, *r, &opts)? } else { check_toeplitz_tp_with(&s, *window, *r, &opts)? };
                let config = json!({"kind": if hankel { "hankel" } else { "toeplitz" }, "seq": seq,
                    "params": binding_strings(&bind), "window": window, "r": r});
                tp_outcome("check", config, rep, nt)
            }
        },
        Command::OracleDiff { name, n, via, params } => {
            let bind = parse_bindings(&params.set)?;
            let built = named_triangle(name, &bind, n + 1)?;
            let weighting = via.as_deref().map(str::parse::<Weighting>).transpose()?;
            let oracle = combinat::oracle_named(name, weighting, n + 1)?.substitute(&bind);
            let mut diffs = Vec::new();
            for i in 0..=*n {
                for k in 0..=i {
                    if built.get(i, k) != oracle.get(i, k) {
                        diffs.push(json!({"n": i, "k": k, "constructed": built.get(i, k), "oracle": oracle.get(i, k)}));
                    }
                }
            }
            let same = diffs.is_empty();
            let config = json!({"name": name, "via": via, "params": binding_strings(&bind), "n": n});
            Outcome {
                command: "oracle-diff",
                config,
                result: if same { "identical" } else { "different" },
                reports: vec![json!({"identical": same, "differences": diffs})],
                matrix: None,
                exit: if same { 0 } else { 1 },
            }
        }
        Command::Conjecture { id, window, r } => {
            let c = conjecture(id).ok_or_else(|| Error::UnknownName(format!("conjecture {id}")))?;
            let (w, r) = (window.unwrap_or(c.window), r.unwrap_or(c.r));
            let mut rep = run_conjecture(c, w, r, &opts)?;
            if nt {
                rep.wall_time_ms = 0;
            }
            let pass = rep.passed();
            let label = format!("evidence at (N={w}, r={r})");
            let config = json!({"id": c.id, "window": w, "r": r,
                "params": c.bindings.iter().map(|(v, p)| (v.to_string(), p.to_string())).collect::<BTreeMap<_, _>>()});
            Outcome {
                command: "conjecture",
                config,
                result: if pass { "pass" } else { "fail" },
                reports: vec![json!({"statement": c.statement, "label": label, "report": rep})],
                matrix: None,
                exit: if pass { 0 } else { 1 },
            }
        }
        Command::List => Outcome {
            command: "list",
            config: json!({}),
            result: "ok",
            reports: vec![json!({"triangles": TRIANGLES, "sequences": sequence_names(),
                "conjectures": CONJECTURES.iter().map(|c| c.id).collect::<Vec<_>>()})],
            matrix: None,
            exit: 0,
        },
    })
}

fn render(cli: &Cli, o: &Outcome, wall_ms: u64) -> Result<String> {
    match cli.format {
        Format::Json => {
            let v = json!({"command": o.command, "config": o.config, "result": o.result, "reports": o.reports, "wall_time_ms": wall_ms});
            Ok(serde_json::to_string_pretty(&v).expect("json") + "\n")
        }
        Format::Csv => {
            let m = o.matrix.as_ref().ok_or_else(|| Error::Invalid("CSV is only available for tables".into()))?;
            let mut s = String::new();
            for i in 0..m.size() {
                let row = m.row(i);
                let mut cells = Vec::new();
                for p in row {
                    match p.as_constant() {
                        Some(c) if c.is_integer() => cells.push(c.to_string()),
                        _ => return Err(Error::Invalid("CSV needs a fully specialized integer table".into())),
                    }
                }
                writeln!(s, "{}", cells.join(",")).unwrap();
            }
            Ok(s)
        }
        Format::Text => {
            let mut s = format!("{}: {}\n", o.command, o.result);
            if let Some(m) = &o.matrix {
                for r in table_rows(m) {
                    writeln!(s, "{}", r.join("  |  ")).unwrap();
                }
            }
            for r in &o.reports {
                if o.matrix.is_none() {
                    writeln!(s, "{}", serde_json::to_string(r).expect("json")).unwrap();
                }
            }
            Ok(s)
        }
    }
}

/// Parse, run and render; returns the exit code and what would be printed.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.to_string());
        }
    };
    let start = Instant::now();
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.max(1)).build() {
        Ok(p) => p,
        Err(e) => return (2, format!("error: {e}\n")),
    };
    let out = pool.install(|| execute(&cli));
    let wall = if cli.no_timing { 0 } else { start.elapsed().as_millis() as u64 };
    match out.and_then(|o| Ok((o.exit, render(&cli, &o, wall)?))) {
        Ok((code, text)) => {
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &text) {
                    return (2, format!("error: cannot write {path}: {e}\n"));
                }
                return (code, String::new());
            }
            (code, text)
        }
        Err(e) => {
            // mathematical budget overruns are still configuration problems
            (2, format!("error: {e}\n"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &str) -> (i32, String) {
        run(std::iter::once("tpforest").chain(args.split_whitespace()))
    }

    fn json_of(args: &str) -> (i32, Value) {
        let (code, s) = go(args);
        (code, serde_json::from_str(&s).unwrap_or_else(|_| panic!("not json: {s}")))
    }

    #[test]
    fn table_small() {
        let (code, v) = json_of("table forest --n 1");
        assert_eq!(code, 0);
        assert_eq!(v["reports"][0]["rows"], json!([["1"], ["0", "1"]]));
        let (_, v) = json_of("table forest --n 9");
        assert_eq!(v["reports"][0]["rows"][8][2], "1835008");
        let (code, csv) = go("table forest --n 3 --format csv");
        assert_eq!(code, 0);
        assert_eq!(csv, "1,0,0,0\n0,1,0,0\n0,2,1,0\n0,9,6,1\n");
        assert_eq!(go("table sgs_ab --n 3 --format csv").0, 2);
    }

    #[test]
    fn prodmat_examples() {
        let (_, v) = json_of("prodmat sgs_ab --n 6");
        assert_eq!(v["reports"][0]["rows"][2], json!(["0", "b^2 + 3*a*b + a^2", "2*b + 2*a", "1", "0", "0"]));
        let (_, v) = json_of("prodmat identity-triangle --n 3");
        assert_eq!(v["reports"][0]["rows"], json!([["0", "1", "0"], ["0", "0", "1"], ["0", "0", "0"]]));
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(go("table nosuch --n 3").0, 2);
        assert_eq!(go("table forest --n 3 --set nope=1").0, 2);
        assert_eq!(go("conjecture 9.9").0, 2);
        assert_eq!(go("oracle-diff forest --n 12").0, 2);
        assert_eq!(go("frobnicate").0, 2);
    }

    #[test]
    fn checks() {
        let (code, v) = json_of("check hankel --seq forest_rowgen --N 4 --r 3");
        assert_eq!((code, v["result"].clone()), (0, json!("pass")));
        let (code, v) = json_of("check hankel --seq all_ones_rowgen --N 2 --r 2");
        assert_eq!(code, 1);
        assert_eq!(v["reports"][0]["witness"]["det"], "-x");
        let (code, _) = json_of("check toeplitz --seq inv_factorial --N 6 --r 4");
        assert_eq!(code, 0);
        let (code, v) = json_of("check tp --matrix q_forest --prodmat --window 5 --r 1");
        assert_eq!(code, 1);
        assert_eq!(v["reports"][0]["witness"]["rows"], json!([3]));
    }

    #[test]
    fn oracle_diffs() {
        assert_eq!(go("oracle-diff forest --n 0").0, 0);
        assert_eq!(go("oracle-diff ramanujan_yz --n 5").0, 0);
        assert_eq!(go("oracle-diff sgs_ab --n 5 --via propv").0, 0);
        assert_eq!(go("oracle-diff sgs_ab --n 5 --via ascdes").0, 0);
    }

    #[test]
    fn conjecture_labels() {
        let (code, v) = json_of("conjecture 6.1b --window 4 --r 2");
        assert_eq!(code, 0);
        assert_eq!(v["reports"][0]["label"], "evidence at (N=4, r=2)");
        assert!(!v.to_string().contains("proved"));
    }

    #[test]
    fn output_independent_of_jobs() {
        let a = go("--no-timing --jobs 1 check tp --matrix functional_digraph_psi --prodmat --window 9 --r 4");
        let b = go("--no-timing --jobs 4 check tp --matrix functional_digraph_psi --prodmat --window 9 --r 4");
        assert_eq!(a, b);
        assert_eq!(a.0, 1);
    }
}
