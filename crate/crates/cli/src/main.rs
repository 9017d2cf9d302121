mod spec;
mod suites;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dimdata::branching::dim_datum_connected;
use dimdata::charlat::Weight;
use dimdata::compare::{classify_report, compare_data, search_almost_equal, Classification, DatumReport};
use dimdata::semidirect::{example_q8, ClassLabel, FiniteSubgroup, SemidirectGroup};
use dimdata::stmeasure::{moment_numeric, moment_points};
use num_complex::Complex64;
use serde::Serialize;

use spec::{load, LoadError, Parsed};

const EXIT_PARSE: u8 = 64;
const EXIT_COMPUTE: u8 = 70;
const DEFAULT_BOUND: i64 = 6;
const DEFAULT_TOLERANCE: f64 = 1e-8;

#[derive(Parser)]
#[command(name = "dimdata", version, about = "Dimension data of subgroups of compact Lie groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Sup-norm bound of the weight box (defaults to the spec value, then 6).
    #[arg(long, global = true)]
    bound: Option<i64>,
    /// Tolerance for floating-point oracles.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension data over the enumerated irreducibles.
    Datum {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Compare two finite subgroups and classify the difference.
    Compare {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        h1: Option<String>,
        #[arg(long)]
        h2: Option<String>,
    },
    /// Bounded search for almost-equal, non-conjugate subgroup pairs.
    Search {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Run verification suites (weyl, branching, mackey, twining, quadrature, all).
    Verify {
        #[arg(default_value = "all")]
        suite: String,
    },
    /// The quaternion example end to end.
    ExampleQ8,
}

enum Failure {
    Parse(String),
    Compute(String),
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        match e {
            LoadError::Parse(m) => Failure::Parse(m),
            LoadError::Compute(e) => Failure::Compute(e.to_string()),
        }
    }
}

impl From<dimdata::Error> for Failure {
    fn from(e: dimdata::Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

struct Output {
    text: String,
    code: u8,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_PARSE } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            // a closed pipe (e.g. `| head`) is not an error
            let _ = std::io::Write::write_all(&mut std::io::stdout().lock(), out.text.as_bytes());
            ExitCode::from(out.code)
        }
        Err(Failure::Parse(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_PARSE)
        }
        Err(Failure::Compute(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_COMPUTE)
        }
    }
}

fn read_spec(path: &PathBuf) -> Result<spec::Loaded, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    Ok(load(&text)?)
}

fn machine(v: &impl Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let tol = |spec_tol: Option<f64>| cli.tolerance.or(spec_tol).unwrap_or(DEFAULT_TOLERANCE);
    let bound = |spec_bound: Option<i64>| cli.bound.or(spec_bound).unwrap_or(DEFAULT_BOUND);
    if let Some(b) = cli.bound {
        if b < 0 {
            return Err(Failure::Parse("--bound must be nonnegative".into()));
        }
    }
    match &cli.command {
        Command::Datum { spec } => {
            let loaded = read_spec(spec)?;
            let (b, t) = (bound(loaded.bound), tol(loaded.tolerance));
            match loaded.parsed {
                Parsed::Connected(c) => datum_connected(&c, b, t, cli.format),
                Parsed::Semidirect(s) => datum_semidirect(&s.group, &s.subgroups, b, t, cli.format),
            }
        }
        Command::Compare { spec, h1, h2 } => {
            let loaded = read_spec(spec)?;
            let b = bound(loaded.bound);
            let Parsed::Semidirect(s) = loaded.parsed else {
                return Err(Failure::Parse("compare needs a semidirect spec".into()));
            };
            let pick = |name: &Option<String>, default: usize| -> Result<&(String, FiniteSubgroup), Failure> {
                match name {
                    Some(n) => s.subgroups.iter().find(|(k, _)| k == n).ok_or_else(|| Failure::Parse(format!("no subgroup named {n:?}"))),
                    None => s.subgroups.get(default).ok_or_else(|| Failure::Parse("compare needs two subgroups".into())),
                }
            };
            let (n1, g1) = pick(h1, 0)?;
            let (n2, g2) = pick(h2, 1)?;
            let r = compare_data(g1, g2, &s.group, b)?;
            let c = classify_report(&r);
            Ok(Output { text: render_compare(&r, &c, n1, n2, cli.format), code: c.certification.exit_code() as u8 })
        }
        Command::Search { spec } => {
            let loaded = read_spec(spec)?;
            let b = bound(loaded.bound);
            let Parsed::Semidirect(s) = loaded.parsed else {
                return Err(Failure::Parse("search needs a semidirect spec".into()));
            };
            let found = search_almost_equal(s.group.n(), &s.pool, b)?;
            let text = match cli.format {
                Format::Machine => machine(&found),
                Format::Table => {
                    let mut t = format!("bound {b}: {} candidate pair(s)\n", found.len());
                    for c in &found {
                        let sup: Vec<String> = c.support.iter().map(|l| l.to_string()).collect();
                        let _ = writeln!(t, "pool {}  |H| = {}  H1 = {:?}  H2 = {:?}  support {{{}}}", c.pool_index, c.h1.len(), c.h1, c.h2, sup.join(", "));
                    }
                    t
                }
            };
            Ok(Output { text, code: 0 })
        }
        Command::Verify { suite } => {
            let names: Vec<&str> = if suite == "all" { suites::SUITES.to_vec() } else { vec![suite.as_str()] };
            let params = suites::Params { seed: cli.seed, bound: cli.bound.unwrap_or(DEFAULT_BOUND), tolerance: tol(None) };
            let mut checks = Vec::new();
            for n in names {
                checks.extend(suites::run_suite(n, &params).ok_or_else(|| Failure::Parse(format!("unknown suite {n:?}")))?);
            }
            let ok = checks.iter().all(|c| c.passed);
            let text = match cli.format {
                Format::Machine => machine(&checks),
                Format::Table => {
                    let mut t = String::new();
                    for c in &checks {
                        let _ = writeln!(t, "{} [{}] {}{}", if c.passed { "PASS" } else { "FAIL" }, c.suite, c.name, if c.detail.is_empty() { String::new() } else { format!(": {}", c.detail) });
                    }
                    let _ = writeln!(t, "{} of {} checks passed", checks.iter().filter(|c| c.passed).count(), checks.len());
                    t
                }
            };
            Ok(Output { text, code: if ok { 0 } else { 1 } })
        }
        Command::ExampleQ8 => example(bound(None), cli.format),
    }
}

#[derive(Serialize)]
struct ConnectedRow {
    weight: Weight,
    dim: u64,
    datum: u64,
    numeric: f64,
    deviation: f64,
}

fn datum_connected(c: &spec::ConnectedGroup, bound: i64, tol: f64, format: Format) -> Result<Output, Failure> {
    let g = &c.g;
    let ss = g.semisimple_rank();
    let side = |k: usize| if k < ss { bound + 1 } else { 2 * bound + 1 };
    let total: i64 = (0..g.rank()).map(side).product();
    let mut rows = Vec::new();
    for mut i in 0..total {
        let mut v = Vec::with_capacity(g.rank());
        for k in 0..g.rank() {
            let s = side(k);
            v.push(if k < ss { i % s } else { i % s - bound });
            i /= s;
        }
        let lam = Weight(v);
        let datum = dim_datum_connected(g, &lam, &c.map, &c.h)?;
        let n = moment_points(g, &lam, &c.map, &c.h)?;
        let m = moment_numeric(g, &lam, &c.map, &c.h, n)?;
        let deviation = (m.value - Complex64::new(datum as f64, 0.0)).norm();
        rows.push(ConnectedRow { weight: lam.clone(), dim: g.weyl_dim(&lam)?, datum, numeric: m.value.re, deviation });
    }
    let bad = rows.iter().filter(|r| r.deviation >= tol).count();
    let text = match format {
        Format::Machine => machine(&serde_json::json!({ "group": g.to_string(), "subgroup": c.subgroup_name, "bound": bound, "rows": rows })),
        Format::Table => {
            let mut t = format!("{} ⊃ {} (bound {bound})\n{:<16} {:>8} {:>8} {:>14}\n", g, c.subgroup_name, "weight", "dim", "datum", "oracle");
            for r in &rows {
                let _ = writeln!(t, "{:<16} {:>8} {:>8} {:>14.9}", r.weight.to_string(), r.dim, r.datum, r.numeric);
            }
            t
        }
    };
    if bad > 0 {
        return Err(Failure::Compute(format!("{bad} row(s) disagree with the quadrature oracle beyond {tol}")));
    }
    Ok(Output { text, code: 0 })
}

#[derive(Serialize)]
struct FiniteRow {
    subgroup: String,
    label: String,
    dim: u64,
    datum: u64,
}

fn datum_semidirect(g: &SemidirectGroup, subs: &[(String, FiniteSubgroup)], bound: i64, tol: f64, format: Format) -> Result<Output, Failure> {
    let irreps = g.enumerate_irreps(bound)?;
    let mut rows = Vec::new();
    for (name, h) in subs {
        for irr in &irreps {
            let datum = g.dim_datum_finite(h, irr)?;
            let mut mean = Complex64::new(0.0, 0.0);
            for x in h.elements() {
                mean += g.induced_char(irr, x)?.to_complex();
            }
            mean /= h.order() as f64;
            if (mean - Complex64::new(datum as f64, 0.0)).norm() >= tol.max(1e-9 * irr.dim() as f64) {
                return Err(Failure::Compute(format!("{name} {}: exact {datum}, oracle {mean}", irr.label())));
            }
            rows.push(FiniteRow { subgroup: name.clone(), label: irr.label().to_string(), dim: irr.dim(), datum });
        }
    }
    let text = match format {
        Format::Machine => machine(&serde_json::json!({ "bound": bound, "rows": rows })),
        Format::Table => {
            let mut t = format!("{:<10} {:<24} {:>6} {:>6}\n", "subgroup", "irrep", "dim", "datum");
            for r in &rows {
                let _ = writeln!(t, "{:<10} {:<24} {:>6} {:>6}", r.subgroup, r.label, r.dim, r.datum);
            }
            t
        }
    };
    Ok(Output { text, code: 0 })
}

fn render_compare(r: &DatumReport, c: &Classification, n1: &str, n2: &str, format: Format) -> String {
    match format {
        Format::Machine => machine(&serde_json::json!({ "h1": n1, "h2": n2, "report": r, "classification": c })),
        Format::Table => {
            let mut t = format!("{:<24} {:>6} {:>6} {:>6} {:>4}\n", "irrep", "dim", n1, n2, "a");
            for row in r.rows.iter().filter(|row| row.d1 != row.d2) {
                let _ = writeln!(t, "{:<24} {:>6} {:>6} {:>6} {:>4}", row.label.to_string(), row.dim, row.d1, row.d2, row.coefficient());
            }
            let _ = writeln!(t, "{} irreps with sup-norm ≤ {}; exceptional support size {}", r.rows.len(), r.bound, r.support.len());
            for check in &c.checks {
                let _ = writeln!(t, "{} {}: {}", if check.passed { "PASS" } else { "FAIL" }, check.name, check.detail);
            }
            let _ = writeln!(t, "certification: {}", c.certification.name());
            let _ = writeln!(t, "upgrade: {} ({})", if c.upgraded { "yes" } else { "no" }, c.upgrade_reason);
            t
        }
    }
}

fn example(bound: i64, format: Format) -> Result<Output, Failure> {
    let (g, h1, h2) = example_q8()?;
    let r = compare_data(&h1, &h2, &g, bound)?;
    let c = classify_report(&r);
    let s1 = g.sato_tate_support(&h1)?;
    let s2 = g.sato_tate_support(&h2)?;
    let labels = |s: &std::collections::BTreeSet<ClassLabel>| s.iter().map(|l| l.to_string()).collect::<Vec<_>>();
    let in_pullbacks = r.support.iter().all(|l| l.weight.is_zero());
    let text = match format {
        Format::Machine => machine(&serde_json::json!({
            "gamma_order": g.gamma().order(),
            "no_eigenvalue_one": dimdata::finquot::no_eigenvalue_one(g.gamma()),
            "report": r,
            "classification": c,
            "support_in_pullbacks": in_pullbacks,
            "sato_tate_h1": labels(&s1),
            "sato_tate_h2": labels(&s2),
        })),
        Format::Table => {
            let mut t = format!(
                "Γ = ⟨diag(J1,-J1), J2⟩ of order {}; no eigenvalue 1: {}\n",
                g.gamma().order(),
                dimdata::finquot::no_eigenvalue_one(g.gamma())
            );
            t += &render_compare(&r, &c, "H1", "H2", Format::Table);
            let _ = writeln!(t, "support contained in Γ-pullbacks: {in_pullbacks}");
            let _ = writeln!(t, "Sato-Tate support H1: {{{}}}", labels(&s1).join(", "));
            let _ = writeln!(t, "Sato-Tate support H2: {{{}}}", labels(&s2).join(", "));
            for l in s1.union(&s2) {
                if let ClassLabel::Component(k) = l {
                    let rep = g.gamma().element(g.gamma().classes()[*k][0]);
                    let _ = writeln!(t, "  {l}: class of {rep:?}, size {}", g.gamma().classes()[*k].len());
                }
            }
            t
        }
    };
    let code = if in_pullbacks && s1 != s2 { c.certification.exit_code() as u8 } else { 1 };
    Ok(Output { text, code })
}
