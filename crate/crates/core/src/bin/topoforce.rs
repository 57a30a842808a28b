use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use topoforce::forcing::EvalContext;
use topoforce::formulas::print;
use topoforce::harness::io::{parse_open, read_json, DocError, FormulaDoc, SpaceDoc, TermDoc, UniverseDoc};
use topoforce::harness::{
    brute_force_count, correlation_sweep, enumerate_spaces, example1_regression, run_axiom_suite, space_id, Axiom,
    HarnessError, SuiteOptions, SuiteReport,
};
use topoforce::topology::FiniteSpace;

#[derive(Parser)]
#[command(name = "topoforce", version, about = "Forcing over finite topological spaces")]
struct Cli {
    /// Print JSON documents instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a space document and report its properties.
    Validate { space: PathBuf },
    /// Truth value of a closed formula.
    Tv {
        space: PathBuf,
        formula: PathBuf,
        #[arg(long)]
        universe: Option<PathBuf>,
    },
    /// Literal forcing of a formula by an open, e.g. `r,s` or `{}`.
    Forces {
        space: PathBuf,
        open: String,
        formula: PathBuf,
        #[arg(long)]
        universe: Option<PathBuf>,
    },
    /// Settle a term at a point.
    Settle { space: PathBuf, term: PathBuf, point: String },
    /// Axiom instance suites.
    Axioms {
        space: PathBuf,
        /// Comma-separated axioms; defaults to the seven main axioms.
        #[arg(long, value_delimiter = ',')]
        select: Vec<Axiom>,
        #[arg(long)]
        universe: Option<PathBuf>,
        /// Record per-check wall-clock times.
        #[arg(long)]
        timings: bool,
    },
    /// The Example 1 regression.
    Example1,
    /// All topologies on n points.
    Enumerate { n: usize },
    /// Property/axiom correlation table over all spaces on n points.
    Sweep {
        n: usize,
        #[arg(long)]
        universe: Option<PathBuf>,
    },
}

enum Failure {
    Input(String),
}

impl From<DocError> for Failure {
    fn from(e: DocError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        Failure::Input(e.to_string())
    }
}

fn load_space(path: &PathBuf) -> Result<FiniteSpace, Failure> {
    Ok(read_json::<SpaceDoc>(path)?.to_space()?)
}

fn load_universe(path: &Option<PathBuf>) -> Result<UniverseDoc, Failure> {
    Ok(match path {
        Some(p) => read_json(p)?,
        None => UniverseDoc::default(),
    })
}

fn emit<T: Serialize>(json: bool, doc: &T, text: impl FnOnce() -> String) {
    if json {
        println!("{}", serde_json::to_string_pretty(doc).expect("serializable"));
    } else {
        print!("{}", text());
    }
}

fn report(json: bool, r: &SuiteReport) -> bool {
    emit(json, r, || r.render_text());
    r.passed()
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let json = cli.json;
    match cli.command {
        Command::Validate { space } => {
            let t = load_space(&space)?;
            let lh = t.is_locally_homogeneous().map_err(|e| Failure::Input(e.to_string()))?;
            let doc = json!({
                "space": SpaceDoc::from_space(&t),
                "id": space_id(&t),
                "locally_connected": t.is_locally_connected(),
                "locally_homogeneous": lh,
                "min_nbhds": t.points().map(|p| (t.label(p).to_string(), t.names(t.min_nbhds()[p.index()]))).collect::<Vec<_>>(),
            });
            emit(json, &doc, || {
                let mut out = format!("valid: {}\n", space_id(&t));
                for p in t.points() {
                    out += &format!("  U_{} = {}\n", t.label(p), t.show(t.min_nbhds()[p.index()]));
                }
                out + &format!("locally connected: {}\nlocally homogeneous: {lh}\n", t.is_locally_connected())
            });
            Ok(true)
        }
        Command::Tv { space, formula, universe } => {
            let t = load_space(&space)?;
            let (phi, env) = read_json::<FormulaDoc>(&formula)?.to_formula(&t)?;
            let spec = load_universe(&universe)?.to_spec(&t)?;
            let ctx = EvalContext::new(t.clone(), spec.build(&t));
            let tv = ctx.try_tv(&phi).map_err(|e| Failure::Input(e.to_string()))?;
            let doc = json!({
                "formula": print(&phi, &env),
                "tv": t.names(tv),
                "valid": tv == t.full(),
                "quantifier_touched": phi.has_quantifier(),
                "universe": ctx.universe().id(),
            });
            emit(json, &doc, || format!("tv = {}\n", t.show(tv)));
            Ok(true)
        }
        Command::Forces { space, open, formula, universe } => {
            let t = load_space(&space)?;
            let j = parse_open(&t, &open)?;
            let (phi, env) = read_json::<FormulaDoc>(&formula)?.to_formula(&t)?;
            let spec = load_universe(&universe)?.to_spec(&t)?;
            let ctx = EvalContext::new(t.clone(), spec.build(&t));
            let v = ctx.try_forces(j, &phi).map_err(|e| Failure::Input(e.to_string()))?;
            emit(json, &v, || {
                let rel = if v.quantifier_touched { format!(" (relative to {})", v.relative_to) } else { String::new() };
                format!("{} {} {}{rel}\n", t.show(j), if v.value { "forces" } else { "does not force" }, print(&phi, &env))
            });
            Ok(v.value)
        }
        Command::Settle { space, term, point } => {
            let t = load_space(&space)?;
            let sigma = read_json::<TermDoc>(&term)?.to_term(&t)?;
            let r = t.point(&point).map_err(|e| Failure::Input(e.to_string()))?;
            let settled = sigma.settle(&t, r);
            let value = settled.check(&t).expect("settled terms are ground");
            let doc = json!({ "term": TermDoc::from_term(&t, &settled), "value": value.to_string() });
            emit(json, &doc, || format!("{} ^{point} = {value}\n", sigma.render(&t)));
            Ok(true)
        }
        Command::Axioms { space, select, universe, timings } => {
            let t = load_space(&space)?;
            let spec = load_universe(&universe)?.to_spec(&t)?;
            let selection = if select.is_empty() { Axiom::MAIN.to_vec() } else { select };
            Ok(report(json, &run_axiom_suite(&t, &spec, &selection, &SuiteOptions { timings })))
        }
        Command::Example1 => Ok(report(json, &example1_regression())),
        Command::Enumerate { n } => {
            let spaces = enumerate_spaces(n)?;
            let oracle = brute_force_count(n)?;
            let valid = spaces.iter().all(|s| SpaceDoc::from_space(s).to_space().is_ok_and(|t| &t == s));
            let ok = valid && spaces.len() == oracle;
            let doc = json!({
                "n": n,
                "count": spaces.len(),
                "brute_force_count": oracle,
                "spaces": spaces.iter().map(SpaceDoc::from_space).collect::<Vec<_>>(),
            });
            emit(json, &doc, || {
                let mut out: String = spaces.iter().map(|s| format!("{}\n", space_id(s))).collect();
                out += &format!("{} spaces (brute force: {oracle})\n", spaces.len());
                out
            });
            Ok(ok)
        }
        Command::Sweep { n, universe } => {
            let config = load_universe(&universe)?.config;
            let table = correlation_sweep(n, &config)?;
            emit(json, &table, || table.render_text());
            Ok(table.passed())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
