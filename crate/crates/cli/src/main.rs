//! `loopforge`: command-line front end.
//!
//! Exit status: 0 on success, 1 when a checked property fails, 2 on input
//! errors (bad flags, unreadable or malformed tables, bad terms).

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;

use loopforge::graded::checks::{graded_report, CheckOptions};
use loopforge::graded::graded_group;
use loopforge::higman::higman_witness;
use loopforge::series::{compare_series, filtration, SeriesReport};
use loopforge::term::eval_term;
use loopforge::{catalog, catalog_entries, enumerate_alphas, CayleyLoop, SeriesKind, SeriesOptions, Term};

#[derive(Parser)]
#[command(name = "loopforge", version, about = "Exact computation in finite and free loops")]
struct Cli {
    /// Also write the report as JSON to PATH.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,

    /// Largest number of evaluations one generator family may enumerate
    /// exhaustively; larger families are sampled.
    #[arg(long, global = true, value_name = "N")]
    max_evals: Option<u64>,

    /// Seed for sampled enumerations.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scan a table for the loop axioms and related identities.
    Check {
        /// Table file (JSON or text), or `catalog:NAME`.
        file: String,
    },
    /// Compute a filtration.
    Series {
        #[arg(long, value_parser = parse_kind)]
        kind: SeriesKind,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        depth: u64,
        file: String,
    },
    /// Compute all three filtrations side by side.
    Compare {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        depth: u64,
        file: String,
    },
    /// The graded group of the commutator-associator filtration, with
    /// multilinearity and Akivis checks.
    Graded {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        depth: u64,
        /// Degrees of the Akivis triple.
        #[arg(long, value_parser = parse_triple, value_name = "P,Q,R")]
        akivis: Option<(usize, usize, usize)>,
        /// Filtration to grade.
        #[arg(long, value_parser = parse_kind, default_value = "ca")]
        kind: SeriesKind,
        file: String,
    },
    /// Evaluate a term in a finite loop.
    Eval {
        #[arg(long)]
        table: String,
        /// Generator bindings, e.g. `a=i,b=j`.
        #[arg(long, value_delimiter = ',')]
        bind: Vec<String>,
        term: String,
    },
    /// Alpha sequences of the deviations of one level.
    Deviation {
        #[arg(long)]
        level: usize,
        #[arg(long, conflicts_with = "list")]
        count: bool,
        #[arg(long)]
        list: bool,
    },
    /// Evaluate δ(y^m, y, ..., y) with all alphas 1 in the extension loop.
    HigmanWitness {
        #[arg(short, value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
        #[arg(short)]
        n: u64,
    },
    /// Built-in example loops.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List,
    /// Print a catalog loop as a JSON table.
    Emit { name: String },
}

fn parse_kind(s: &str) -> Result<SeriesKind, String> {
    s.parse()
}

fn parse_triple(s: &str) -> Result<(usize, usize, usize), String> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|e| format!("`{p}`: {e}")))
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [p, q, r] if p > 0 && q > 0 && r > 0 => Ok((p, q, r)),
        _ => Err("expected three positive degrees p,q,r".into()),
    }
}

/// Loads `catalog:NAME` or a table file; unnamed tables take the file stem.
fn load_loop(spec: &str) -> Result<CayleyLoop> {
    if let Some(name) = spec.strip_prefix("catalog:") {
        return Ok(catalog(name)?);
    }
    let path = Path::new(spec);
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {spec}"))?;
    let lp = CayleyLoop::load(&text).with_context(|| format!("invalid table in {spec}"))?;
    if lp.name().is_empty() {
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("L").to_owned();
        return Ok(lp.with_name(stem));
    }
    Ok(lp)
}

fn write_json<T: Serialize>(path: Option<&Path>, value: &T) -> Result<()> {
    if let Some(path) = path {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct EvalReport<'a> {
    #[serde(rename = "loop")]
    loop_name: &'a str,
    term: String,
    bindings: &'a HashMap<String, String>,
    value: &'a str,
}

#[derive(Serialize)]
struct DeviationReport {
    level: usize,
    count: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    alphas: Option<Vec<Vec<u32>>>,
}

/// `(n+2)!/2`, as a decimal string since it overflows quickly.
fn alpha_count_string(level: usize) -> String {
    let mut acc = num_bigint::BigUint::from(1u32);
    for k in 3..=level + 2 {
        acc *= k;
    }
    acc.to_string()
}

/// Ok(true) on success, Ok(false) when a checked property failed.
fn run(cli: Cli) -> Result<bool> {
    let mut opts = SeriesOptions::default();
    if let Some(m) = cli.max_evals {
        opts.max_evals = m;
    }
    if let Some(s) = cli.seed {
        opts.seed = s;
    }
    let json = cli.json.as_deref();

    match cli.command {
        Command::Check { file } => {
            let lp = load_loop(&file)?;
            let flags = lp.check_axioms();
            println!("{} (order {})", lp.name(), lp.order());
            println!("  quasigroup:  {}", flags.quasigroup);
            println!("  identity:    {}", flags.identity);
            println!("  associative: {}", flags.associative);
            println!("  commutative: {}", flags.commutative);
            println!("  Moufang:     {}", flags.moufang);
            write_json(json, &flags)?;
            Ok(true)
        }
        Command::Series { kind, depth, file } => {
            let lp = load_loop(&file)?;
            let f = filtration(&lp, kind, depth as usize, &opts);
            let report = SeriesReport::new(&f);
            print!("{report}");
            write_json(json, &report)?;
            Ok(f.is_descending())
        }
        Command::Compare { depth, file } => {
            let lp = load_loop(&file)?;
            let report = compare_series(&lp, depth as usize, &opts);
            print!("{report}");
            write_json(json, &report)?;
            let fl = &report.flags;
            Ok(fl.gamma2_eq_ca2 && (fl.containments_ok || fl.lower_bound))
        }
        Command::Graded {
            depth,
            akivis,
            kind,
            file,
        } => {
            let lp = load_loop(&file)?;
            let f = filtration(&lp, kind, depth as usize, &opts);
            let g = graded_group(&f)?;
            let mut check = CheckOptions::default();
            if let Some(m) = cli.max_evals {
                check.budget = m;
            }
            if let Some(s) = cli.seed {
                check.seed = s;
            }
            let report = graded_report(&g, akivis, &check);
            print!("{report}");
            write_json(json, &report)?;
            Ok(report.passed())
        }
        Command::Eval { table, bind, term } => {
            let lp = load_loop(&table)?;
            let t: Term = term.parse().map_err(|e| anyhow!("cannot parse term: {e}"))?;
            let mut names = HashMap::new();
            let mut env = HashMap::new();
            for b in &bind {
                let (var, elem) = b
                    .split_once('=')
                    .ok_or_else(|| anyhow!("binding `{b}` is not of the form name=element"))?;
                env.insert(var.to_owned(), lp.element_by_name(elem)?);
                names.insert(var.to_owned(), elem.to_owned());
            }
            let v = eval_term(&t, &env, &lp)?;
            let value = lp.element_name(v);
            println!("{t} = {value}");
            write_json(
                json,
                &EvalReport {
                    loop_name: lp.name(),
                    term: t.to_string(),
                    bindings: &names,
                    value,
                },
            )?;
            Ok(true)
        }
        Command::Deviation { level, list, .. } => {
            let total = alpha_count_string(level);
            let alphas = if list {
                if level > 8 {
                    bail!("--list is limited to level 8 ({total} sequences at level {level})");
                }
                let seqs = enumerate_alphas(level);
                for a in &seqs {
                    println!("{a}");
                }
                Some(seqs.iter().map(|a| a.as_slice().to_vec()).collect())
            } else {
                // --count is the default
                println!("{total}");
                None
            };
            write_json(
                json,
                &DeviationReport {
                    level,
                    count: total,
                    alphas,
                },
            )?;
            Ok(true)
        }
        Command::HigmanWitness { m, n } => {
            let report = higman_witness(m, n)?;
            print!("{report}");
            write_json(json, &report)?;
            Ok(report.nonzero)
        }
        Command::Catalog { action } => match action {
            CatalogAction::List => {
                let mut rows = Vec::new();
                for e in catalog_entries() {
                    let f = e.flags;
                    println!(
                        "{:<8} {:>3}  assoc={:<5} comm={:<5} moufang={:<5}  {}",
                        e.name, e.order, f.associative, f.commutative, f.moufang, e.recipe
                    );
                    rows.push(serde_json::json!({
                        "name": e.name,
                        "order": e.order,
                        "recipe": e.recipe,
                        "flags": f,
                    }));
                }
                write_json(json, &rows)?;
                Ok(true)
            }
            CatalogAction::Emit { name } => {
                let lp = catalog(&name)?;
                println!("{}", lp.to_json());
                Ok(true)
            }
        },
    }
}

fn init_threads() -> Result<()> {
    if let Ok(v) = std::env::var("LOOPFORGE_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| anyhow!("LOOPFORGE_THREADS must be a positive integer, got `{v}`"))?;
        if n == 0 {
            bail!("LOOPFORGE_THREADS must be a positive integer, got `{v}`");
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match init_threads().and_then(|()| run(cli)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
