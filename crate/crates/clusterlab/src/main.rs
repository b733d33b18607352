//! `clusterlab`: build quivers, drive mutation schedules and run the
//! verification suite from the command line.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use clusterlab::case::{CaseId, FamilyName, QuiverName};
use clusterlab::checks::{self, Tolerances};
use clusterlab::orbits::{orbit_lines, RootType, SigmaKind};
use clusterlab::io::to_json;
use clusterlab::report::{all_passed, write_jsonl, Status};
use clusterlab::suite::{run_suite, SuiteConfig, THREADS_ENV};
use clusterlab_core::builders::build;
use clusterlab_core::mutclass::{search_equivalence, SearchConfig, SearchOutcome};
use clusterlab_core::schedule::Schedule;
use clusterlab_core::tropical::{count_in, run_tropical};
use serde_json::json;

#[derive(Parser)]
#[command(name = "clusterlab", version, about = "Periodicity, sign and dilogarithm checks for level-restricted T/Y-systems")]
struct Cli {
    /// Worker threads for the suite (defaults to all cores).
    #[arg(long, global = true, env = THREADS_ENV)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone, Copy)]
struct CaseArgs {
    #[arg(long)]
    family: FamilyName,
    /// Rank (C only; fixed for F4 and G2).
    #[arg(long, default_value_t = 0)]
    rank: usize,
    #[arg(long)]
    level: usize,
}

impl CaseArgs {
    fn case(&self) -> CaseId {
        CaseId::new(self.family, self.rank, self.level)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build a family quiver and write it as JSON.
    Build {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the composite mutation steps for `from <= u < to`.
    Schedule {
        #[command(flatten)]
        case: CaseArgs,
        /// Start time (integer or fraction `p/q`).
        #[arg(long, default_value = "0")]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Tropical exponent vectors at every mutation point of a full period.
    Tropical {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Numeric T/Y residuals and periodicity errors.
    Numeric {
        #[command(flatten)]
        case: CaseArgs,
        /// Number of random initial data (seeds 1..=N).
        #[arg(long, default_value_t = 5)]
        seeds: u64,
        /// Tolerance for the periodicity errors.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// σ-orbits of the positive roots.
    Orbits {
        #[arg(long = "type", value_enum, ignore_case = true)]
        root_type: RootType,
        #[arg(long)]
        rank: usize,
        #[arg(long, value_enum, ignore_case = true)]
        sigma: SigmaKind,
    },
    /// Constant (or functional) dilogarithm identity.
    Dilog {
        #[command(flatten)]
        case: CaseArgs,
        #[arg(long)]
        functional: bool,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Search for a mutation path between two quivers `X:rank:level`.
    Mutclass {
        #[arg(long)]
        left: QuiverName,
        #[arg(long)]
        right: QuiverName,
        #[arg(long, default_value_t = 12)]
        depth: usize,
        #[arg(long, default_value_t = 1_000_000)]
        node_cap: usize,
    },
    /// Run the verification suite and write JSON Lines.
    Suite {
        /// JSON configuration (defaults when omitted).
        #[arg(long)]
        config: Option<PathBuf>,
        /// Report file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_time(s: &str, den: i64) -> Result<i64> {
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim().parse::<i64>()?, q.trim().parse::<i64>()?),
        None => (s.trim().parse::<i64>()?, 1),
    };
    if q <= 0 || (p * den) % q != 0 {
        bail!("time {s} is not a multiple of 1/{den}");
    }
    Ok(p * den / q)
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("value serialises")
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Build { case, out } => {
            let spec = case.case().spec()?;
            emit(out.as_ref(), &to_json(&build(&spec)))?;
        }
        Command::Schedule { case, from, to } => {
            let spec = case.case().spec()?;
            let sched = Schedule::new(spec);
            let den = spec.t() as i64;
            let (from, to) = (parse_time(&from, den)?, parse_time(&to, den)?);
            let meta = sched.base().meta().to_vec();
            let steps: Vec<_> = sched
                .steps(from, to)?
                .into_iter()
                .map(|s| {
                    json!({
                        "u_from": format!("{}/{den}", s.u_from),
                        "u_to": format!("{}/{den}", s.u_to),
                        "vertices": s.vertex_set.iter().map(|&v| json!({"index": v, "col": meta[v].col, "row": meta[v].row})).collect::<Vec<_>>(),
                        "relabelling": s.expected_transform.perm.images(),
                        "opposite": s.expected_transform.opposite,
                    })
                })
                .collect();
            println!("{}", pretty(&json!({ "case": case.case().to_string(), "den": den, "steps": steps })));
        }
        Command::Tropical { case, report } => {
            let spec = case.case().spec()?;
            let full = 2 * spec.half_period_steps();
            let run = run_tropical(&spec, 0, full)?;
            let meta = build(&spec).meta().to_vec();
            let counts = count_in(&run, 0, full);
            let points: Vec<_> = run
                .p_plus_points(0, full)
                .into_iter()
                .map(|(v, u, m)| {
                    json!({"vertex": v, "col": meta[v].col, "row": meta[v].row, "u_num": u, "exps": m.exps, "sign": format!("{:?}", m.sign()).to_lowercase()})
                })
                .collect();
            let (ep, en) = spec.sign_count_formula();
            let doc = json!({
                "case": case.case().to_string(),
                "den": spec.t(),
                "points": points,
                "tally": {"positive": counts.positive, "negative": counts.negative, "unit": counts.unit, "mixed": counts.mixed},
                "expected": {"positive": ep, "negative": en},
            });
            match report {
                Some(path) => {
                    emit(Some(&path), &pretty(&doc))?;
                    println!("N+ = {} N- = {} (expected {ep}, {en})", counts.positive, counts.negative);
                }
                None => println!("{}", pretty(&doc)),
            }
            return Ok((counts.positive, counts.negative) == (ep, en));
        }
        Command::Numeric { case, seeds, tol } => {
            let seeds: Vec<u64> = (1..=seeds).collect();
            let tolerances = Tolerances { periodicity: tol, ..Tolerances::default() };
            let row = checks::numeric(&case.case(), &seeds, &tolerances);
            println!("{}", pretty(&serde_json::to_value(&row)?));
            return Ok(row.status == Status::Pass);
        }
        Command::Orbits { root_type, rank, sigma } => {
            for line in orbit_lines(root_type, rank, sigma)? {
                println!("{line}");
            }
        }
        Command::Dilog { case, functional, seed } => {
            let tol = Tolerances::default();
            let row = if functional {
                checks::functional_di(&case.case(), &[seed], &tol)
            } else {
                checks::constant_di(&case.case(), &tol)
            };
            let m = &row.metrics;
            if functional {
                println!(
                    "sum L(Y/(1+Y)) = {} (N- = {}), sum L(1/(1+Y)) = {} (N+ = {}), abs err = {:e}",
                    m["sum_y"], m["n_minus"], m["sum_one"], m["n_plus"], m["abs_err"].as_f64().unwrap_or(f64::NAN)
                );
            } else {
                println!("LHS = {} RHS = {} abs err = {:e}", m["lhs"], m["rhs"], m["abs_err"].as_f64().unwrap_or(f64::NAN));
            }
            return Ok(row.status == Status::Pass);
        }
        Command::Mutclass { left, right, depth, node_cap } => {
            let (l, r) = (left.spec.build()?, right.spec.build()?);
            match search_equivalence(&l, &r, SearchConfig { depth_cap: depth, node_cap })? {
                SearchOutcome::Found(path) => {
                    let verified = path.verify(&r)?;
                    let meta = l.meta();
                    let moves: Vec<_> = path.moves.iter().map(|&v| json!({"index": v, "col": meta[v].col, "row": meta[v].row})).collect();
                    println!(
                        "{}",
                        pretty(&json!({"left": left.text, "right": right.text, "moves": moves, "isomorphism": path.isomorphism.images(), "verified": verified}))
                    );
                    return Ok(verified);
                }
                SearchOutcome::Exhausted { depth_left, depth_right, nodes_left, nodes_right } => {
                    println!(
                        "{}",
                        pretty(&json!({"left": left.text, "right": right.text, "status": "inconclusive", "depth_left": depth_left, "depth_right": depth_right, "nodes_left": nodes_left, "nodes_right": nodes_right}))
                    );
                    return Ok(false);
                }
            }
        }
        Command::Suite { config, out } => {
            let config = match config {
                Some(path) => SuiteConfig::from_json(&fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?)?,
                None => SuiteConfig::default(),
            };
            let rows = run_suite(&config);
            match out {
                Some(path) => write_jsonl(io::BufWriter::new(fs::File::create(&path)?), &rows)?,
                None => write_jsonl(io::stdout().lock(), &rows)?,
            }
            let failed = rows.iter().filter(|r| r.status != Status::Pass).count();
            writeln!(io::stderr(), "{} rows, {} not passing", rows.len(), failed)?;
            return Ok(all_passed(&rows));
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        std::env::set_var(THREADS_ENV, n.to_string());
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
