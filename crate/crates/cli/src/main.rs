//! Command-line front end: load or build matroids, construct Albanese
//! graphs, run the solvers, and reproduce the bundled reference
//! computations with machine-readable reports.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use matroidal::albanese::{self, AlbParams, DEFAULT_MAX_EDGES};
use matroidal::matroid::{self, Matroid, MinorOp, MinorTrace};
use matroidal::solver;

#[derive(Parser)]
#[command(
    name = "matroidal",
    version,
    about = "Regular matroids, Albanese graphs, and solution spaces over prime fields"
)]
struct Cli {
    /// Output format for the run report
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Cap on worker threads for prime sweeps
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect matroids and their minors
    Matroid {
        #[command(subcommand)]
        cmd: MatroidCmd,
    },
    /// Albanese graph constructions
    Albanese {
        #[command(subcommand)]
        cmd: AlbaneseCmd,
    },
    /// Solve the solution system at a prime
    Solve {
        matroid: String,
        #[arg(long)]
        ell: u32,
        /// Use the reduced graph (level (2,1) only)
        #[arg(long)]
        reduced: bool,
    },
    /// Decide membership at a prime (reduced graph used at 2)
    Membership {
        matroid: String,
        #[arg(long)]
        ell: u32,
    },
    /// Radical distance: least common multiple of the failing primes
    Distance { matroid: String },
    /// Quadratic splitting workflows
    Split {
        #[command(subcommand)]
        cmd: SplitCmd,
    },
    /// Carry a solution from level (l^r, l^j) down to (l^(r-j), 1)
    Reduce {
        solution: PathBuf,
        #[arg(long)]
        matroid: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Re-run the bundled reference computations and compare them with
    /// their expected values
    VerifyPaper,
}

#[derive(Subcommand)]
enum MatroidCmd {
    /// Rank, size, looplessness, and certification data
    Info { matroid: String },
    /// Excluded-minor test with a witness trace
    IsCographic { matroid: String },
    /// Apply deletions/contractions; optionally transport a solution
    Minor {
        matroid: String,
        /// Ground labels to delete, comma separated
        #[arg(long, value_delimiter = ',')]
        delete: Vec<String>,
        /// Ground labels to contract, comma separated
        #[arg(long, value_delimiter = ',')]
        contract: Vec<String>,
        /// Solution file to transport along a single operation
        #[arg(long)]
        solution: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum AlbaneseCmd {
    /// Build the colored graph at level (l^r, l^j)
    Build {
        matroid: String,
        #[arg(long)]
        ell: u32,
        #[arg(long)]
        r: u32,
        #[arg(long, default_value_t = 0)]
        j: u32,
        /// Identify opposite parallel edge pairs (level (2,1) only)
        #[arg(long)]
        reduced: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Vertex representative / lattice sidecar file
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum SplitCmd {
    /// Check a splitting witness and report each condition
    Verify { witness: PathBuf },
    /// Run a verified witness through to an indivisible solution
    ToSolution {
        witness: PathBuf,
        #[arg(long)]
        r: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// 0 = success / affirmative, 2 = negative mathematical result,
/// 1 = error.
const EXIT_NEGATIVE: i32 = 2;

fn main() {
    let cli = Cli::parse();
    let started = Instant::now();
    let echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    match run(&cli) {
        Ok(outcome) => {
            let report = serde_json::json!({
                "command": echo,
                "inputs": outcome.inputs,
                "result": outcome.result,
                "duration_ms": started.elapsed().as_secs_f64() * 1e3,
                "version": env!("CARGO_PKG_VERSION"),
            });
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report).unwrap()),
                Format::Text => {
                    println!("{echo}");
                    print_text(&outcome.result, 0);
                    println!("({:.1} ms)", started.elapsed().as_secs_f64() * 1e3);
                }
            }
            std::process::exit(outcome.exit);
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
}

struct Outcome {
    result: serde_json::Value,
    inputs: serde_json::Value,
    exit: i32,
}

impl Outcome {
    fn ok(result: serde_json::Value, inputs: serde_json::Value) -> Self {
        Outcome {
            result,
            inputs,
            exit: 0,
        }
    }
}

type CliError = Box<dyn std::error::Error>;

fn max_edges() -> u64 {
    std::env::var("TOOLKIT_MAX_EDGES")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_EDGES)
}

fn fnv1a(bytes: &[u8]) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("fnv1a:{h:016x}")
}

/// A matroid argument: a catalog name or a path to a matroid JSON file.
fn load_matroid(arg: &str) -> Result<(Matroid, serde_json::Value), CliError> {
    let path = PathBuf::from(arg);
    if path.exists() {
        let bytes = std::fs::read(&path)?;
        let v: serde_json::Value = serde_json::from_slice(&bytes)?;
        let m = Matroid::from_json(&v)?;
        Ok((m, serde_json::json!({ "matroid": fnv1a(&bytes) })))
    } else {
        let m = matroid::catalog(arg)?;
        Ok((
            m,
            serde_json::json!({ "matroid": format!("builtin:{}", arg.to_ascii_uppercase()) }),
        ))
    }
}

fn read_json(path: &PathBuf) -> Result<(serde_json::Value, String), CliError> {
    let bytes = std::fs::read(path)?;
    Ok((serde_json::from_slice(&bytes)?, fnv1a(&bytes)))
}

fn write_json(path: &PathBuf, v: &serde_json::Value) -> Result<(), CliError> {
    let mut f = std::fs::File::create(path)?;
    writeln!(f, "{}", serde_json::to_string_pretty(v)?)?;
    Ok(())
}

fn threads(cli: &Cli) -> usize {
    cli.threads.unwrap_or_else(|| {
        std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)
    })
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Matroid { cmd } => run_matroid(cmd),
        Command::Albanese { cmd } => run_albanese(cmd),
        Command::Solve {
            matroid,
            ell,
            reduced,
        } => run_solve(matroid, *ell, *reduced),
        Command::Membership { matroid, ell } => {
            let (m, inputs) = load_matroid(matroid)?;
            let rep = solver::membership(&m, *ell, max_edges())?;
            let result = serde_json::json!({
                "matroid": m.name(),
                "ell": ell,
                "member": rep.member,
                "solution_dim": rep.solution_dim,
                "witness": rep.witness.as_ref().map(|w| w.to_json(m.ground())),
            });
            Ok(Outcome {
                exit: if rep.member { 0 } else { EXIT_NEGATIVE },
                result,
                inputs,
            })
        }
        Command::Distance { matroid } => {
            let (m, inputs) = load_matroid(matroid)?;
            let rep = solver::radical_distance(&m, max_edges(), threads(cli))?;
            Ok(Outcome::ok(
                serde_json::json!({
                    "matroid": m.name(),
                    "distance": rep.distance,
                    "memberships": rep.memberships,
                }),
                inputs,
            ))
        }
        Command::Split { cmd } => run_split(cmd),
        Command::Reduce {
            solution,
            matroid,
            output,
        } => {
            let (m, mut inputs) = load_matroid(matroid)?;
            let (sol_json, hash) = read_json(solution)?;
            inputs["solution"] = serde_json::json!(hash);
            let sol = solver::Solution::from_json(&sol_json, &m)?;
            let red = solver::reduce_solution(&m, &sol, max_edges())?;
            let out_json = red.solution.to_json(m.ground());
            if let Some(path) = output {
                write_json(path, &out_json)?;
            }
            Ok(Outcome::ok(
                serde_json::json!({
                    "input_params": { "ell": sol.params.ell, "r": sol.params.r, "j": sol.params.j },
                    "preserved_profiles": red.preserved_profiles,
                    "solution": out_json,
                    "indivisibility_index": red.solution.indivisibility_index(),
                }),
                inputs,
            ))
        }
        Command::VerifyPaper => run_verify_paper(),
    }
}

fn run_matroid(cmd: &MatroidCmd) -> Result<Outcome, CliError> {
    match cmd {
        MatroidCmd::Info { matroid } => {
            let (m, inputs) = load_matroid(matroid)?;
            let result = serde_json::json!({
                "name": m.name(),
                "rank": m.rank(),
                "n": m.size(),
                "ground": m.ground(),
                "loopless": m.is_loopless(),
                "loops": m.loops(),
                "tu_certified": true,
                "basis_count": m.bases()?.len(),
            });
            Ok(Outcome::ok(result, inputs))
        }
        MatroidCmd::IsCographic { matroid } => {
            let (m, inputs) = load_matroid(matroid)?;
            let (ok, witness) = matroid::is_cographic(&m)?;
            let result = serde_json::json!({
                "name": m.name(),
                "cographic": ok,
                "witness": witness,
            });
            Ok(Outcome {
                exit: if ok { 0 } else { EXIT_NEGATIVE },
                result,
                inputs,
            })
        }
        MatroidCmd::Minor {
            matroid,
            delete,
            contract,
            solution,
            output,
        } => {
            let (m, mut inputs) = load_matroid(matroid)?;
            let mut trace = MinorTrace::default();
            for l in delete {
                trace.ops.push(MinorOp::Delete(l.clone()));
            }
            for l in contract {
                trace.ops.push(MinorOp::Contract(l.clone()));
            }
            if let Some(sol_path) = solution {
                if trace.ops.len() != 1 {
                    return Err("solution transport takes exactly one operation".into());
                }
                let (sol_json, hash) = read_json(sol_path)?;
                inputs["solution"] = serde_json::json!(hash);
                let sol = solver::Solution::from_json(&sol_json, &m)?;
                let (minor, pushed) =
                    solver::minor_pushforward(&m, &sol, &trace.ops[0], max_edges())?;
                let out = serde_json::json!({
                    "minor": minor.to_json(),
                    "solution": pushed.to_json(minor.ground()),
                    "indivisibility_index": pushed.indivisibility_index(),
                });
                if let Some(path) = output {
                    write_json(path, &out)?;
                }
                return Ok(Outcome::ok(out, inputs));
            }
            let minor = m.apply_trace(&trace)?;
            let out = minor.to_json();
            if let Some(path) = output {
                write_json(path, &out)?;
            }
            Ok(Outcome::ok(
                serde_json::json!({
                    "minor": out,
                    "rank": minor.rank(),
                    "n": minor.size(),
                }),
                inputs,
            ))
        }
    }
}

fn run_albanese(cmd: &AlbaneseCmd) -> Result<Outcome, CliError> {
    let AlbaneseCmd::Build {
        matroid,
        ell,
        r,
        j,
        reduced,
        output,
        sidecar,
    } = cmd;
    let (m, inputs) = load_matroid(matroid)?;
    let alb = albanese::build_with_limit(&m, AlbParams::new(*ell, *r, *j), max_edges())?;
    let loops = alb.loop_edges().len();
    let (graph_json, vertices, edges) = if *reduced {
        let red = albanese::reduce_2_1(&alb)?;
        let g = red.graph;
        let counts = (g.num_vertices(), g.num_edges());
        (g.to_json(), counts.0, counts.1)
    } else {
        (alb.graph.to_json(), alb.vertex_count(), alb.edge_count())
    };
    if let Some(path) = output {
        write_json(path, &graph_json)?;
    }
    if let Some(path) = sidecar {
        write_json(path, &alb.sidecar_json())?;
    }
    let result = serde_json::json!({
        "matroid": m.name(),
        "params": { "ell": ell, "r": r, "j": j, "reduced": reduced },
        "vertices": vertices,
        "edges": edges,
        "loops": loops,
        "graph": if output.is_none() { Some(graph_json) } else { None },
    });
    Ok(Outcome::ok(result, inputs))
}

fn run_solve(matroid: &str, ell: u32, reduced: bool) -> Result<Outcome, CliError> {
    let (m, inputs) = load_matroid(matroid)?;
    if reduced && ell != 2 {
        return Err("the reduced graph exists at ell = 2 only".into());
    }
    let alb = albanese::build_with_limit(&m, AlbParams::new(ell, 1, 0), max_edges())?;
    let host = if reduced {
        albanese::reduce_2_1(&alb)?.graph
    } else {
        alb.graph
    };
    let sys = solver::assemble(&m, &host, ell)?;
    let rep = solver::exists_indivisible(&sys)?;
    let witness = rep.witness_chains.as_ref().map(|chains| {
        let sol = solver::Solution {
            matroid_name: m.name().to_string(),
            params: AlbParams::new(ell, 1, 0),
            reduced,
            chains: chains.clone(),
            profiles: rep.witness_profile.clone().expect("witness profile"),
        };
        sol.to_json(m.ground())
    });
    let result = serde_json::json!({
        "matroid": m.name(),
        "ell": ell,
        "reduced": reduced,
        "unknowns": sys.cond.nrows(),
        "conditions": sys.cond.ncols(),
        "augmented_columns": sys.cond.ncols() + sys.profile.ncols(),
        "solution_dim": rep.solution_dim,
        "augmented_rank_equal": rep.aug_rank == rep.cond_rank,
        "indivisible_exists": rep.exists,
        "witness": witness,
    });
    Ok(Outcome::ok(result, inputs))
}

fn run_split(cmd: &SplitCmd) -> Result<Outcome, CliError> {
    match cmd {
        SplitCmd::Verify { witness } => {
            let (v, hash) = read_json(witness)?;
            let w = solver::SplittingWitness::from_json(&v)?;
            let report = solver::verify_splitting(&w)?;
            let passed = report.passed();
            Ok(Outcome {
                exit: if passed { 0 } else { EXIT_NEGATIVE },
                result: report.to_json(),
                inputs: serde_json::json!({ "witness": hash }),
            })
        }
        SplitCmd::ToSolution { witness, r, output } => {
            let (v, hash) = read_json(witness)?;
            let w = solver::SplittingWitness::from_json(&v)?;
            let out = solver::splitting_to_solution(&w, *r, max_edges())?;
            let sol_json = out.solution.to_json(w.matroid.ground());
            if let Some(path) = output {
                write_json(path, &sol_json)?;
            }
            Ok(Outcome::ok(
                serde_json::json!({
                    "level_valuation": out.j,
                    "params": {
                        "ell": out.solution.params.ell,
                        "r": out.solution.params.r,
                        "j": out.solution.params.j,
                    },
                    "indivisibility_index": out.solution.indivisibility_index(),
                    "solution": sol_json,
                }),
                serde_json::json!({ "witness": hash }),
            ))
        }
    }
}

fn run_verify_paper() -> Result<Outcome, CliError> {
    let mut all_ok = true;
    let mut table = serde_json::Map::new();
    let expected = [("K33", 15usize), ("K5", 103), ("R10", 35)];
    for (name, dim) in expected {
        let m = matroid::catalog(name)?;
        let alb = albanese::build_with_limit(&m, AlbParams::new(2, 1, 0), max_edges())?;
        let host = albanese::reduce_2_1(&alb)?.graph;
        let sys = solver::assemble(&m, &host, 2)?;
        let rep = solver::exists_indivisible(&sys)?;
        let ok = rep.solution_dim == dim && !rep.exists && rep.all_profiles_zero;
        all_ok &= ok;
        let mut entry = serde_json::json!({
            "dim": rep.solution_dim,
            "expected_dim": dim,
            "divisible": !rep.exists,
            "ok": ok,
        });
        if name == "R10" {
            entry["profile_all_zero"] = serde_json::json!(rep.all_profiles_zero);
        }
        table.insert(name.to_string(), entry);
    }
    let mut ell3 = serde_json::Map::new();
    for name in ["K5", "K33", "R10"] {
        let m = matroid::catalog(name)?;
        let rep = solver::membership(&m, 3, max_edges())?;
        all_ok &= rep.member;
        ell3.insert(name.to_string(), serde_json::json!(rep.member));
    }
    table.insert("ell3".into(), serde_json::Value::Object(ell3));
    table.insert("all_ok".into(), serde_json::json!(all_ok));
    Ok(Outcome {
        exit: if all_ok { 0 } else { 1 },
        result: serde_json::Value::Object(table),
        inputs: serde_json::json!({}),
    })
}

fn print_text(v: &serde_json::Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        serde_json::Value::Object(map) => {
            for (k, val) in map {
                match val {
                    serde_json::Value::Object(_) | serde_json::Value::Array(_) => {
                        println!("{pad}{k}:");
                        print_text(val, indent + 1);
                    }
                    _ => println!("{pad}{k}: {val}"),
                }
            }
        }
        serde_json::Value::Array(items) => {
            for item in items {
                print_text(item, indent);
            }
        }
        _ => println!("{pad}{v}"),
    }
}
