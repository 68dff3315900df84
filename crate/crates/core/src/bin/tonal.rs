use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};

use tonal::embed::{coverage, CoverageLevel};
use tonal::extremal::{extremal_exact, SearchOptions};
use tonal::format;
use tonal::patterns::burnside_class_count;
use tonal::report::{self, OutputFormat, Report};
use tonal::verify::{verify_theorems, VerifyConfig, CLAIM_IDS, DEFAULT_SEED};
use tonal::*;

const EXIT_IO: u8 = 1;
const EXIT_DOMAIN: u8 = 2;
const EXIT_INCOMPLETE: u8 = 3;
const EXIT_CLAIM_FAILED: u8 = 4;

#[derive(Parser)]
#[command(
    name = "tonal",
    version,
    about = "Colour-pattern embeddings in 2-coloured complete graphs"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, default_value = "json", value_parser = ["json", "csv", "text"])]
    format: String,
    /// Worker threads (default: TONAL_WORKERS, then available parallelism).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Balanced red-clique colourings.
    #[command(subcommand)]
    Canonical(CanonicalCmd),
    /// Colour classes of a pattern graph.
    #[command(subcommand)]
    Patterns(PatternsCmd),
    /// Colour-exact embeddings into a host.
    #[command(subcommand)]
    Embed(EmbedCmd),
    /// Exact thresholds and closed forms.
    #[command(subcommand)]
    Extremal(ExtremalCmd),
    /// Run the replication suite.
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum CanonicalCmd {
    /// Every balanced order n <= limit.
    Sizes {
        #[arg(long)]
        limit: u64,
    },
    /// The balanced red-clique colouring of K_n.
    Host {
        #[arg(long)]
        n: u64,
    },
    /// Scan a host for a red-blue-red P4 and a (2,1) triangle.
    Check {
        #[arg(long)]
        host: PathBuf,
    },
}

#[derive(Subcommand)]
enum PatternsCmd {
    Classes {
        #[arg(long)]
        graph: PathBuf,
    },
    Witness {
        #[arg(long)]
        graph: PathBuf,
    },
    Equivalent {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
}

#[derive(Subcommand)]
enum EmbedCmd {
    Find {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        pattern: PathBuf,
    },
    Coverage {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value = "tone")]
        level: CoverageLevel,
    },
    /// Greedy embedding of a coloured star forest.
    StarForest {
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        pattern: PathBuf,
    },
}

#[derive(Args)]
struct ExactArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    graph: PathBuf,
    /// Allow hosts with more than 30 edges.
    #[arg(long)]
    force: bool,
    /// Give up after this many seconds (exit 3).
    #[arg(long)]
    budget_secs: Option<f64>,
    /// Enumerate both colours of the last edge.
    #[arg(long, hide = true)]
    no_symmetry: bool,
}

#[derive(Subcommand)]
enum ExtremalCmd {
    Ot(ExactArgs),
    Tot(ExactArgs),
    /// Closed form for stars K_{1,k}.
    Formula {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
    },
    /// Upper bound for a star forest with the given star sizes.
    Bound {
        #[arg(long)]
        n: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        parts: Vec<u64>,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    budget_secs: Option<f64>,
    /// Run only these claims (comma separated ids).
    #[arg(long, value_delimiter = ',')]
    only: Vec<String>,
    /// Negative control: flip one edge of each canonical host.
    #[arg(long, hide = true)]
    corrupt_canonical: bool,
}

enum Failure {
    Io(String),
    Lib(Error),
    Claims(Report),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    let mut text = String::new();
    let res = if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    Ok(text)
}

fn with_path<T>(path: &Path, r: Result<T>) -> Result<T, Failure> {
    r.map_err(|e| match e {
        Error::Parse { offset, message } => Failure::Io(format!("{}: byte {offset}: {message}", path.display())),
        other => Failure::Lib(other),
    })
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    with_path(path, format::parse_graph(&read_input(path)?))
}

fn load_pattern(path: &Path) -> Result<PatternColouring, Failure> {
    with_path(path, format::parse_coloured(&read_input(path)?))
}

fn load_host(path: &Path) -> Result<ColouredHost, Failure> {
    with_path(path, format::parse_host(&read_input(path)?))
}

fn budget(secs: Option<f64>) -> Result<Option<Duration>, Failure> {
    secs.map(|s| {
        Duration::try_from_secs_f64(s).map_err(|_| Failure::Lib(Error::InvalidArgument(format!("invalid budget {s}"))))
    })
    .transpose()
}

fn worker_count(flag: Option<usize>) -> Result<usize, Failure> {
    let n = match flag {
        Some(n) => n,
        None => match std::env::var("TONAL_WORKERS") {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| Failure::Lib(Error::InvalidArgument(format!("TONAL_WORKERS={v:?} is not a count"))))?,
            Err(_) => SearchOptions::default().workers,
        },
    };
    if n == 0 {
        return Err(Failure::Lib(Error::InvalidArgument(
            "worker count must be positive".into(),
        )));
    }
    Ok(n)
}

fn exact(command: &'static str, level: CoverageLevel, a: ExactArgs, workers: usize) -> Result<Report, Failure> {
    let g = load_graph(&a.graph)?;
    let opts = SearchOptions {
        force: a.force,
        prune_symmetry: !a.no_symmetry,
        workers,
        deadline: budget(a.budget_secs)?.map(|b| Instant::now() + b),
    };
    let r = extremal_exact(a.n, &g, level, &opts)?;
    Ok(report::extremal(command, &r))
}

fn run(cli: Cli) -> Result<Report, Failure> {
    let workers = worker_count(cli.workers)?;
    Ok(match cli.command {
        Command::Canonical(CanonicalCmd::Sizes { limit }) => report::canonical_sizes(limit, &canonical_sizes(limit)),
        Command::Canonical(CanonicalCmd::Host { n }) => {
            let size = CanonicalSize::for_order(n)
                .ok_or_else(|| Error::Domain(format!("K_{n} has no balanced red-clique colouring")))?;
            report::canonical_host(size, &canonical_colouring(size)?)
        }
        Command::Canonical(CanonicalCmd::Check { host }) => {
            let h = load_host(&host)?;
            report::obstructions(&h, &verify_obstructions(&h))
        }
        Command::Patterns(PatternsCmd::Classes { graph }) => {
            let g = load_graph(&graph)?;
            let classes = enumerate_pattern_classes(&g)?;
            let auts = automorphisms(&g)?.len();
            report::pattern_classes(&g, &classes, auts, burnside_class_count(&g)?)
        }
        Command::Patterns(PatternsCmd::Witness { graph }) => {
            let g = load_graph(&graph)?;
            let w = witness_pattern(&g)?;
            report::witness(&g, is_star_forest(&g), w.as_ref())
        }
        Command::Patterns(PatternsCmd::Equivalent { a, b }) => {
            report::equivalent(patterns_equivalent(&load_pattern(&a)?, &load_pattern(&b)?)?)
        }
        Command::Embed(EmbedCmd::Find { host, pattern }) => {
            let e = find_embedding(&load_host(&host)?, &load_pattern(&pattern)?)?;
            report::embedding("embed find", e.as_ref())
        }
        Command::Embed(EmbedCmd::Coverage { host, graph, level }) => {
            report::coverage(&coverage(&load_host(&host)?, &load_graph(&graph)?, level)?)
        }
        Command::Embed(EmbedCmd::StarForest { host, pattern }) => {
            let e = greedy_star_forest_embed(&load_host(&host)?, &load_pattern(&pattern)?)?;
            report::embedding("embed star-forest", Some(&e))
        }
        Command::Extremal(ExtremalCmd::Ot(a)) => exact("extremal ot", CoverageLevel::Tone, a, workers)?,
        Command::Extremal(ExtremalCmd::Tot(a)) => exact("extremal tot", CoverageLevel::Class, a, workers)?,
        Command::Extremal(ExtremalCmd::Formula { n, k }) => report::formula(n, k, ot_star_formula(n, k)?),
        Command::Extremal(ExtremalCmd::Bound { n, parts }) => {
            report::bound(n, &parts, tot_star_forest_bound(n, &parts)?)
        }
        Command::Verify(v) => {
            if let Some(bad) = v.only.iter().find(|id| !CLAIM_IDS.contains(&id.as_str())) {
                return Err(
                    Error::InvalidArgument(format!("unknown claim {bad:?}; known: {}", CLAIM_IDS.join(", "))).into(),
                );
            }
            let config = VerifyConfig {
                seed: v.seed,
                budget: budget(v.budget_secs)?,
                workers,
                only: v.only,
                corrupt_canonical: v.corrupt_canonical,
            };
            let rep = verify_theorems(&config);
            let out = report::verify(&rep);
            if !rep.complete || !rep.passed {
                return Err(Failure::Claims(out));
            }
            out
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let fmt: OutputFormat = cli.format.parse().expect("clap restricts values");
    match run(cli) {
        Ok(rep) => {
            print!("{}", rep.render(fmt));
            ExitCode::SUCCESS
        }
        Err(Failure::Claims(rep)) => {
            print!("{}", rep.render(fmt));
            let incomplete = !rep.result["complete"].as_bool().unwrap_or(false);
            let failed: Vec<&str> = rep.result["claims"]
                .as_array()
                .into_iter()
                .flatten()
                .filter(|c| c["status"] == "fail")
                .filter_map(|c| c["id"].as_str())
                .collect();
            if !failed.is_empty() {
                eprintln!("tonal: failed claims: {}", failed.join(", "));
                ExitCode::from(EXIT_CLAIM_FAILED)
            } else if incomplete {
                eprintln!("tonal: incomplete: budget exhausted");
                ExitCode::from(EXIT_INCOMPLETE)
            } else {
                ExitCode::from(EXIT_CLAIM_FAILED)
            }
        }
        Err(Failure::Io(msg)) => {
            eprintln!("tonal: {msg}");
            ExitCode::from(EXIT_IO)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("tonal: {e}");
            ExitCode::from(match e {
                Error::Parse { .. } | Error::Internal(_) => EXIT_IO,
                Error::Incomplete => EXIT_INCOMPLETE,
                Error::InvalidArgument(_) | Error::SizeLimit { .. } | Error::Domain(_) => EXIT_DOMAIN,
            })
        }
    }
}
