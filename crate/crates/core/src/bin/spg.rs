//! Command-line front end for shortest path graph computation,
//! recognition, synthesis, and exhaustive search.

use std::io::Read as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use spg_core::budget::{WorkBudget, DEFAULT_WORK_BUDGET};
use spg_core::classifier::{classify, forbidden_report, Verdict};
use spg_core::error::{Error, Result};
use spg_core::geodesics::{build_spg, DEFAULT_MAX_PATHS};
use spg_core::graph::Graph;
use spg_core::io::{read_graph, spg_to_dot, spg_to_json};
use spg_core::oracle::{property_suite, SpgCatalog};
use spg_core::synthesis::{
    synthesize, verify_certificate, SynthesisCertificate, SynthesisMode,
};

const FORMAT_HELP: &str = "\
INPUT FORMATS:
  Graph files are accepted in two formats, sniffed automatically:

  edge list   First non-comment line is `n m` (vertex count, edge count),
              then m lines `u v` with 0 <= u < v < n. Blank lines and
              lines starting with `#` are skipped.

  JSON        {\"n\": 4, \"edges\": [[0,1],[1,2]]}. JSON carrying a
              \"geodesics\" key (the output of `compute --out json`) is
              read as the computed graph itself, ignoring its labels.

  A graph file argument of `-` reads standard input.

OUTPUT FORMATS:
  compute     DOT (default) or JSON with one vertex per geodesic (listed
              by interior vertex sequence) and labeled edges.
  classify    JSON verdict: {\"status\": \"SpgByTheorem\" | \"NotSpg\" |
              \"UnknownContainsC4\", ...} with a witness or decomposition.
  forbidden   JSON list of findings, one per forbidden-structure check.
  synthesize  JSON certificate: base graph, endpoints, geodesic
              correspondence, and a replayable construction log.
  verify      First line PASS or FAIL, then a JSON report.
  search      Text report, one line per property check.

EXIT CODES:
  0  success (verdicts, including NotSpg, are data, not failures)
  1  malformed input or unusable file
  2  endpoints are not connected
  3  geodesic cap or work budget exhausted
  4  operation precondition failed (the verdict is printed)
  5  internal inconsistency detected

ENVIRONMENT:
  SPG_MAX_PATHS    Default geodesic cap (overridden by --max-paths).
  SPG_WORK_BUDGET  Work budget for recognition and search.";

#[derive(Parser)]
#[command(
    name = "spg",
    version,
    about = "Shortest path graphs: compute, recognize, synthesize, search",
    after_long_help = FORMAT_HELP
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Dot,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the shortest path graph between two vertices of a base graph
    Compute {
        /// Base graph file (`-` for standard input)
        graph: PathBuf,
        /// First endpoint
        #[arg(long)]
        source: u32,
        /// Second endpoint
        #[arg(long)]
        target: u32,
        /// Abort if the endpoints have more geodesics than this
        #[arg(long, env = "SPG_MAX_PATHS")]
        max_paths: Option<u64>,
        /// Output format
        #[arg(long, value_enum, default_value_t = OutFormat::Dot)]
        out: OutFormat,
    },
    /// Decide whether a graph is a shortest path graph
    Classify {
        /// Graph file (`-` for standard input)
        graph: PathBuf,
    },
    /// List every forbidden induced structure found in a graph
    Forbidden {
        /// Graph file (`-` for standard input)
        graph: PathBuf,
    },
    /// Build a certified base graph whose shortest path graph is the input
    Synthesize {
        /// Goal graph file (`-` for standard input)
        graph: PathBuf,
        /// Write the certificate here instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
        /// Skip per-step self-checks during construction
        #[arg(long)]
        fast: bool,
    },
    /// Synthesize a base graph and check the realization end to end
    Verify {
        /// Goal graph file (`-` for standard input)
        graph: PathBuf,
        /// Check this stored certificate instead of synthesizing afresh
        #[arg(long)]
        certificate: Option<PathBuf>,
        /// Skip per-step self-checks during construction
        #[arg(long)]
        fast: bool,
        /// Geodesic cap for the recomputation
        #[arg(long, env = "SPG_MAX_PATHS")]
        max_paths: Option<u64>,
    },
    /// Extend the enumerated catalog and re-run the property suite
    Search {
        /// Sweep all connected base graphs up to this many vertices
        #[arg(long)]
        max_base_vertices: usize,
        /// Catalog file to create or extend
        #[arg(long)]
        catalog: PathBuf,
        /// Seed for the randomized closure checks
        #[arg(long, default_value_t = 0x5147)]
        seed: u64,
        /// Geodesic cap used by the sweep
        #[arg(long, env = "SPG_MAX_PATHS")]
        max_paths: Option<u64>,
    },
}

/// Write to standard output, exiting quietly if the reader has gone away
/// (for example under `spg ... | head`).
fn emit(text: std::fmt::Arguments) {
    use std::io::Write as _;
    let mut out = std::io::stdout().lock();
    if out.write_fmt(text).is_err() || out.flush().is_err() {
        std::process::exit(0);
    }
}

macro_rules! say {
    ($($arg:tt)*) => { emit(format_args!("{}\n", format_args!($($arg)*))) };
}

macro_rules! say_raw {
    ($($arg:tt)*) => { emit(format_args!($($arg)*)) };
}

fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

fn load_graph(path: &Path) -> Result<Graph> {
    read_graph(&read_input(path)?)
}

fn work_budget() -> Result<WorkBudget> {
    match std::env::var("SPG_WORK_BUDGET") {
        Ok(raw) => {
            let limit: u64 = raw.trim().parse().map_err(|_| {
                Error::Parse(format!("SPG_WORK_BUDGET must be an integer, got {raw:?}"))
            })?;
            Ok(WorkBudget::new(limit))
        }
        Err(_) => Ok(WorkBudget::new(DEFAULT_WORK_BUDGET)),
    }
}

fn mode(fast: bool) -> SynthesisMode {
    if fast {
        SynthesisMode::Fast
    } else {
        SynthesisMode::Strict
    }
}

fn pretty<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report values serialize")
}

/// Classify first so a refusal prints the verdict rather than a bare error.
fn synthesize_with_verdict(
    h: &Graph,
    fast: bool,
    budget: &mut WorkBudget,
) -> Result<SynthesisCertificate> {
    let verdict = classify(h, budget)?;
    if !verdict.is_spg_by_theorem() {
        say!("{}", pretty(&verdict));
        let reason = match verdict {
            Verdict::NotSpg { .. } => "the goal graph is not a shortest path graph",
            _ => "the goal graph contains an induced four-cycle, outside the certified range",
        };
        return Err(Error::precondition("synthesize", reason));
    }
    synthesize(h, mode(fast), budget)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Compute { graph, source, target, max_paths, out } => {
            let g = load_graph(&graph)?;
            let cap = max_paths.unwrap_or(DEFAULT_MAX_PATHS);
            let spg = build_spg(&g, source, target, cap)?;
            match out {
                OutFormat::Dot => say_raw!("{}", spg_to_dot(&spg)),
                OutFormat::Json => say!("{}", spg_to_json(&spg)),
            }
        }
        Command::Classify { graph } => {
            let h = load_graph(&graph)?;
            let verdict = classify(&h, &mut work_budget()?)?;
            say!("{}", pretty(&verdict));
        }
        Command::Forbidden { graph } => {
            let h = load_graph(&graph)?;
            let findings = forbidden_report(&h, &mut work_budget()?)?;
            say!("{}", pretty(&findings));
        }
        Command::Synthesize { graph, out, fast } => {
            let h = load_graph(&graph)?;
            let cert = synthesize_with_verdict(&h, fast, &mut work_budget()?)?;
            let text = pretty(&cert);
            match out {
                Some(path) => std::fs::write(&path, text + "\n")?,
                None => say!("{text}"),
            }
        }
        Command::Verify { graph, certificate, fast, max_paths } => {
            let h = load_graph(&graph)?;
            let cap = max_paths.unwrap_or(DEFAULT_MAX_PATHS);
            let (cert, fresh) = match certificate {
                Some(path) => {
                    let cert: SynthesisCertificate =
                        serde_json::from_str(&read_input(&path)?)
                            .map_err(|e| Error::Parse(format!("bad certificate: {e}")))?;
                    (cert, false)
                }
                None => (synthesize_with_verdict(&h, fast, &mut work_budget()?)?, true),
            };
            let check = verify_certificate(&h, &cert, cap)?;
            say!("{}", if check.passed { "PASS" } else { "FAIL" });
            say!(
                "{}",
                pretty(&serde_json::json!({
                    "passed": check.passed,
                    "failures": check.failures,
                    "base": cert.base,
                    "endpoints": [cert.a, cert.b],
                    "correspondence": cert.correspondence,
                }))
            );
            if !check.passed && fresh {
                return Err(Error::InternalInconsistency(
                    "a freshly synthesized certificate failed verification".into(),
                ));
            }
        }
        Command::Search { max_base_vertices, catalog, seed, max_paths } => {
            if max_base_vertices < 3 {
                return Err(Error::precondition(
                    "search",
                    "the sweep bound must be at least three vertices",
                ));
            }
            let cap = max_paths.unwrap_or(DEFAULT_MAX_PATHS);
            let mut cat = if catalog.exists() {
                SpgCatalog::read_from(&catalog)?
            } else {
                SpgCatalog::empty(cap)
            };
            cat.extend_to(max_base_vertices)?;
            cat.write_to(&catalog)?;
            say!(
                "catalog: {} bound={} entries={}",
                catalog.display(),
                cat.bound(),
                cat.len()
            );
            let findings = property_suite(&cat, seed, &mut work_budget()?)?;
            let mut failed = 0;
            for f in &findings {
                match &f.witness {
                    None => say!("{} {}", f.status, f.check),
                    Some(w) => say!("{} {} {}", f.status, f.check, w),
                }
                if !f.passed() {
                    failed += 1;
                }
            }
            if failed > 0 {
                say!("property suite: {failed} of {} checks fail", findings.len());
                return Err(Error::InternalInconsistency(format!(
                    "{failed} property checks failed against enumerated ground truth"
                )));
            }
            say!("property suite: all {} checks pass", findings.len());
        }
    }
    Ok(())
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Unreachable { .. } => 2,
        Error::CapExceeded { .. } | Error::BudgetExhausted => 3,
        Error::Precondition { .. } => 4,
        Error::InternalInconsistency(_) => 5,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("spg: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
