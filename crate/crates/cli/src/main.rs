//! Command-line front end for building graph codes, checking their
//! homological realization, and reporting code parameters.
//!
//! Subcommands:
//!
//! - `gen-graph <kind> <params..>` — emit a graph in the canonical text
//!   format (stdout, or `--output`).
//! - `spectrum <graph>` — top two adjacency eigenvalues, girth, and
//!   cycle-space dimension.
//! - `report <graph>` — full parameter report for the graph code given by an
//!   assignment file or a synthesized `--local-code`.
//! - `verify <graph>` — check that the graph code equals the first homology
//!   of its local system; the exit code is the verdict.
//!
//! Every run is reproducible: all randomness derives from `--seed`
//! (default 0). Exit codes: 0 success/verdict-true, 1 verdict-false, 2 parse
//! error (including unreadable input files and usage errors), 3 validation
//! error.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use graphcode::realization::{build_graph_code, report, verify_proposition, RealizationError};
use graphcode::{Graph, LocalCodeAssignment, Report};

#[derive(Parser)]
#[command(name = "graphcode", version, about = "Graph codes as twisted first homology over GF(2)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph in the canonical text format.
    GenGraph {
        /// Graph family to generate.
        #[arg(value_enum)]
        kind: GraphKind,
        /// Family parameters (see each family's arity below).
        params: Vec<usize>,
        /// Seed for the random families.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write to this file instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print the top two adjacency eigenvalues, girth, and cycle-space
    /// dimension of a graph.
    Spectrum {
        /// Graph file in the canonical text format.
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Build the graph code for a graph plus local codes and print its full
    /// parameter report.
    Report {
        /// Graph file in the canonical text format.
        graph: PathBuf,
        #[command(flatten)]
        codes: CodeSource,
        /// Seed for synthesized random local codes.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Skip the brute-force distance when the code dimension exceeds
        /// this cap.
        #[arg(long, default_value_t = 26)]
        max_bruteforce_dim: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Check that the graph code equals the first homology of its local
    /// system; exits 0 on equality, 1 on a mismatch.
    Verify {
        /// Graph file in the canonical text format.
        graph: PathBuf,
        #[command(flatten)]
        codes: CodeSource,
        /// Seed for synthesized random local codes.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphKind {
    /// Complete graph K_n; params: n.
    Complete,
    /// Cycle C_n; params: n >= 3.
    Cycle,
    /// Path on n vertices; params: n >= 1.
    Path,
    /// Hypercube of dimension k; params: k <= 16.
    Hypercube,
    /// The Petersen graph; no params.
    Petersen,
    /// Random d-regular graph; params: n d (n*d even).
    RandomRegular,
    /// Uniform random graph with m edges; params: n m.
    Gnm,
}

/// Where the local codes come from: an assignment file, or a synthesized
/// uniform family.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct CodeSource {
    /// Local-code assignment file (`v <u> <rows> <cols>` blocks).
    assignment: Option<PathBuf>,
    /// Synthesize the assignment: `parity`, `hamming74`, or `random:<dim>`.
    #[arg(long, value_parser = parse_local_code)]
    local_code: Option<LocalCodeSpec>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum LocalCodeSpec {
    Parity,
    Hamming74,
    Random { dim: usize },
}

fn parse_local_code(s: &str) -> Result<LocalCodeSpec, String> {
    match s {
        "parity" => Ok(LocalCodeSpec::Parity),
        "hamming74" => Ok(LocalCodeSpec::Hamming74),
        _ => match s.strip_prefix("random:") {
            Some(dim) => dim
                .parse()
                .map(|dim| LocalCodeSpec::Random { dim })
                .map_err(|_| format!("bad dimension in {s:?}")),
            None => Err(format!(
                "expected `parity`, `hamming74`, or `random:<dim>`, got {s:?}"
            )),
        },
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// A failure with its exit code: 2 for input that cannot be read or parsed,
/// 3 for well-formed input that fails validation.
enum CliError {
    Parse(String),
    Validation(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Validation(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::Validation(m) => m,
        }
    }
}

impl From<graphcode::ParseError> for CliError {
    fn from(e: graphcode::ParseError) -> CliError {
        CliError::Parse(e.to_string())
    }
}

impl From<graphcode::graphs::GraphError> for CliError {
    fn from(e: graphcode::graphs::GraphError) -> CliError {
        CliError::Validation(e.to_string())
    }
}

impl From<RealizationError> for CliError {
    fn from(e: RealizationError) -> CliError {
        CliError::Validation(e.to_string())
    }
}

fn read_file(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))
}

fn load_graph(path: &PathBuf) -> Result<Graph, CliError> {
    let text = read_file(path)?;
    Graph::from_text(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn load_assignment(
    graph: &Graph,
    codes: &CodeSource,
    seed: u64,
) -> Result<LocalCodeAssignment, CliError> {
    if let Some(path) = &codes.assignment {
        let text = read_file(path)?;
        return LocalCodeAssignment::from_text(&text)
            .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())));
    }
    match codes.local_code.expect("clap enforces one source") {
        LocalCodeSpec::Parity => Ok(LocalCodeAssignment::uniform_parity(graph)),
        LocalCodeSpec::Hamming74 => Ok(LocalCodeAssignment::uniform_hamming74(graph)?),
        LocalCodeSpec::Random { dim } => {
            Ok(LocalCodeAssignment::uniform_random(graph, dim, seed)?)
        }
    }
}

fn expect_params(kind: &str, params: &[usize], count: usize) -> Result<(), CliError> {
    if params.len() != count {
        return Err(CliError::Validation(format!(
            "{kind} takes {count} parameter(s), got {}",
            params.len()
        )));
    }
    Ok(())
}

fn gen_graph(kind: GraphKind, params: &[usize], seed: u64) -> Result<Graph, CliError> {
    Ok(match kind {
        GraphKind::Complete => {
            expect_params("complete", params, 1)?;
            Graph::complete(params[0])
        }
        GraphKind::Cycle => {
            expect_params("cycle", params, 1)?;
            Graph::cycle(params[0])?
        }
        GraphKind::Path => {
            expect_params("path", params, 1)?;
            Graph::path(params[0])?
        }
        GraphKind::Hypercube => {
            expect_params("hypercube", params, 1)?;
            Graph::hypercube(params[0])?
        }
        GraphKind::Petersen => {
            expect_params("petersen", params, 0)?;
            Graph::petersen()
        }
        GraphKind::RandomRegular => {
            expect_params("random-regular", params, 2)?;
            Graph::random_regular(params[0], params[1], seed)?
        }
        GraphKind::Gnm => {
            expect_params("gnm", params, 2)?;
            Graph::random_graph(params[0], params[1], seed)?
        }
    })
}

#[derive(serde::Serialize)]
struct SpectrumReport {
    lambda1: f64,
    lambda2: f64,
    girth: Option<usize>,
    cycle_space_dimension: usize,
}

fn spectrum_report(graph: &Graph) -> Result<SpectrumReport, CliError> {
    let lambda2 = graph.second_eigenvalue()?;
    Ok(SpectrumReport {
        lambda1: graph.spectrum()[0],
        lambda2,
        girth: graph.girth(),
        cycle_space_dimension: graph.cycle_space_dimension(),
    })
}

fn option_line<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map_or("null".to_string(), T::to_string)
}

fn report_text(r: &Report) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "n: {}", r.n);
    let _ = writeln!(s, "dim: {}", r.dim);
    let _ = writeln!(s, "rate: {}", r.rate);
    let _ = writeln!(s, "min_local_rate: {}", r.min_local_rate);
    let _ = writeln!(
        s,
        "min_local_relative_distance: {}",
        option_line(&r.min_local_relative_distance)
    );
    let _ = writeln!(s, "degree: {}", option_line(&r.degree));
    let _ = writeln!(s, "lambda: {}", r.lambda);
    let _ = writeln!(s, "lambda_abs_alt: {}", r.lambda_abs_alt);
    let _ = writeln!(s, "rate_bound: {}", option_line(&r.rate_bound));
    let _ = writeln!(s, "distance_bound: {}", option_line(&r.distance_bound));
    let _ = writeln!(s, "bounds_reason: {}", option_line(&r.bounds_reason));
    let _ = writeln!(s, "distance: {}", option_line(&r.distance));
    let _ = writeln!(s, "relative_distance: {}", option_line(&r.relative_distance));
    let _ = writeln!(s, "proposition_verdict: {}", r.proposition.verdict);
    let _ = writeln!(s, "code_dimension: {}", r.proposition.code_dimension);
    let _ = writeln!(s, "homology_dimension: {}", r.proposition.homology_dimension);
    s
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::GenGraph {
            kind,
            params,
            seed,
            output,
        } => {
            let graph = gen_graph(kind, &params, seed)?;
            let text = graph.to_text();
            match output {
                Some(path) => std::fs::write(&path, text).map_err(|e| {
                    CliError::Validation(format!("cannot write {}: {e}", path.display()))
                })?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Command::Spectrum { graph, format } => {
            let graph = load_graph(&graph)?;
            let r = spectrum_report(&graph)?;
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&r).expect("spectrum serializes")
                ),
                Format::Text => {
                    println!("lambda1: {}", r.lambda1);
                    println!("lambda2: {}", r.lambda2);
                    println!("girth: {}", option_line(&r.girth));
                    println!("cycle_space_dimension: {}", r.cycle_space_dimension);
                }
            }
            Ok(0)
        }
        Command::Report {
            graph,
            codes,
            seed,
            max_bruteforce_dim,
            format,
        } => {
            let graph = load_graph(&graph)?;
            let assignment = load_assignment(&graph, &codes, seed)?;
            let instance = build_graph_code(graph, assignment)?;
            let r = report(&instance, max_bruteforce_dim)?;
            match format {
                Format::Json => println!("{}", r.to_json()),
                Format::Text => print!("{}", report_text(&r)),
            }
            Ok(0)
        }
        Command::Verify {
            graph,
            codes,
            seed,
        } => {
            let graph = load_graph(&graph)?;
            let assignment = load_assignment(&graph, &codes, seed)?;
            let instance = build_graph_code(graph, assignment)?;
            let verdict = verify_proposition(&instance);
            println!("code dimension: {}", verdict.code_dimension);
            println!("homology dimension: {}", verdict.homology_dimension);
            println!("verdict: {}", verdict.verdict);
            Ok(if verdict.verdict { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
