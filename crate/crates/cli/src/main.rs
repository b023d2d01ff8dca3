//! `genconn`: compute, certify, construct, bound and verify from the shell.
//!
//! Exit status: 0 success, 1 counterexample or invalid certificate,
//! 2 usage error, 3 budget exhausted (lower-bound-only result or skipped
//! instances), 4 input/output error.

use std::io::Read as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use genconn::constructions::{construct_family, FamilySpec, FAMILY_NAMES};
use genconn::format::{parse_graph, serialize_graph, Format};
use genconn::steiner::{
    counting_upper_bound, generalized_connectivity_with, max_tree_packing, tutte_partition_number,
    Budget, Certificate, ConnectivityResult, Mode, Status, UpperCertificate,
};
use genconn::suite::{run_check, CheckConfig, CheckId, CorpusSpec};
use genconn::{Error, Graph};

const DEFAULTS: Budget = Budget {
    max_trees: 200_000,
    max_nodes: 10_000_000,
    partition_limit: 12,
    threads: 1,
};

#[derive(Parser)]
#[command(
    name = "genconn",
    version,
    about = "Generalized k-connectivity and Steiner tree packing"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print λ_k / κ_k (or λ(S) / κ(S) with --terminals) and its status.
    Compute {
        #[command(flatten)]
        query: Query,
        /// Also write the JSON certificate to this file.
        #[arg(long, value_name = "PATH")]
        certificate: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        input: Input,
    },
    /// Print the full JSON certificate for a computation.
    Certify {
        #[command(flatten)]
        query: Query,
        #[arg(short, long, value_name = "PATH")]
        output: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
        #[command(flatten)]
        input: Input,
    },
    /// Build a named graph family member.
    Construct {
        /// One of: complete, complete_bipartite, path, cycle, star, complete_minus,
        /// join_family, figure2_family, h_graph, example3_pair, pendant_complete,
        /// grid, wheel, prism.
        #[arg(long)]
        family: String,
        /// Parameters as key=value, e.g. `t=2` or `n=6 m=0-1+2-3`.
        #[arg(long, num_args = 0.., value_name = "KEY=VALUE")]
        args: Vec<String>,
        #[arg(long, default_value = "graph6", value_parser = parse_format)]
        output_format: Format,
        #[arg(short, long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Print an upper-bound certificate as JSON.
    Bound {
        #[arg(long, value_enum)]
        kind: BoundKind,
        /// Terminal set for the counting bound.
        #[arg(long, value_delimiter = ',', value_name = "LIST")]
        terminals: Vec<usize>,
        /// Largest order whose partitions are enumerated.
        #[arg(long, default_value_t = DEFAULTS.partition_limit)]
        partition_limit: usize,
        #[command(flatten)]
        input: Input,
    },
    /// Run a named check over a corpus and print the report.
    Verify {
        /// Check id, e.g. thm3_lambda_complete or conjecture3_scan.
        #[arg(long)]
        check: String,
        /// atlas:N, atlas-file:PATH[:N], random:N,P,TRIALS,SEED,
        /// families:NAME(k=v,...);..., connected-edges:M or file:PATH.
        #[arg(long)]
        corpus: String,
        /// Largest k for checks that range over k.
        #[arg(long, default_value_t = 5)]
        k_max: usize,
        /// Seeded configurations per (n, k) for thm4_construction.
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Edge limit for the line-graph checks.
        #[arg(long, default_value_t = 9)]
        max_edges: usize,
        #[arg(long, value_enum, default_value_t = ReportFormat::Table)]
        report: ReportFormat,
        #[arg(short, long, value_name = "PATH")]
        output: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Re-check a JSON certificate against a graph.
    VerifyCertificate {
        #[arg(long, value_name = "PATH")]
        certificate: PathBuf,
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Args)]
struct Query {
    #[arg(long, value_enum)]
    param: Param,
    /// Terminal set size; defaults to the size of --terminals.
    #[arg(short)]
    k: Option<usize>,
    /// Compute λ(S) / κ(S) for this set instead of the minimum over k-sets.
    #[arg(long, value_delimiter = ',', value_name = "LIST")]
    terminals: Option<Vec<usize>>,
}

#[derive(Args)]
struct BudgetArgs {
    /// Candidate trees generated at one branching point.
    #[arg(long, default_value_t = DEFAULTS.max_trees)]
    max_trees: usize,
    /// Search nodes plus generated trees per terminal set.
    #[arg(long, default_value_t = DEFAULTS.max_nodes)]
    max_nodes: u64,
    /// Largest order whose partitions are enumerated.
    #[arg(long, default_value_t = DEFAULTS.partition_limit)]
    partition_limit: usize,
    /// Worker threads; output does not depend on it.
    #[arg(long, default_value_t = DEFAULTS.threads)]
    threads: usize,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        Budget {
            max_trees: self.max_trees,
            max_nodes: self.max_nodes,
            partition_limit: self.partition_limit,
            threads: self.threads,
        }
    }
}

#[derive(Args)]
struct Input {
    /// Graph file; `-` reads standard input.
    input: PathBuf,
    /// graph6 or edge-list; by default `.g6` files are graph6 and others
    /// edge lists.
    #[arg(long, value_parser = parse_format)]
    format: Option<Format>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Param {
    Kappa,
    Lambda,
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundKind {
    Counting,
    Tutte,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Json,
    Table,
}

fn parse_format(s: &str) -> Result<Format, Error> {
    s.parse()
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Argument(_) | Error::UnsupportedSize(_) => 2,
        Error::Resource(_) | Error::Overflow { .. } => 3,
        Error::Format { .. } | Error::Io(_) => 4,
        Error::Internal(_) => 1,
    }
}

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::Io(format!("{}: {e}", path.display()))
}

fn read_text(path: &Path) -> Result<String, Error> {
    if path == Path::new("-") {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| io_err(path, e))?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).map_err(|e| io_err(path, e))
    }
}

fn write_text(path: &Path, text: &str) -> Result<(), Error> {
    std::fs::write(path, text).map_err(|e| io_err(path, e))
}

fn read_graph(input: &Input) -> Result<Graph, Error> {
    let text = read_text(&input.input)?;
    let format = match input.format {
        Some(f) => f,
        // standard input: an edge list always has whitespace between numbers
        None if input.input == Path::new("-") => {
            if text.trim().contains(char::is_whitespace) {
                Format::EdgeList
            } else {
                Format::Graph6
            }
        }
        None => Format::from_path(&input.input),
    };
    parse_graph(&text, format)
}

fn solve(g: &Graph, q: &Query, budget: &Budget) -> Result<ConnectivityResult, Error> {
    let mode = match q.param {
        Param::Kappa => Mode::InternallyDisjoint,
        Param::Lambda => Mode::EdgeDisjoint,
    };
    match (&q.terminals, q.k) {
        (Some(s), k) => {
            if k.is_some_and(|k| k != s.len()) {
                return Err(Error::Argument(format!(
                    "-k {} disagrees with {} terminals",
                    k.unwrap(),
                    s.len()
                )));
            }
            max_tree_packing(g, s, mode, budget)
        }
        (None, Some(k)) => generalized_connectivity_with(g, k, mode, budget),
        (None, None) => Err(Error::Argument("give -k or --terminals".into())),
    }
}

fn status_code(status: Status) -> u8 {
    match status {
        Status::Exact => 0,
        Status::LowerBoundOnly => 3,
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Compute {
            query,
            certificate,
            budget,
            input,
        } => {
            let g = read_graph(&input)?;
            let r = solve(&g, &query, &budget.budget())?;
            if let Some(path) = certificate {
                write_text(&path, &(Certificate::from(&r).to_json() + "\n"))?;
            }
            let status = match r.status {
                Status::Exact => "exact",
                Status::LowerBoundOnly => "lower-bound-only",
            };
            println!("{}", r.value);
            println!("status: {status}");
            println!("witness: {:?}", r.witness_terminals);
            Ok(status_code(r.status))
        }
        Command::Certify {
            query,
            output,
            budget,
            input,
        } => {
            let g = read_graph(&input)?;
            let r = solve(&g, &query, &budget.budget())?;
            let json = Certificate::from(&r).to_json() + "\n";
            match output {
                Some(path) => write_text(&path, &json)?,
                None => print!("{json}"),
            }
            Ok(status_code(r.status))
        }
        Command::Construct {
            family,
            args,
            output_format,
            output,
        } => {
            if !FAMILY_NAMES.contains(&family.as_str()) {
                return Err(Error::Argument(format!(
                    "unknown family `{family}`; expected one of {}",
                    FAMILY_NAMES.join(", ")
                )));
            }
            let spec = FamilySpec::parse(&family, &args)?;
            let g = construct_family(&spec)?.graph;
            let mut text = serialize_graph(&g, output_format)?;
            if !text.ends_with('\n') {
                text.push('\n');
            }
            match output {
                Some(path) => write_text(&path, &text)?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Command::Bound {
            kind,
            terminals,
            partition_limit,
            input,
        } => {
            let g = read_graph(&input)?;
            let cert = match kind {
                BoundKind::Counting => {
                    if terminals.is_empty() {
                        return Err(Error::Argument(
                            "the counting bound needs --terminals".into(),
                        ));
                    }
                    UpperCertificate::Counting(counting_upper_bound(&g, &terminals)?)
                }
                BoundKind::Tutte => {
                    UpperCertificate::Partition(tutte_partition_number(&g, partition_limit)?.1)
                }
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&cert).expect("certificate serializes")
            );
            Ok(0)
        }
        Command::Verify {
            check,
            corpus,
            k_max,
            trials,
            seed,
            max_edges,
            report,
            output,
            budget,
        } => {
            let check: CheckId = check.parse()?;
            let corpus: CorpusSpec = corpus.parse()?;
            let cfg = CheckConfig {
                budget: budget.budget(),
                k_max,
                trials,
                seed,
                max_edges,
            };
            let rep = run_check(check, &corpus, &cfg)?;
            let text = match report {
                ReportFormat::Json => rep.to_json() + "\n",
                ReportFormat::Table => rep.to_table(),
            };
            match output {
                Some(path) => write_text(&path, &text)?,
                None => print!("{text}"),
            }
            Ok(rep.verdict.exit_code() as u8)
        }
        Command::VerifyCertificate { certificate, input } => {
            let g = read_graph(&input)?;
            let cert = Certificate::from_json(&read_text(&certificate)?)?;
            let check = cert.check(&g);
            if check.valid {
                println!("valid: {} trees, value {}", cert.trees.len(), cert.value);
                Ok(0)
            } else {
                println!("invalid");
                for p in &check.problems {
                    println!("  {p}");
                }
                Ok(1)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
