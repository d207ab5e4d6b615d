//! `qmg`: JSON front end for the quasimedian library.
//!
//! Exit codes: 0 on success (negative verdicts included), 1 on domain
//! errors, failed corpus checks and disagreeing relhyp modes, 2 on malformed input or usage.

mod commands;
mod corpus;
mod dot;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "qmg", version, about = "Quasi-median graph toolkit")]
struct Cli {
    /// Indented JSON; a plain-text table for corpus-run.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Quasi-median recognition with a witness on failure.
    Check { graph: PathBuf },
    /// Median recognition with a witness on failure.
    Median { graph: PathBuf },
    /// Hyperplane classes, sectors and crossing graph.
    Hyperplanes {
        graph: PathBuf,
        /// Host graph in DOT with edges labelled by hyperplane.
        #[arg(long)]
        dot: bool,
    },
    /// Graph generators.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Graph products of groups.
    #[command(subcommand)]
    Gp(GpCommand),
    /// Relative hyperbolicity of a graph product.
    Relhyp {
        gamma: PathBuf,
        /// Also run with maximal join supports and compare.
        #[arg(long)]
        maximal_joins: bool,
        #[arg(long, default_value_t = quasimedian::relhyp::DEFAULT_VERTEX_CAP)]
        vertex_cap: usize,
    },
    /// Cube complex of the hyperplane wallspace.
    Cubulate {
        graph: PathBuf,
        #[arg(long)]
        dot: bool,
        #[arg(long, default_value_t = quasimedian::cubulation::DEFAULT_ORIENTATION_CAP)]
        cap: usize,
    },
    /// Graph of wreaths over a median host.
    Wreath(WreathArgs),
    /// Run a manifest of generated instances and checks.
    CorpusRun { manifest: PathBuf },
}

#[derive(Subcommand)]
enum GenCommand {
    /// Product of complete graphs, sizes like `3,2,2`.
    Prism {
        #[arg(value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
    },
    /// Seeded random gated amalgam of prisms.
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value_t = 3)]
        max_prism: usize,
    },
}

#[derive(Subcommand)]
enum GpCommand {
    /// Canonical form of a word such as `u1 v2 u1`.
    Reduce { presentation: PathBuf, word: String },
    /// Full Cayley graph, or a ball with `--radius`.
    Cayley {
        presentation: PathBuf,
        #[arg(long)]
        radius: Option<usize>,
        #[arg(long, default_value_t = quasimedian::graph_product::DEFAULT_BALL_CAP)]
        cap: usize,
    },
}

#[derive(Args)]
pub struct WreathArgs {
    /// Config file `{"host", "omega", "group"}`; replaces the flags below.
    config: Option<PathBuf>,
    #[arg(long, conflicts_with = "config", required_unless_present = "config")]
    host: Option<PathBuf>,
    /// `all` or a comma-separated vertex list.
    #[arg(long, default_value = "all")]
    omega: String,
    /// `cyclic:N`.
    #[arg(long, default_value = "cyclic:2")]
    group: String,
    #[arg(long, default_value_t = quasimedian::wreath::DEFAULT_CONVEX_CAP)]
    convex_cap: usize,
    #[arg(long, default_value_t = quasimedian::wreath::DEFAULT_WREATH_CAP)]
    cap: usize,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Malformed(String),
    #[error(transparent)]
    Domain(#[from] quasimedian::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Malformed(_) => 2,
            CliError::Domain(_) => 1,
        }
    }
}

/// What a command prints, and whether it counts as a failure.
pub enum Output {
    Json(serde_json::Value),
    Text(String),
    /// Printed, then exit 1.
    Failing(Box<Output>),
}

fn run(cli: Cli) -> Result<Output, CliError> {
    use commands::*;
    match cli.command {
        Command::Check { graph } => check(&graph, false),
        Command::Median { graph } => check(&graph, true),
        Command::Hyperplanes { graph, dot } => hyperplanes(&graph, dot),
        Command::Gen(GenCommand::Prism { sizes }) => gen_prism(&sizes),
        Command::Gen(GenCommand::Random { seed, steps, max_prism }) => gen_random(seed, steps, max_prism),
        Command::Gp(GpCommand::Reduce { presentation, word }) => gp_reduce(&presentation, &word),
        Command::Gp(GpCommand::Cayley { presentation, radius, cap }) => gp_cayley(&presentation, radius, cap),
        Command::Relhyp { gamma, maximal_joins, vertex_cap } => relhyp(&gamma, maximal_joins, vertex_cap),
        Command::Cubulate { graph, dot, cap } => cubulate(&graph, dot, cap),
        Command::Wreath(args) => wreath(&args),
        Command::CorpusRun { manifest } => corpus::run(&manifest, cli.pretty),
    }
}

fn emit(out: &Output, pretty: bool) {
    match out {
        Output::Json(v) => {
            let s = if pretty { serde_json::to_string_pretty(v) } else { serde_json::to_string(v) };
            println!("{}", s.expect("JSON values serialize"));
        }
        Output::Text(t) => print!("{t}"),
        Output::Failing(inner) => emit(inner, pretty),
    }
}

fn variant_name(e: &quasimedian::Error) -> String {
    format!("{e:?}").chars().take_while(|c| c.is_alphanumeric()).collect()
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let pretty = cli.pretty;
    match run(cli) {
        Ok(out) => {
            emit(&out, pretty);
            if matches!(out, Output::Failing(_)) {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            let kind = match &e {
                CliError::Malformed(_) => "MalformedInput".to_string(),
                CliError::Domain(d) => variant_name(d),
            };
            eprintln!("{}", serde_json::json!({ "error": kind, "message": e.to_string() }));
            ExitCode::from(e.code())
        }
    }
}
