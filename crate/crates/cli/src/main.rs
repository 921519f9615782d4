//! `rgood`: exact invariants, Ramsey numbers, Burr witnesses and the
//! goodness pipeline from the command line. Every command prints one JSON
//! report on stdout.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use report::Failure;

#[derive(Parser, Debug)]
#[command(name = "rgood", version, about = "Ramsey goodness toolkit")]
struct Cli {
    /// Worker threads for the parallel searches (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Node budget for each exact search.
    #[arg(long, global = true, default_value_t = ramsey_goodness::budget::DEFAULT_NODE_LIMIT)]
    budget: u64,

    /// Pretty-print the JSON report.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    cmd: Command,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Mode {
    Auto,
    Dfs,
    Canonical,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Order, size, degrees, χ, σ, α, bandwidth, longest cycle and path.
    Invariants {
        /// graph6 string, or a family spec such as `3*K:4` (anything with `:`).
        graph: String,
    },
    /// Exact R(F,G), searching upward to `--cap`.
    Ramsey {
        f: String,
        g: String,
        #[arg(long, default_value_t = 12)]
        cap: usize,
        #[arg(long, value_enum, default_value_t = Mode::Auto)]
        mode: Mode,
    },
    /// Compares R(F,G) with (χ(G)−1)(|F|−1)+σ(G).
    Goodness {
        f: String,
        g: String,
        #[arg(long, default_value_t = 12)]
        cap: usize,
        #[arg(long, value_enum, default_value_t = Mode::Auto)]
        mode: Mode,
    },
    /// The blocked-clique coloring on one vertex below the bound.
    Witness {
        f: String,
        g: String,
        /// Also write the coloring file here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Long cycle or edge bound for H and cycle length c.
    EgCheck { h: String, c: usize },
    /// Runs the embedding pipeline on a coloring file (`-` for stdin).
    Pipeline {
        coloring: String,
        g: String,
        #[arg(long)]
        eps: String,
        /// β (relaxed mode; default 0).
        #[arg(long)]
        beta: Option<String>,
        /// Maximum degree bound Δ (default: Δ(G), at least 2).
        #[arg(long)]
        delta: Option<usize>,
        /// Validate ε ≤ 1/Δ⁵ and use β = ⌈ε⁻⁷⌉, N by formula.
        #[arg(long)]
        strict: bool,
        /// Host order override (relaxed mode; default: the coloring's order).
        #[arg(long = "N", id = "host_order")]
        host_order: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Placement budget of the embedding search.
        #[arg(long, default_value_t = ramsey_goodness::pipeline::DEFAULT_EMBED_LIMIT)]
        embed_limit: u64,
        /// Use the heuristic cycle finder when the exact one runs out.
        #[arg(long)]
        fallback: bool,
        /// Write the stage trace (JSON) here.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Write the embedding as a `vertex host` table here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("rgood: {e}");
            return ExitCode::from(4);
        }
    }
    let argv: Vec<String> = std::env::args().skip(1).collect();
    match commands::run(&cli, argv) {
        Ok(rep) => {
            let text = if cli.pretty {
                serde_json::to_string_pretty(&rep.json)
            } else {
                serde_json::to_string(&rep.json)
            };
            println!("{}", text.expect("reports serialize"));
            ExitCode::from(rep.code)
        }
        Err(Failure { code, msg }) => {
            eprintln!("rgood: {msg}");
            ExitCode::from(code)
        }
    }
}
