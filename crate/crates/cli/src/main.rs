use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperrho::Hypergraph;

mod commands;
mod render;

use render::Report;

/// Spectral radii of uniform hypergraphs and the f_r edge-count bound.
///
/// Exit codes: 0 success, 1 bad input, 2 solver did not converge,
/// 3 bound violated, 4 certificate check failed.
#[derive(Debug, Parser)]
#[command(name = "hyperrho", version)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Solver tolerance on the Collatz–Wielandt bracket width.
    #[arg(long, global = true, env = "HYPERRHO_TOL", value_parser = positive)]
    tol: Option<f64>,

    /// Iteration cap for the power method.
    #[arg(long, global = true, default_value_t = 100_000)]
    max_iter: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Text,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Input {
    /// Edge-list file (`-` for standard input). First line `r n`, then one
    /// edge per line; `#` starts a comment.
    path: Option<PathBuf>,

    /// Edge list given on the command line; `;` separates lines.
    #[arg(long)]
    inline: Option<String>,
}

impl Input {
    fn load(&self) -> Result<Hypergraph, commands::CliError> {
        let text = match (&self.path, &self.inline) {
            (_, Some(inline)) => inline.replace(';', "\n"),
            (Some(p), None) if p.as_os_str() == "-" => {
                let mut buf = String::new();
                std::io::stdin()
                    .read_to_string(&mut buf)
                    .map_err(|e| commands::CliError::Input(format!("stdin: {e}")))?;
                buf
            }
            (Some(p), None) => std::fs::read_to_string(p)
                .map_err(|e| commands::CliError::Input(format!("{}: {e}", p.display())))?,
            (None, None) => unreachable!("clap requires one input"),
        };
        let (h, dups) = Hypergraph::parse_edge_list(&text)?;
        if dups > 0 {
            eprintln!("warning: dropped {dups} duplicate edge(s)");
        }
        Ok(h)
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Spectral radius and Perron vector.
    Rho {
        #[command(flatten)]
        input: Input,
    },
    /// Compare the spectral radius with f_r(e).
    Bound {
        #[command(flatten)]
        input: Input,
    },
    /// Build and check an alpha-normal labeling from the Perron vector.
    Certify {
        #[command(flatten)]
        input: Input,
        /// Also glue link and vertex-deleted labelings at the Perron argmax
        /// (rank >= 3) and certify rho <= f_r(e).
        #[arg(long)]
        combine: bool,
        /// Vertex to combine at instead of the Perron argmax.
        #[arg(long, requires = "combine")]
        vertex: Option<usize>,
        /// Write the labeling (combined one with --combine) as TSV.
        #[arg(long)]
        labeling_out: Option<PathBuf>,
        /// Tolerance for labeling checks; default max(1e-9, 10 * residual).
        #[arg(long, value_parser = positive)]
        check_tol: Option<f64>,
    },
    /// Solve every isomorphism class in a space and audit the bound.
    Search {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        edges: usize,
        #[arg(long)]
        max_vertices: usize,
        /// Keep only hypergraphs with a single non-trivial component;
        /// `--connected false` enumerates everything.
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
        connected: bool,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// Print one CSV row per class instead of the summary.
        #[arg(long)]
        csv: bool,
        /// Largest number of raw edge subsets to enumerate.
        #[arg(long, default_value_t = hyperrho::search::DEFAULT_CAP)]
        cap: u128,
    },
    /// Tabulate e, p_r^{-1}(e), f_r(e) and f_r'(e).
    Fr {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long, default_value_t = 1.0, value_parser = positive)]
        step: f64,
    },
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        Ok(v) => Err(format!("must be positive and finite, got {v}")),
        Err(e) => Err(e.to_string()),
    }
}

fn run(cli: Cli) -> Result<Report, commands::CliError> {
    let mut opts = hyperrho::SolverOptions {
        max_iter: cli.max_iter,
        ..Default::default()
    };
    if let Some(tol) = cli.tol {
        opts.tol = tol;
    }
    match cli.command {
        Command::Rho { input } => commands::rho(&input.load()?, &opts),
        Command::Bound { input } => commands::bound(&input.load()?, &opts),
        Command::Certify {
            input,
            combine,
            vertex,
            labeling_out,
            check_tol,
        } => commands::certify(
            &input.load()?,
            &opts,
            &commands::CertifyArgs {
                combine,
                vertex,
                labeling_out,
                check_tol,
            },
        ),
        Command::Search {
            rank,
            edges,
            max_vertices,
            connected,
            jobs,
            csv,
            cap,
        } => {
            if let Some(j) = jobs {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(j.max(1))
                    .build_global()
                    .map_err(|e| commands::CliError::Input(e.to_string()))?;
            }
            let space = hyperrho::SearchSpace {
                rank,
                edges,
                max_vertices,
                connected,
                cap,
            };
            commands::search(&space, &opts, csv)
        }
        Command::Fr {
            rank,
            from,
            to,
            step,
        } => commands::fr(rank, from, to, step),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let format = cli.format;
    match run(cli) {
        Ok(report) => {
            let mut out = std::io::stdout().lock();
            // a closed pipe (`| head`) is not an error worth reporting
            let _ = writeln!(out, "{}", report.render(format));
            if let Some(note) = &report.diagnostic {
                eprintln!("{note}");
            }
            ExitCode::from(report.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
