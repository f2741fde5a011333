//! `nilcone`: batch front end for the census, classification and the
//! acceptance suite.

mod commands;
mod input;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use nilcone::census::{CensusConfig, DEFAULT_BUDGET, DEFAULT_SEED};
use nilcone::classical::Kind;
use nilcone::gf::DEFAULT_EXTENSION_CAP;

const FORM_HELP: &str = "Comma-separated upper-triangular coefficients q_11,q_12,...,q_1n,q_22,...,q_nn \
of Q(x) = sum_{i<=j} q_ij x_i x_j, in row-major order. Over a prime field entries are integers reduced mod p; \
over F_{p^k} they are element encodings 0..q-1 (base-p digits are polynomial coefficients, constant term first).";

#[derive(Parser, Debug)]
#[command(name = "nilcone", version, about = "Exact nilpotent-cone counts and piece classification over small finite fields")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct GlobalOpts {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Maximum number of worker threads.
    #[arg(long, global = true)]
    shards: Option<usize>,
    /// Record wall-clock time in reports (makes output non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
    /// Largest number of enumerated points allowed.
    #[arg(long, env = "NILCONE_BUDGET", default_value_t = DEFAULT_BUDGET, global = true)]
    budget: u64,
    /// Seed for sampled checks.
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    seed: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountTarget {
    Adjoint,
    Coadjoint,
    #[value(name = "per_piece", alias = "per-piece")]
    PerPiece,
    Fiber,
    Transport,
}

impl CountTarget {
    pub fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count nilpotent elements of g or g*, alternating fibres, or check the transport isomorphism.
    Count {
        #[arg(long, value_parser = parse_kind)]
        kind: Kind,
        /// Rank; for kind A this is n in gl_n.
        #[arg(long)]
        rank: usize,
        /// Field orders, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u32>,
        #[arg(long, value_enum, default_value_t = CountTarget::Coadjoint)]
        target: CountTarget,
    },
    /// Count nilpotent quadratic forms on F_q^{2r} by piece.
    Pieces {
        #[arg(long)]
        rank: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u32>,
    },
    /// Print the piece label and a good basis of nilpotent quadratic forms.
    Classify {
        #[arg(long, value_parser = parse_kind, default_value = "C")]
        kind: Kind,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        q: u32,
        #[arg(long, help = FORM_HELP, conflicts_with = "file", required_unless_present = "file")]
        form: Option<String>,
        /// Plain-text file with one form per line in the --form format; `#` starts a comment line.
        #[arg(long)]
        file: Option<PathBuf>,
        /// Largest field extension degree tried for a good basis.
        #[arg(long, default_value_t = DEFAULT_EXTENSION_CAP)]
        extension_cap: u32,
    },
    /// Print an element of Sp(V) fixing Q but not the filtration of a grading, for Q in Q(V)_2 \ Q(V)_2^0.
    Witness {
        #[arg(long, value_parser = parse_kind, default_value = "C")]
        kind: Kind,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        q: u32,
        #[arg(long, help = FORM_HELP)]
        form: String,
        /// Comma-separated degrees of the standard basis vectors e_1..e_2r (Gram matrix with (e_i, e_{2r+1-i}) = 1 for i <= r).
        #[arg(long, allow_hyphen_values = true)]
        grading: String,
        /// Fall back to searching all of Sp(V) when no construction applies.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Fit each count as an exact polynomial in q.
    Fit {
        #[arg(long, value_parser = parse_kind, default_value = "C")]
        kind: Kind,
        #[arg(long)]
        rank: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u32>,
        #[arg(long, value_enum, default_value_t = CountTarget::PerPiece)]
        target: CountTarget,
        /// Degree bound; further points must lie on the fit. Without it the
        /// lowest-degree interpolant must have integer coefficients.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Run the acceptance suite and print one PASS/FAIL line per criterion.
    Verify {
        /// Criterion ids to run, comma separated (default: all).
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
    },
}

fn parse_kind(s: &str) -> Result<Kind, String> {
    s.parse()
}

/// Why a command did not succeed, with its exit code.
#[derive(Debug)]
pub enum Failure {
    /// Invalid input: exit 2.
    Usage(String),
    /// An expectation or computation failed: exit 1.
    Failed(String),
    /// The enumeration budget or a size limit was exceeded: exit 3.
    Budget(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Failed(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Budget(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Failed(m) | Failure::Budget(m) => m,
        }
    }
}

/// A rendered report and whether every expectation in it held.
pub struct Report {
    pub text: String,
    pub ok: bool,
}

fn census_config(g: &GlobalOpts) -> CensusConfig {
    let mut cfg = CensusConfig {
        budget: g.budget,
        timing: g.timing,
        seed: g.seed,
        ..CensusConfig::default()
    };
    if let Some(s) = g.shards {
        cfg.shards = s.max(1);
    }
    cfg
}

fn run(cli: Cli) -> Result<Report, Failure> {
    let cfg = census_config(&cli.global);
    let fmt = cli.global.format;
    match cli.command {
        Command::Count { kind, rank, q, target } => commands::count(kind, rank, &q, target, fmt, &cfg),
        Command::Pieces { rank, q } => commands::count(Kind::C, rank, &q, CountTarget::PerPiece, fmt, &cfg),
        Command::Classify {
            kind,
            rank,
            q,
            form,
            file,
            extension_cap,
        } => commands::classify(kind, rank, q, form.as_deref(), file.as_deref(), extension_cap, fmt),
        Command::Witness {
            kind,
            rank,
            q,
            form,
            grading,
            exhaustive,
        } => commands::witness(kind, rank, q, &form, &grading, exhaustive, fmt),
        Command::Fit {
            kind,
            rank,
            q,
            target,
            degree,
        } => commands::fit(kind, rank, &q, target, degree, fmt, &cfg),
        Command::Verify { only } => commands::verify(&only, fmt, &cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = cli.global.output.clone();
    match run(cli) {
        Ok(report) => {
            let written = match &output {
                Some(path) => fs::write(path, &report.text).map_err(|e| format!("{}: {e}", path.display())),
                None => {
                    print!("{}", report.text);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
